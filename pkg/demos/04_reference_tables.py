"""Reproduce the three bundled golden tables with both screening models.

Equivalent to the table1/table2/table3 CLI commands, but driven through the
library API so the intermediate objects are visible.
"""

from atomscreen import (
    Pseudopotential,
    compare,
    helium_binding_table,
    ionization_table,
    lithium_spectrum,
    reference_records,
)

A = Pseudopotential.SYMMETRY_DEPENDENT
B = Pseudopotential.CENTRAL_SCREENING


def reproduce(title, table_id, builder, tol_a):
    rows_a = builder(A)
    rows_b = builder(B)
    golden = reference_records(table_id)
    report_a = compare(rows_a, golden, "present1", tol_a)
    report_b = compare(rows_b, golden, "present2", 0.05)
    print(f"\n{title}")
    print(f"  {'row':<5} {'model A':>10} {'golden':>9} {'model B':>10} {'golden':>9}")
    for (label, value_a), (_, value_b), record in zip(rows_a, rows_b, golden):
        print(f"  {label:<5} {value_a:>10.4f} {record.present1_ev:>9.3f}"
              f" {value_b:>10.4f} {record.present2_ev:>9.3f}")
    gate = "PASS" if report_a.all_passed else "FAIL"
    print(f"  model A: {gate}, max deviation {report_a.max_deviation:.4f} eV"
          f" (tolerance {tol_a})")
    if report_b.failures:
        labels = ", ".join(row.label for row in report_b.failures)
        print(f"  model B rows beyond 0.05 eV: {labels}")
        print("  (these carry the unstated numerics of the printed values; the")
        print("   high-l rows agree to a few meV while core-penetrating s states")
        print("   differ once the repulsive 1/r^2 core is fully resolved)")
    else:
        print("  model B: every row within 0.05 eV")


if __name__ == "__main__":
    reproduce("ionization potentials (eV)", "I", ionization_table, 0.01)
    reproduce("helium binding energies (eV)", "II", helium_binding_table, 0.005)
    reproduce("excited lithium eigenvalues (eV)", "III", lithium_spectrum, 0.002)
