"""Eigenvalue stability under basis and quadrature refinement.

Tracks the lithium 2s eigenvalue for both screening models while the spline
count grows and while the per-interval quadrature order doubles. The
symmetry model is analytic in disguise, so it sits at the roundoff floor;
the central model converges through its repulsive core.
"""

from atomscreen import GridSpec, Pseudopotential, catalog_atom, solve_channel


def sweep_splines():
    lithium = catalog_atom("Li")
    print("lithium 2s eigenvalue vs spline count (hartree)")
    print(f"  {'splines':>8} {'symmetry':>22} {'central':>22}")
    previous = None
    for n_splines in (400, 600, 800):
        grid = GridSpec(n_splines=n_splines)
        row = []
        for model in (Pseudopotential.SYMMETRY_DEPENDENT,
                      Pseudopotential.CENTRAL_SCREENING):
            row.append(solve_channel(lithium, model, 0, 2, grid)[1].raw_energy)
        print(f"  {n_splines:>8} {row[0]:>22.15f} {row[1]:>22.15f}")
        if previous is not None:
            drift = [abs(a - b) for a, b in zip(row, previous)]
            print(f"  {'drift':>8} {drift[0]:>22.2e} {drift[1]:>22.2e}")
        previous = row


def sweep_quadrature():
    lithium = catalog_atom("Li")
    print("\nlithium 2s eigenvalue vs quadrature nodes per interval (hartree)")
    print(f"  {'nodes':>8} {'central':>22}")
    previous = None
    for nodes in (10, 20, 40):
        grid = GridSpec(nodes_per_interval=nodes)
        value = solve_channel(
            lithium, Pseudopotential.CENTRAL_SCREENING, 0, 2, grid
        )[1].raw_energy
        drift = "" if previous is None else f"   |delta| = {abs(value - previous):.2e}"
        print(f"  {nodes:>8} {value:>22.15f}{drift}")
        previous = value


if __name__ == "__main__":
    sweep_splines()
    sweep_quadrature()
