"""Command-line interface for table reproduction, single solves and sweeps.

Exit status contract: 0 = success / all gated comparisons pass,
1 = a numerical comparison or solver failure, 2 = usage or config error.

Configuration precedence is flag > config file > default. The config file
is line-oriented ``key = value`` with ``#`` comments; keys are the long
flag names without dashes (splines, order, rmax, knots, rfirst, quad-nodes,
units, model, format, out, mg-mn).
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from pathlib import Path

from .bsplines import GridSpec
from .eigensolve import EigensolverError
from .model import (
    AtomSpec,
    CODATA_UNITS,
    ModelDomainError,
    PAPER_UNITS,
    Pseudopotential,
    SymmetryChannel,
    UnitSystem,
    atom_catalog,
    catalog_atom,
    effective_charge,
    partition_alpha,
)
from .spectra import (
    compare,
    helium_binding_table,
    ionization_table,
    lithium_spectrum,
    reference_records,
    solve_channel,
)

__all__ = ["main", "entry_point", "RunConfig", "ConfigError"]

#: Model-A gate tolerances per table command (eV).
MODEL_A_TOLERANCES = {"table1": 0.01, "table2": 0.005, "table3": 0.002}
#: Model-B rows beyond this deviation go to the discrepancy report (eV).
MODEL_B_TOLERANCE = 0.05

_MODEL_FLAGS = {
    "symmetry": Pseudopotential.SYMMETRY_DEPENDENT,
    "central": Pseudopotential.CENTRAL_SCREENING,
    "bare": Pseudopotential.BARE_COULOMB,
}
_SPECTROSCOPIC = "spdfgh"


class ConfigError(ValueError):
    """Bad config-file contents or inconsistent option values."""


@dataclass(frozen=True)
class RunConfig:
    """Resolved numerical and output options for one CLI invocation."""

    splines: int = 600
    order: int = 10
    rmax: float = 200.0
    knots: str = "exp-linear"
    rfirst: float = 1e-4
    quad_nodes: int = 20
    units: str = "paper"
    model: str = "symmetry"
    format: str = "text"
    out: str | None = None
    mg_mn: int = 3

    def grid_spec(self) -> GridSpec:
        return GridSpec(
            n_splines=self.splines,
            order_k=self.order,
            r_max=self.rmax,
            knot_kind=self.knots,
            r_first=self.rfirst,
            nodes_per_interval=self.quad_nodes,
        )

    def unit_system(self) -> UnitSystem:
        return PAPER_UNITS if self.units == "paper" else CODATA_UNITS

    def pseudopotential(self) -> Pseudopotential:
        return _MODEL_FLAGS[self.model]


_FIELD_PARSERS = {
    "splines": int,
    "order": int,
    "rmax": float,
    "knots": str,
    "rfirst": float,
    "quad_nodes": int,
    "units": str,
    "model": str,
    "format": str,
    "out": str,
    "mg_mn": int,
}
_FIELD_CHOICES = {
    "knots": ("exp-linear", "linear"),
    "units": ("paper", "codata"),
    "model": tuple(_MODEL_FLAGS),
    "format": ("text", "csv", "json"),
    "mg_mn": (2, 3),
}


def parse_config_file(path: str | Path) -> dict[str, object]:
    """Parse a ``key = value`` config file into validated field values."""
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"cannot read config file {path}: {exc}") from exc
    values: dict[str, object] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{path}:{lineno}: expected 'key = value', got {raw!r}")
        key, _, value = line.partition("=")
        field = key.strip().lower().replace("-", "_")
        value = value.strip()
        if field not in _FIELD_PARSERS:
            raise ConfigError(f"{path}:{lineno}: unknown key {key.strip()!r}")
        try:
            parsed = _FIELD_PARSERS[field](value)
        except ValueError as exc:
            raise ConfigError(f"{path}:{lineno}: bad value for {field}: {exc}") from exc
        choices = _FIELD_CHOICES.get(field)
        if choices is not None and parsed not in choices:
            raise ConfigError(
                f"{path}:{lineno}: {field} must be one of {choices}, got {parsed!r}"
            )
        values[field] = parsed
    if not values:
        raise ConfigError(f"config file {path} contains no settings")
    return values


def resolve_config(args: argparse.Namespace) -> RunConfig:
    """Merge defaults, config-file values and flags (flags win)."""
    merged: dict[str, object] = {}
    if args.config is not None:
        merged.update(parse_config_file(args.config))
    for field in _FIELD_PARSERS:
        flag_value = getattr(args, field, None)
        if flag_value is not None:
            merged[field] = flag_value
    config = RunConfig(**merged)
    if config.splines <= 2 * config.order:
        raise ConfigError("splines must exceed 2 * order")
    if not 0 < config.rfirst < config.rmax:
        raise ConfigError("rfirst must lie in (0, rmax)")
    if config.quad_nodes < 1:
        raise ConfigError("quad-nodes must be >= 1")
    return config


def _add_common_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--splines", type=int, help="total B-spline count (default 600)")
    parser.add_argument("--order", type=int, help="spline order k (default 10)")
    parser.add_argument("--rmax", type=float, help="box radius in bohr (default 200)")
    parser.add_argument("--knots", choices=_FIELD_CHOICES["knots"], help="knot layout")
    parser.add_argument("--rfirst", type=float, help="first nonzero breakpoint (default 1e-4)")
    parser.add_argument("--quad-nodes", dest="quad_nodes", type=int,
                        help="Gauss-Legendre nodes per interval (default 20)")
    parser.add_argument("--units", choices=_FIELD_CHOICES["units"],
                        help="eV conversion: paper-compatible or codata")
    parser.add_argument("--model", choices=tuple(_MODEL_FLAGS),
                        help="pseudopotential for solve/converge")
    parser.add_argument("--format", choices=_FIELD_CHOICES["format"], help="output format")
    parser.add_argument("--out", help="write output to this path instead of stdout")
    parser.add_argument("--config", help="key = value config file")
    parser.add_argument("--mg-mn", dest="mg_mn", type=int, choices=(2, 3),
                        help="m numerator for Mg (default 3; 2 matches the printed table)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="atomscreen",
        description="Screened one-electron atomic structure on a B-spline radial grid",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name, help_text in (
        ("table1", "reproduce the ionization-potential table"),
        ("table2", "reproduce the helium binding-energy table"),
        ("table3", "reproduce the excited-lithium table"),
    ):
        p = sub.add_parser(name, help=help_text)
        _add_common_flags(p)
    p_solve = sub.add_parser("solve", help="solve one (Z, n, l) channel directly")
    p_solve.add_argument("Z", type=int, help="nuclear charge")
    p_solve.add_argument("n_electrons", type=int, help="electron count")
    p_solve.add_argument("l", type=int, help="orbital angular momentum")
    p_solve.add_argument("--kstates", type=int, default=3, help="states to report (default 3)")
    _add_common_flags(p_solve)
    p_conv = sub.add_parser("converge", help="eigenvalue stability under a sweep")
    sweep = p_conv.add_mutually_exclusive_group(required=True)
    sweep.add_argument("--sweep-splines", dest="sweep_splines",
                       help="comma-separated spline counts, e.g. 400,600,800")
    sweep.add_argument("--sweep-nodes", dest="sweep_nodes",
                       help="comma-separated quadrature node counts, e.g. 10,20")
    p_conv.add_argument("--atom", default="Li", help="catalog atom (default Li)")
    p_conv.add_argument("--state", default="2s", help="state label, e.g. 2s (default 2s)")
    _add_common_flags(p_conv)
    return parser


def _emit(text: str, config: RunConfig) -> None:
    if config.out:
        Path(config.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _fmt(value: float, places: int = 6) -> str:
    return f"{value:.{places}f}"


_TABLE_BUILDERS = {
    "table1": ("I", "atom", "ground-state ionization potentials (eV)"),
    "table2": ("II", "state", "helium binding energies (eV)"),
    "table3": ("III", "state", "excited lithium eigenvalues (eV)"),
}


def run_table(command: str, config: RunConfig) -> tuple[int, str]:
    """Compute both model columns of one table and compare against golden."""
    table_id, label_key, title = _TABLE_BUILDERS[command]
    grid = config.grid_spec()
    units = config.unit_system()
    if command == "table1":
        rows_a = ionization_table(Pseudopotential.SYMMETRY_DEPENDENT, units, grid, config.mg_mn)
        rows_b = ionization_table(Pseudopotential.CENTRAL_SCREENING, units, grid, config.mg_mn)
    elif command == "table2":
        rows_a = helium_binding_table(Pseudopotential.SYMMETRY_DEPENDENT, units, grid)
        rows_b = helium_binding_table(Pseudopotential.CENTRAL_SCREENING, units, grid)
    else:
        rows_a = lithium_spectrum(Pseudopotential.SYMMETRY_DEPENDENT, units, grid)
        rows_b = lithium_spectrum(Pseudopotential.CENTRAL_SCREENING, units, grid)

    golden = reference_records(table_id)
    compared = config.units == "paper"
    if compared:
        report_a = compare(rows_a, golden, "present1", MODEL_A_TOLERANCES[command])
        report_b = compare(rows_b, golden, "present2", MODEL_B_TOLERANCE)
    else:
        report_a = report_b = None

    records = []
    for i, record in enumerate(golden):
        row = {
            label_key: record.label,
            "model_a_ev": rows_a[i][1],
            "model_b_ev": rows_b[i][1],
            "golden_a": record.present1_ev,
            "golden_b": record.present2_ev,
            "reference_ev": record.reference_ev,
        }
        if compared:
            row["dev_a"] = report_a.rows[i].deviation
            row["pass_a"] = report_a.rows[i].passed
            row["dev_b"] = report_b.rows[i].deviation
            row["within_b"] = report_b.rows[i].passed
        records.append(row)

    exit_code = 0 if (report_a is None or report_a.all_passed) else 1
    text = _render_table(command, title, label_key, records, config, report_a, report_b)
    return exit_code, text


def _render_table(command, title, label_key, records, config, report_a, report_b) -> str:
    if config.format == "json":
        return json.dumps(records, indent=2) + "\n"
    if config.format == "csv":
        header = [label_key, "model_a_ev", "model_b_ev", "golden_a", "golden_b",
                  "reference_ev", "dev_a", "pass_a", "dev_b", "within_b"]
        lines = [",".join(header)]
        for row in records:
            lines.append(",".join([
                str(row[label_key]),
                _fmt(row["model_a_ev"]),
                _fmt(row["model_b_ev"]),
                _fmt(row["golden_a"], 3),
                _fmt(row["golden_b"], 3),
                _fmt(row["reference_ev"], 3),
                _fmt(row["dev_a"]) if "dev_a" in row else "",
                str(row["pass_a"]).lower() if "pass_a" in row else "",
                _fmt(row["dev_b"]) if "dev_b" in row else "",
                str(row["within_b"]).lower() if "within_b" in row else "",
            ]))
        return "\n".join(lines) + "\n"

    lines = [f"# {command}: {title} [units: {config.unit_system().label}]"]
    head = f"{label_key:<6} {'model_a':>10} {'golden_a':>9} {'model_b':>10} {'golden_b':>9} {'ref':>8}"
    if report_a is not None:
        head += f" {'dev_a':>9} {'ok':>4}"
    lines.append(head)
    for row in records:
        line = (
            f"{row[label_key]:<6} {_fmt(row['model_a_ev'], 4):>10} {_fmt(row['golden_a'], 3):>9}"
            f" {_fmt(row['model_b_ev'], 4):>10} {_fmt(row['golden_b'], 3):>9}"
            f" {_fmt(row['reference_ev'], 3):>8}"
        )
        if report_a is not None:
            line += f" {_fmt(row['dev_a'], 4):>9} {'yes' if row['pass_a'] else 'NO':>4}"
        lines.append(line)
    if report_a is None:
        lines.append("note: golden comparison skipped (golden tables assume paper-compat units)")
    else:
        verdict = "PASS" if report_a.all_passed else "FAIL"
        lines.append(
            f"model A gate: {verdict} (max deviation {report_a.max_deviation:.4f} eV,"
            f" tolerance {report_a.tolerance} eV)"
        )
        if report_b.failures:
            lines.append(
                f"model B discrepancy report ({len(report_b.failures)} of"
                f" {len(report_b.rows)} rows beyond {report_b.tolerance} eV):"
            )
            for row in report_b.failures:
                lines.append(
                    f"  {row.label}: computed {row.computed:.4f}, printed {row.golden:.3f},"
                    f" deviation {row.deviation:.4f}"
                )
            lines.append(
                "  (reported for transparency; the gate applies to model A only, and the"
            )
            lines.append(
                "   bundled model-B values carry the unstated numerics of their source)"
            )
        else:
            lines.append(
                f"model B report: all {len(report_b.rows)} rows within {report_b.tolerance} eV"
            )
    return "\n".join(lines) + "\n"


def _resolve_solve_atom(z: int, n_electrons: int, l: int, mg_m: int) -> tuple[AtomSpec, bool]:
    for atom in atom_catalog(mg_m=mg_m):
        if atom.Z == z and atom.n_electrons == n_electrons:
            return atom, True
    adhoc = AtomSpec(
        name=f"Z{z}e{n_electrons}",
        Z=z,
        n_electrons=n_electrons,
        valence_nu=l + 1,
        valence_l=l,
        m_permutations=n_electrons,
        ground_config=((l + 1, l, n_electrons),),
    )
    return adhoc, False


def run_solve(args: argparse.Namespace, config: RunConfig) -> tuple[int, str]:
    if args.Z < 1 or args.n_electrons < 1 or args.l < 0:
        raise ConfigError("solve requires Z >= 1, n_electrons >= 1, l >= 0")
    if args.kstates < 1:
        raise ConfigError("kstates must be >= 1")
    model = config.pseudopotential()
    units = config.unit_system()
    atom, in_catalog = _resolve_solve_atom(args.Z, args.n_electrons, args.l, config.mg_mn)
    states = solve_channel(atom, model, args.l, args.kstates, config.grid_spec())

    meta = {
        "Z": args.Z,
        "n_electrons": args.n_electrons,
        "l": args.l,
        "model": config.model,
        "m_over_n": f"{atom.m_permutations}/{atom.n_electrons}",
        "catalog_atom": atom.name if in_catalog else None,
    }
    if model is Pseudopotential.SYMMETRY_DEPENDENT and args.n_electrons >= 2:
        meta["alpha"] = partition_alpha(SymmetryChannel(args.l, args.n_electrons))
        meta["z_eff"] = effective_charge(args.Z, args.n_electrons, args.l)
    rows = [
        {
            "nu": s.nu,
            "raw_hartree": s.raw_energy,
            "scaled_hartree": s.scaled_energy,
            "scaled_ev": units.to_ev(s.scaled_energy),
        }
        for s in states
    ]

    if config.format == "json":
        return 0, json.dumps({"meta": meta, "states": rows}, indent=2) + "\n"
    if config.format == "csv":
        lines = ["nu,raw_hartree,scaled_hartree,scaled_ev"]
        for row in rows:
            lines.append(
                f"{row['nu']},{row['raw_hartree']:.12f},"
                f"{row['scaled_hartree']:.12f},{row['scaled_ev']:.6f}"
            )
        return 0, "\n".join(lines) + "\n"

    lines = [
        f"# solve Z={args.Z} n={args.n_electrons} l={args.l}"
        f" model={config.model} units={units.label}"
    ]
    if not in_catalog:
        lines.append("# not a catalog atom: m/n defaulted to 1")
    lines.append(f"# m/n = {meta['m_over_n']}")
    if "z_eff" in meta:
        lines.append(f"# alpha = {meta['alpha']:.9f}, Z_eff = {meta['z_eff']:.9f}")
    lines.append(f"{'nu':<4} {'raw_hartree':>18} {'scaled_hartree':>18} {'scaled_ev':>14}")
    for row in rows:
        lines.append(
            f"{row['nu']:<4} {row['raw_hartree']:>18.12f}"
            f" {row['scaled_hartree']:>18.12f} {row['scaled_ev']:>14.6f}"
        )
    return 0, "\n".join(lines) + "\n"


def _parse_state_label(label: str) -> tuple[int, int]:
    label = label.strip().lower()
    if len(label) < 2 or not label[:-1].isdigit() or label[-1] not in _SPECTROSCOPIC:
        raise ConfigError(f"bad state label {label!r} (expected e.g. 2s, 3d)")
    nu = int(label[:-1])
    l = _SPECTROSCOPIC.index(label[-1])
    if nu < l + 1:
        raise ConfigError(f"state {label!r} violates nu >= l + 1")
    return nu, l


def _parse_sweep(text: str, what: str) -> list[int]:
    try:
        points = [int(v) for v in text.split(",") if v.strip()]
    except ValueError as exc:
        raise ConfigError(f"bad {what} sweep: {exc}") from exc
    if len(points) < 2:
        raise ConfigError(f"{what} sweep needs at least two points")
    return points


def run_converge(args: argparse.Namespace, config: RunConfig) -> tuple[int, str]:
    nu, l = _parse_state_label(args.state)
    atom = catalog_atom(args.atom, mg_m=config.mg_mn)
    model = config.pseudopotential()
    base = config.grid_spec()
    if args.sweep_splines is not None:
        points = _parse_sweep(args.sweep_splines, "splines")
        grids = [(p, GridSpec(n_splines=p, order_k=base.order_k, r_max=base.r_max,
                              knot_kind=base.knot_kind, r_first=base.r_first,
                              nodes_per_interval=base.nodes_per_interval))
                 for p in points]
        sweep_name = "splines"
    else:
        points = _parse_sweep(args.sweep_nodes, "nodes")
        grids = [(p, GridSpec(n_splines=base.n_splines, order_k=base.order_k,
                              r_max=base.r_max, knot_kind=base.knot_kind,
                              r_first=base.r_first, nodes_per_interval=p))
                 for p in points]
        sweep_name = "quad_nodes"

    rows = []
    previous = None
    for point, grid in grids:
        states = solve_channel(atom, model, l, nu - l, grid)
        value = states[nu - l - 1].raw_energy
        delta = None if previous is None else abs(value - previous)
        rows.append({sweep_name: point, "eigenvalue_hartree": value, "delta_hartree": delta})
        previous = value

    if config.format == "json":
        return 0, json.dumps(rows, indent=2) + "\n"
    if config.format == "csv":
        lines = [f"{sweep_name},eigenvalue_hartree,delta_hartree"]
        for row in rows:
            delta = "" if row["delta_hartree"] is None else f"{row['delta_hartree']:.3e}"
            lines.append(f"{row[sweep_name]},{row['eigenvalue_hartree']:.15f},{delta}")
        return 0, "\n".join(lines) + "\n"
    lines = [
        f"# converge atom={atom.name} state={args.state} model={config.model}"
        f" sweep={sweep_name}"
    ]
    lines.append(f"{sweep_name:<12} {'eigenvalue_hartree':>22} {'|delta|':>12}")
    for row in rows:
        delta = "" if row["delta_hartree"] is None else f"{row['delta_hartree']:.3e}"
        lines.append(f"{row[sweep_name]:<12} {row['eigenvalue_hartree']:>22.15f} {delta:>12}")
    return 0, "\n".join(lines) + "\n"


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        config = resolve_config(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    try:
        if args.command in _TABLE_BUILDERS:
            code, text = run_table(args.command, config)
        elif args.command == "solve":
            code, text = run_solve(args, config)
        else:
            code, text = run_converge(args, config)
    except ConfigError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    except (ModelDomainError, EigensolverError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    try:
        _emit(text, config)
    except OSError as exc:
        print(f"usage error: cannot write output: {exc}", file=sys.stderr)
        return 2
    return code


def entry_point() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry_point()
