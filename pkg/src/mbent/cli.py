"""Command-line front end: sweeps over the squeezing parameter, state-file
measurement reports, and plot-script generation.

Exit codes: 0 success, 2 truncation budget infeasible, 3 I/O failure,
4 file parse failure, 5 validation failure.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from datetime import datetime, timezone

from .fock import ModeRegister
from .measures import (
    BOUND_CONSTANTS,
    CapacityError,
    check_mway_entanglement,
    enumerate_splits,
    min_bipartite_entropy,
)
from .reduce import com_split_purity, purity
from .states import (
    SqueezedPairSpec,
    StateFileError,
    com_squeezed_state,
    predicted_support_size,
    read_state_file,
)
from .truncation import BudgetInfeasibleError, TruncationBudget, purity_error_bound, select_nmax

CSV_COLUMNS = [
    "r",
    "n_atoms",
    "nmax",
    "tail",
    "split_class",
    "purity",
    "min_linear_entropy",
    "entropy_bound",
    "trunc_error",
]

#: largest sparse support the no-symmetry path will materialize by default
SUPPORT_CAP = 1_500_000

MAX_ATOMS_DEFAULT = 6


class ResultsParseError(ValueError):
    """A sweep results file failed to parse."""


@dataclass
class SweepConfig:
    """Configuration of one sweep run over (n_atoms, r) points."""

    n_atoms_values: tuple[int, ...]
    r_values: tuple[float, ...]
    target_error: float = 1e-3
    bound_mode: str = "paper"
    output_format: str = "csv"
    output_path: str = "sweep.csv"
    symmetry: bool = True
    threads: int = 1
    nmax_override: int | None = None
    nmax_cap: int = 64
    allow_large: bool = False

    def __post_init__(self) -> None:
        if not self.n_atoms_values or any(n < 1 for n in self.n_atoms_values):
            raise ValueError(f"atom counts must be >= 1, got {self.n_atoms_values}")
        if any(r < 0 for r in self.r_values):
            raise ValueError("r values must be non-negative")
        if any(b >= a for a, b in zip(self.r_values[1:], self.r_values)):
            raise ValueError("r values must be strictly increasing")
        if self.target_error <= 0:
            raise ValueError(f"target_error must be > 0, got {self.target_error}")
        if self.bound_mode not in BOUND_CONSTANTS:
            raise ValueError(f"bound must be one of {sorted(BOUND_CONSTANTS)}")
        if self.output_format not in ("csv", "json"):
            raise ValueError(f"format must be csv or json, got {self.output_format}")
        if self.threads < 1:
            raise ValueError(f"threads must be >= 1, got {self.threads}")
        if not self.allow_large and max(self.n_atoms_values) > MAX_ATOMS_DEFAULT:
            raise ValueError(
                f"refusing n_atoms > {MAX_ATOMS_DEFAULT} (composition blowup); "
                "pass --allow-large to override"
            )


def _sweep_point(task: tuple) -> dict:
    """Evaluate one (n_atoms, r) sweep point; must stay picklable."""
    (n, r, target_error, symmetry, bound_mode, nmax_override, nmax_cap, allow_large) = task

    register = ModeRegister.traps(n, n, local_cutoff=0)
    classes = [s.signature(register) for s in enumerate_splits(register, symmetry=True)]

    probe_cache: dict[int, tuple[float, ...]] = {}

    def probe(nmax: int) -> tuple[float, ...]:
        if nmax not in probe_cache:
            probe_cache[nmax] = tuple(
                com_split_purity(r, n, nmax, t, v) for t, v in classes
            )
        return probe_cache[nmax]

    budget = TruncationBudget(target_error=target_error, nmax_cap=nmax_cap)
    if nmax_override is not None:
        nmax = nmax_override
        budget.achieved_tail = math.tanh(r) ** (2 * (nmax + 1))
    else:
        nmax = select_nmax(r, budget, probe=probe)
    tail = budget.achieved_tail

    if nmax == 0 or r == 0.0:
        gap = 0.0
    else:
        gap = max(abs(a - b) for a, b in zip(probe(nmax), probe(nmax - 1)))
    trunc_error = purity_error_bound(tail, gap)

    if symmetry:
        labels = [f"{t}/{v}" for t, v in classes]
        purities = list(probe(nmax))
    else:
        support = predicted_support_size(n, nmax)
        if support > SUPPORT_CAP and not allow_large:
            raise ValueError(
                f"no-symmetry sweep at n={n}, r={r} needs {support} stored amplitudes "
                f"(cap {SUPPORT_CAP}); rerun with symmetry or --allow-large"
            )
        state = com_squeezed_state(SqueezedPairSpec(r=r, n_atoms_per_trap=n, nmax=nmax))
        labels, purities = [], []
        for split in enumerate_splits(state.register, symmetry=False):
            labels.append(split.label.replace(",", "+"))
            purities.append(purity(state, split))

    min_sl = 1.0 - max(purities)
    return {
        "r": r,
        "n_atoms": n,
        "nmax": nmax,
        "tail": tail,
        "split_class": labels,
        "purity": purities,
        "min_linear_entropy": min_sl,
        "entropy_bound": min_sl * BOUND_CONSTANTS[bound_mode],
        "trunc_error": trunc_error,
    }


def run_sweep(config: SweepConfig) -> list[dict]:
    """All sweep rows for ``config``, sorted by (n_atoms, r)."""
    tasks = [
        (
            n,
            r,
            config.target_error,
            config.symmetry,
            config.bound_mode,
            config.nmax_override,
            config.nmax_cap,
            config.allow_large,
        )
        for n in config.n_atoms_values
        for r in config.r_values
    ]
    if config.threads > 1:
        with ProcessPoolExecutor(max_workers=config.threads) as pool:
            rows = list(pool.map(_sweep_point, tasks))
    else:
        rows = [_sweep_point(t) for t in tasks]
    rows.sort(key=lambda row: (row["n_atoms"], row["r"]))
    return rows


def _fmt(x: float) -> str:
    return f"{x:.12g}"


def write_rows_csv(rows: list[dict], config: SweepConfig, path) -> None:
    lines = [
        "# mbent sweep generated="
        + datetime.now(timezone.utc).isoformat()
        + f" bound={config.bound_mode} target_error={_fmt(config.target_error)}"
        + f" symmetry={'on' if config.symmetry else 'off'}"
    ]
    lines.append(",".join(CSV_COLUMNS))
    for row in rows:
        lines.append(
            ",".join(
                [
                    _fmt(row["r"]),
                    str(row["n_atoms"]),
                    str(row["nmax"]),
                    _fmt(row["tail"]),
                    ";".join(row["split_class"]),
                    ";".join(_fmt(p) for p in row["purity"]),
                    _fmt(row["min_linear_entropy"]),
                    _fmt(row["entropy_bound"]),
                    _fmt(row["trunc_error"]),
                ]
            )
        )
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("\n".join(lines) + "\n")


def write_rows_json(rows: list[dict], config: SweepConfig, path) -> None:
    payload = {
        "generated": datetime.now(timezone.utc).isoformat(),
        "bound": config.bound_mode,
        "target_error": config.target_error,
        "symmetry": config.symmetry,
        "rows": rows,
    }
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(payload, fh, indent=1)
        fh.write("\n")


def read_results(path) -> list[dict]:
    """Rows of a sweep results file (either output format)."""
    with open(path, "r", encoding="utf-8") as fh:
        text = fh.read()
    stripped = text.lstrip()
    if not stripped:
        raise ResultsParseError(f"results file {path} is empty")
    if stripped.startswith("{"):
        try:
            payload = json.loads(text)
            rows = payload["rows"]
        except (json.JSONDecodeError, KeyError, TypeError) as exc:
            raise ResultsParseError(f"bad JSON results file {path}: {exc}") from None
        if not isinstance(rows, list) or not rows:
            raise ResultsParseError(f"results file {path} contains no rows")
        return rows

    lines = [ln for ln in text.splitlines() if ln.strip() and not ln.startswith("#")]
    if not lines or lines[0].split(",") != CSV_COLUMNS:
        raise ResultsParseError(f"results file {path} lacks the expected CSV header")
    rows = []
    for lineno, line in enumerate(lines[1:], start=2):
        parts = line.split(",")
        if len(parts) != len(CSV_COLUMNS):
            raise ResultsParseError(f"{path}: row {lineno} has {len(parts)} fields")
        try:
            rows.append(
                {
                    "r": float(parts[0]),
                    "n_atoms": int(parts[1]),
                    "nmax": int(parts[2]),
                    "tail": float(parts[3]),
                    "split_class": parts[4].split(";"),
                    "purity": [float(p) for p in parts[5].split(";")],
                    "min_linear_entropy": float(parts[6]),
                    "entropy_bound": float(parts[7]),
                    "trunc_error": float(parts[8]),
                }
            )
        except ValueError as exc:
            raise ResultsParseError(f"{path}: row {lineno}: {exc}") from None
    if not rows:
        raise ResultsParseError(f"results file {path} contains no rows")
    return rows


PLOT_TEMPLATE = '''#!/usr/bin/env python3
"""Entanglement lower bound vs squeezing parameter; generated by `mbent plotscript`."""
import matplotlib.pyplot as plt

series = {series!r}

fig, ax = plt.subplots(figsize=(6, 4))
for n_atoms in sorted(series):
    r, bound = series[n_atoms]
    ax.plot(r, bound, marker="o", markersize=3,
            label=f"N={{n_atoms}} ({{2 * n_atoms}}-way)")
ax.set_xlabel("squeezing parameter r")
ax.set_ylabel("lower bound on minimum bipartite entropy (bits)")
ax.legend()
fig.tight_layout()
fig.savefig({figname!r}, dpi=150)
print("wrote", {figname!r})
'''


def render_plot_script(rows: list[dict], figname: str = "mway_entanglement_bounds.png") -> str:
    series: dict[int, tuple[list[float], list[float]]] = {}
    for row in sorted(rows, key=lambda row: (row["n_atoms"], row["r"])):
        rs, bounds = series.setdefault(int(row["n_atoms"]), ([], []))
        rs.append(float(row["r"]))
        bounds.append(float(row["entropy_bound"]))
    return PLOT_TEMPLATE.format(series=series, figname=figname)


def _r_grid(args) -> tuple[float, ...]:
    if args.r_list is not None:
        return tuple(args.r_list)
    if args.r_step <= 0:
        raise ValueError(f"--r-step must be > 0, got {args.r_step}")
    count = int(math.floor((args.r_max - args.r_min) / args.r_step + 1e-9)) + 1
    if count < 1:
        raise ValueError("empty r grid; check --r-min/--r-max/--r-step")
    return tuple(round(args.r_min + i * args.r_step, 12) for i in range(count))


def cmd_sweep(args) -> int:
    config = SweepConfig(
        n_atoms_values=tuple(args.n_atoms),
        r_values=_r_grid(args),
        target_error=args.target_error,
        bound_mode=args.bound,
        output_format=args.format,
        output_path=args.out,
        symmetry=not args.no_symmetry,
        threads=args.threads,
        nmax_override=args.nmax,
        nmax_cap=args.nmax_cap,
        allow_large=args.allow_large,
    )
    rows = run_sweep(config)
    if config.output_format == "csv":
        write_rows_csv(rows, config, config.output_path)
    else:
        write_rows_json(rows, config, config.output_path)
    print(f"wrote {len(rows)} rows to {config.output_path}")
    return 0


def cmd_measure(args) -> int:
    state = read_state_file(args.state_file)
    report = check_mway_entanglement(state, tolerance=args.tolerance, bound_mode=args.bound)
    exact: float | None
    try:
        exact = min_bipartite_entropy(state)
    except CapacityError:
        exact = None

    if args.json:
        payload = {
            "n_modes": report.n_modes,
            "is_mway_entangled": report.is_mway_entangled,
            "tolerance": report.tolerance,
            "truncation_error": report.truncation_error,
            "min_linear_entropy": report.min_linear_entropy,
            "entropy_bound": report.entropy_bound,
            "bound": report.bound_mode,
            "min_bipartite_entropy": exact,
            "per_split": [
                {
                    "split": res.split.label,
                    "purity": res.purity,
                    "linear_entropy": res.linear_entropy,
                }
                for res in report.per_split
            ],
        }
        print(json.dumps(payload, indent=1))
        return 0

    print(f"state: {report.n_modes} modes, {len(state.amplitudes)} basis terms")
    print(f"{'split':<16}{'purity':>18}{'linear entropy':>18}")
    for res in report.per_split:
        print(f"{res.split.label:<16}{res.purity:>18.12g}{res.linear_entropy:>18.12g}")
    verdict = "true" if report.is_mway_entangled else "false"
    print(f"{report.n_modes}-way entangled: {verdict} (tolerance {report.tolerance:.3g})")
    if not report.is_mway_entangled:
        offending = ", ".join(res.split.label for res in report.offending_splits)
        print(f"offending split(s): {offending}")
    if exact is not None:
        print(f"min bipartite entropy (bits): {exact:.12g}")
    print(f"entropy lower bound (bits, {report.bound_mode}): {report.entropy_bound:.12g}")
    return 0


def cmd_plotscript(args) -> int:
    rows = read_results(args.results_file)
    script = render_plot_script(rows, figname=args.figname)
    with open(args.out, "w", encoding="utf-8") as fh:
        fh.write(script)
    print(f"wrote {args.out}")
    return 0


class _Parser(argparse.ArgumentParser):
    # usage problems are validation failures (exit 5), not budget failures
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(5, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="mbent",
        description="Multipartite entanglement of centre-of-mass phonon states.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    sweep = sub.add_parser(
        "sweep",
        help="sweep the squeezing parameter and record per-split purities and bounds",
        description=(
            "One output row per (n_atoms, r) point with columns "
            + ",".join(CSV_COLUMNS)
            + ". split_class/purity cells hold ;-separated per-split lists "
            "(t/v trap signatures with symmetry on, traced mode sets otherwise)."
        ),
    )
    sweep.add_argument("--n-atoms", type=int, nargs="+", default=[2, 3, 4],
                       help="atoms per trap; several values give one row group per value")
    sweep.add_argument("--r-min", type=float, default=0.0)
    sweep.add_argument("--r-max", type=float, default=1.5)
    sweep.add_argument("--r-step", type=float, default=0.1)
    sweep.add_argument("--r-list", type=float, nargs="+", default=None,
                       help="explicit r values (overrides --r-min/--r-max/--r-step)")
    sweep.add_argument("--target-error", type=float, default=1e-3,
                       help="absolute error budget per reported value (default 1e-3)")
    sweep.add_argument("--bound", choices=sorted(BOUND_CONSTANTS), default="paper",
                       help="linear-entropy bound constant: paper=S_L/log2(e), tight=S_L*log2(e)")
    sweep.add_argument("--format", choices=["csv", "json"], default="csv")
    sweep.add_argument("--out", default="sweep.csv")
    sweep.add_argument("--no-symmetry", action="store_true",
                       help="evaluate every traced subset instead of one per (t,v) class")
    sweep.add_argument("--threads", type=int, default=1,
                       help="worker processes across (n_atoms, r) points")
    sweep.add_argument("--nmax", type=int, default=None,
                       help="fix the truncation cutoff instead of auto-selecting it")
    sweep.add_argument("--nmax-cap", type=int, default=64,
                       help="hard ceiling for the auto-selected cutoff (default 64)")
    sweep.add_argument("--allow-large", action="store_true",
                       help="lift the n_atoms<=6 and support-size guards")
    sweep.set_defaults(func=cmd_sweep)

    measure = sub.add_parser("measure",
                             help="full per-split report for a state file")
    measure.add_argument("state_file")
    measure.add_argument("--tolerance", type=float, default=None,
                         help="purity gap for the strict entanglement inequality")
    measure.add_argument("--bound", choices=sorted(BOUND_CONSTANTS), default="paper")
    measure.add_argument("--json", action="store_true", help="print the report as JSON")
    measure.set_defaults(func=cmd_measure)

    plot = sub.add_parser("plotscript",
                          help="emit a standalone matplotlib script from sweep results")
    plot.add_argument("results_file")
    plot.add_argument("--out", default="plot_bounds.py")
    plot.add_argument("--figname", default="mway_entanglement_bounds.png")
    plot.set_defaults(func=cmd_plotscript)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except BudgetInfeasibleError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (StateFileError, ResultsParseError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 4
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 5
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    raise SystemExit(main())
