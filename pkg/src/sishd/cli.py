"""Command-line entry point.

Exit codes: 0 success, 1 validation/parse failure, 2 numerical failure,
3 table deviation beyond tolerance.
"""

from __future__ import annotations

import argparse
import dataclasses
import sys
from pathlib import Path

from . import __version__
from .analysis import classify_stability
from .batch import TABLES, BatchResult, reproduce_tables, run_batch
from .config import ConfigError, bundled_config_path, load_config, with_overrides
from .model import NumericalError
from .output import CHART_KINDS, emit_csv, emit_svg

EXIT_OK, EXIT_CONFIG, EXIT_NUMERICAL, EXIT_DEVIATION = 0, 1, 2, 3


def _print_batch(result: BatchResult, *, priced: bool) -> None:
    head = f"{'pair':<12}{'R0':>9}  {'DFE':<14}{'DEE':<14}{'S(T)':>10}{'I(T)':>10}{'H(T)':>10}"
    if priced:
        head += f"{'pi':>12}{'pi*':>12}"
    print(head)
    for row in result.rows:
        a = row.analysis
        dee = a.dee_stability.value if a.dee_stability else "-"
        if row.error:
            print(f"{row.label:<12}{a.r0:>9.4f}  {a.dfe_stability.value:<14}{dee:<14}ERROR: {row.error}")
            continue
        x = row.trajectory.final
        line = f"{row.label:<12}{a.r0:>9.4f}  {a.dfe_stability.value:<14}{dee:<14}{x.S:>10.3f}{x.I:>10.3f}{x.H:>10.3f}"
        if priced and row.pricing is not None:
            line += f"{row.pricing.pi_zero_profit:>12.6g}{row.pricing.pi_star:>12.6g}"
        print(line)
    print(f"config {result.config_hash[:12]}  step {', '.join(map(str, result.step_sizes))}  sishd {result.tool_version}")


def _batch_exit(result: BatchResult) -> int:
    kinds = {r.error_kind for r in result.failures}
    if "numerical" in kinds:
        return EXIT_NUMERICAL
    if kinds:
        return EXIT_CONFIG
    return EXIT_OK


def cmd_analyze(args) -> int:
    scenarios = load_config(args.config)
    print(f"{'scenario':<10}{'R0':>10}  {'DFE':<14}{'S*':>10}{'I*':>10}{'H*':>10}  {'DEE':<14}")
    for s in scenarios:
        rep = classify_stability(s.params)
        if rep.dee is None:
            eq = f"{'-':>10}{'-':>10}{'-':>10}"
        else:
            eq = f"{rep.dee.S:>10.2f}{rep.dee.I:>10.2f}{rep.dee.H:>10.2f}"
        dee = rep.dee_stability.value if rep.dee_stability else "-"
        print(f"{s.name:<10}{rep.r0:>10.4f}  {rep.dfe_stability.value:<14}{eq}  {dee:<14}")
    return EXIT_OK


def _run(args, *, priced: bool) -> int:
    scenarios = with_overrides(load_config(args.config), step=args.step, horizon=args.horizon)
    kw = {}
    if priced:
        kw = dict(death_benefit=args.death_benefit_mode, interest=args.interest)
    result = run_batch(scenarios, with_pricing=priced, workers=args.workers, **kw)
    _print_batch(result, priced=priced)
    if args.out:
        paths = emit_csv(result, args.out)
        print(f"wrote {len(paths)} CSV file(s) to {args.out}")
    return _batch_exit(result)


def cmd_simulate(args) -> int:
    return _run(args, priced=False)


def cmd_price(args) -> int:
    return _run(args, priced=True)


def cmd_tables(args) -> int:
    scenarios = load_config(args.config) if args.config else None
    report = reproduce_tables(args.which, scenarios)
    print(report.to_text())
    if args.csv:
        path = Path(args.csv)
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(report.to_csv(), encoding="utf-8")
    return EXIT_OK if report.ok else EXIT_DEVIATION


def cmd_chart(args) -> int:
    scenarios = with_overrides(load_config(args.config), step=args.step, horizon=args.horizon)
    matching = [s for s in scenarios if s.name == args.scenario]
    if not matching:
        raise ConfigError(f"no scenario named {args.scenario!r}")
    scenario = matching[0]
    if not 1 <= args.initial <= len(scenario.initials):
        raise ConfigError(f"--initial must be in 1..{len(scenario.initials)}")
    single = dataclasses.replace(scenario, initials=(scenario.initials[args.initial - 1],))
    result = run_batch([single], with_pricing=args.kind == "reserve")
    path = emit_svg(result, args.kind, args.out, scenario.name, 0)
    print(f"wrote {path}")
    return _batch_exit(result)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="sishd", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"sishd {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="R0, equilibria and stability per scenario")
    p.add_argument("config")
    p.set_defaults(func=cmd_analyze)

    def sim_options(p):
        p.add_argument("config")
        p.add_argument("--step", type=float, help="RK4 step size in days")
        p.add_argument("--horizon", type=float, help="end time T in days")
        p.add_argument("--out", help="directory for CSV output")
        p.add_argument("--workers", type=int, default=1)

    p = sub.add_parser("simulate", help="integrate every (scenario, initial) pair")
    sim_options(p)
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("price", help="zero-profit premium, minimal admissible premium, reserves")
    sim_options(p)
    p.add_argument("--death-benefit-mode", choices=("flow", "stock"), default="flow")
    p.add_argument("--interest", type=float, default=0.0, help="constant force of interest per day")
    p.set_defaults(func=cmd_price)

    p = sub.add_parser("tables", help="reproduce a published table")
    p.add_argument("which", choices=TABLES)
    p.add_argument("--csv", help="write the comparison as CSV")
    p.add_argument("--config", help="scenario file (default: bundled paper scenarios)")
    p.set_defaults(func=cmd_tables)

    p = sub.add_parser("chart", help="write an SVG chart for one scenario")
    p.add_argument("kind", choices=CHART_KINDS)
    p.add_argument("scenario")
    p.add_argument("out")
    p.add_argument("--config", default=str(bundled_config_path()))
    p.add_argument("--initial", type=int, default=1, help="1-based initial-state index")
    p.add_argument("--step", type=float)
    p.add_argument("--horizon", type=float)
    p.set_defaults(func=cmd_chart)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ValueError as exc:
        # ConfigError and validation failures such as a missing chart series.
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (NumericalError, FloatingPointError) as exc:
        print(f"numerical error: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
