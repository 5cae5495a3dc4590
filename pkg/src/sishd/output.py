"""CSV and SVG emission for batch results."""

from __future__ import annotations

import csv
from pathlib import Path

import numpy as np

from .analysis import sensitivity_indices
from .batch import BatchResult, BatchRow
from .svg import bar_chart, line_chart

TRAJECTORY_HEADER = ("t", "S", "I", "H", "D", "cumS", "cumI", "cumH", "cumDeaths")
SUMMARY_HEADER = (
    "scenario", "initial", "S0", "I0", "H0", "D0",
    "R0", "dfe_stability", "S_star", "I_star", "H_star", "dee_stability",
    "a1", "a2", "a3", "pi", "pi_star", "step", "error",
)
CHART_KINDS = ("trajectory", "reserve", "sensitivity")

_GREEK = {
    "beta": "β", "epsilon": "ε", "alpha_I": "α_I", "gamma_I": "γ_I",
    "alpha_H": "α_H", "gamma_H": "γ_H", "Lambda": "Λ", "mu": "μ", "delta": "δ",
}


def fmt(x: float | None) -> str:
    """Shortest round-trip decimal; empty for missing values."""
    if x is None:
        return ""
    return repr(float(x))


def reserve_column(multiplier: float) -> str:
    return f"V_x{multiplier!r}"


def trajectory_filename(row: BatchRow) -> str:
    return f"{row.scenario}_IC{row.initial_index + 1}.csv"


def _write(path: Path, header, rows) -> Path:
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        with path.open("w", newline="", encoding="utf-8") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(header)
            w.writerows(rows)
    except OSError as exc:
        raise OSError(f"{path}: {exc.strerror or exc}") from exc
    return path


def write_trajectory_csv(row: BatchRow, path: Path) -> Path:
    traj = row.trajectory
    if traj is None:
        raise ValueError(f"{row.label}: no trajectory to write")
    header = list(TRAJECTORY_HEADER)
    columns = [traj.times, *traj.states.T, *traj.cumulative.T]
    if row.pricing is not None:
        for m, v in sorted(row.pricing.reserves.items()):
            header.append(reserve_column(m))
            columns.append(v)
    data = np.column_stack(columns).tolist()
    return _write(path, header, ([repr(x) for x in r] for r in data))


def summary_rows(result: BatchResult):
    for row in result.rows:
        scen = result.scenario(row.scenario)
        x0 = scen.initials[row.initial_index]
        a = row.analysis
        dee = a.dee if a else None
        routh = a.routh if a else None
        pr = row.pricing
        yield [
            row.scenario, f"IC{row.initial_index + 1}",
            fmt(x0.S), fmt(x0.I), fmt(x0.H), fmt(x0.D),
            fmt(a.r0) if a else "",
            a.dfe_stability.value if a else "",
            fmt(dee.S if dee else None), fmt(dee.I if dee else None), fmt(dee.H if dee else None),
            a.dee_stability.value if a and a.dee_stability else "",
            fmt(routh.a1 if routh else None), fmt(routh.a2 if routh else None), fmt(routh.a3 if routh else None),
            fmt(pr.pi_zero_profit if pr else None), fmt(pr.pi_star if pr else None),
            fmt(scen.sim.step),
            row.error or "",
        ]


def emit_csv(result: BatchResult, out_dir: str | Path, *, trajectories: bool = True) -> list[Path]:
    """Write one CSV per (scenario, initial) plus ``summary.csv``; return paths."""
    out_dir = Path(out_dir)
    written = []
    if trajectories:
        for row in result.rows:
            if row.trajectory is not None:
                written.append(write_trajectory_csv(row, out_dir / trajectory_filename(row)))
    written.append(_write(out_dir / "summary.csv", SUMMARY_HEADER, summary_rows(result)))
    return written


def chart_svg(result: BatchResult, kind: str, scenario: str, initial_index: int = 0) -> str:
    if kind not in CHART_KINDS:
        raise ValueError(f"unknown chart kind {kind!r}; expected one of {', '.join(CHART_KINDS)}")
    if kind == "sensitivity":
        params = result.scenario(scenario).params
        sens = sensitivity_indices(params)
        bars = [(_GREEK[name], s.normalized_index) for name, s in sens.items()]
        return bar_chart(
            bars,
            title=f"Normalized sensitivity indices of R0, set {scenario}",
            x_label="parameter",
            y_label="sensitivity index (dimensionless)",
        )

    row = result.row(scenario, initial_index)
    if row.error is not None:
        raise ValueError(f"{row.label} failed: {row.error}")
    traj = row.trajectory
    if kind == "trajectory":
        if traj is None:
            raise ValueError(f"{row.label}: no trajectory series")
        series = [(name, traj.times, col) for name, col in zip(("S", "I", "H"), traj.states.T)]
        return line_chart(
            series,
            title=f"SISHD dynamics, {row.label}",
            x_label="time t (days)",
            y_label="individuals",
        )
    if row.pricing is None:
        raise ValueError(f"{row.label}: no reserve series (scenario has no benefits)")
    pr = row.pricing
    series = [
        (f"π = {m:g}·π* ({m * pr.pi_star:.5g})", pr.times, v)
        for m, v in sorted(pr.reserves.items())
    ]
    return line_chart(
        series,
        title=f"Reserve level V(t), {row.label}, π* = {pr.pi_star:.6g}",
        x_label="time t (days)",
        y_label="reserve V(t) (currency)",
    )


def emit_svg(
    result: BatchResult, kind: str, path: str | Path, scenario: str, initial_index: int = 0
) -> Path:
    text = chart_svg(result, kind, scenario, initial_index)
    path = Path(path)
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(text, encoding="utf-8")
    except OSError as exc:
        raise OSError(f"{path}: {exc.strerror or exc}") from exc
    return path
