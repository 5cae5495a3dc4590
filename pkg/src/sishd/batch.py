"""Batch runs over (scenario x initial state) and paper-table reproduction."""

from __future__ import annotations

import csv
import dataclasses
import io
import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from importlib import resources

from . import __version__
from .actuarial import (
    BenefitSchedule,
    DeathBenefitMode,
    PricingReport,
    price,
    zero_profit_premium,
)
from .analysis import AnalysisReport, classify_stability, compute_r0, disease_endemic_equilibrium
from .config import Scenario, bundled_config_path, config_hash, load_config
from .model import NumericalError
from .simulate import Trajectory, integrate


@dataclass(frozen=True)
class BatchRow:
    scenario: str
    initial_index: int
    analysis: AnalysisReport | None = None
    trajectory: Trajectory | None = field(default=None, repr=False)
    pricing: PricingReport | None = field(default=None, repr=False)
    error: str | None = None
    error_kind: str | None = None  # "numerical" | "validation"

    @property
    def label(self) -> str:
        return f"{self.scenario}/IC{self.initial_index + 1}"


@dataclass(frozen=True)
class BatchResult:
    rows: tuple[BatchRow, ...]
    scenarios: tuple[Scenario, ...]
    config_hash: str
    step_sizes: tuple[float, ...]
    tool_version: str = __version__
    death_benefit: DeathBenefitMode = "flow"
    interest: float = 0.0

    @property
    def failures(self) -> tuple[BatchRow, ...]:
        return tuple(r for r in self.rows if r.error is not None)

    def row(self, scenario: str, initial_index: int = 0) -> BatchRow:
        for r in self.rows:
            if r.scenario == scenario and r.initial_index == initial_index:
                return r
        raise KeyError(f"no row for {scenario}/IC{initial_index + 1}")

    def scenario(self, name: str) -> Scenario:
        for s in self.scenarios:
            if s.name == name:
                return s
        raise KeyError(f"no scenario named {name!r}")

    def provenance(self) -> dict[str, object]:
        return {
            "config_hash": self.config_hash,
            "step_sizes": list(self.step_sizes),
            "tool_version": self.tool_version,
            "death_benefit": self.death_benefit,
            "interest": self.interest,
        }


def run_one(
    scenario: Scenario,
    index: int,
    *,
    with_pricing: bool = True,
    death_benefit: DeathBenefitMode = "flow",
    interest: float = 0.0,
) -> BatchRow:
    """Analyze, integrate and (if benefits are configured) price one pair."""
    analysis = classify_stability(scenario.params)
    try:
        traj = integrate(scenario.params, scenario.sim_for(index))
        pricing = None
        if with_pricing and scenario.benefits is not None:
            pricing = price(
                traj,
                scenario.benefits,
                scenario.premium_multipliers,
                death_benefit=death_benefit,
                interest=interest,
            )
    except (NumericalError, FloatingPointError) as exc:
        return BatchRow(scenario.name, index, analysis, error=str(exc), error_kind="numerical")
    except ValueError as exc:
        return BatchRow(scenario.name, index, analysis, error=str(exc), error_kind="validation")
    return BatchRow(scenario.name, index, analysis, traj, pricing)


def _run_job(args):
    scenario, index, kw = args
    return run_one(scenario, index, **kw)


def run_batch(
    scenarios: list[Scenario],
    *,
    with_pricing: bool = True,
    death_benefit: DeathBenefitMode = "flow",
    interest: float = 0.0,
    workers: int = 1,
) -> BatchResult:
    """Run every (scenario, initial) pair; failures are recorded per row."""
    kw = dict(with_pricing=with_pricing, death_benefit=death_benefit, interest=interest)
    jobs = [(s, k, kw) for s in scenarios for k in range(len(s.initials))]
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(_run_job, jobs))
    else:
        rows = [_run_job(job) for job in jobs]
    rows.sort(key=lambda r: (r.scenario, r.initial_index))
    return BatchResult(
        rows=tuple(rows),
        scenarios=tuple(scenarios),
        config_hash=config_hash(list(scenarios)),
        step_sizes=tuple(sorted({s.sim.step for s in scenarios})),
        death_benefit=death_benefit,
        interest=interest,
    )


# -- table reproduction --------------------------------------------------------

TABLES = ("T1", "T3", "T5")


def published_values() -> dict:
    text = (resources.files("sishd") / "data" / "published.json").read_text(encoding="utf-8")
    return json.loads(text)


@dataclass(frozen=True)
class TableCell:
    row: str
    column: str
    computed: float
    published: float
    tolerance_kind: str  # "abs" | "rel"
    tolerance: float

    @property
    def deviation(self) -> float:
        diff = abs(self.computed - self.published)
        return diff if self.tolerance_kind == "abs" else diff / abs(self.published)

    @property
    def ok(self) -> bool:
        return self.deviation <= self.tolerance


@dataclass(frozen=True)
class TableReport:
    which: str
    cells: tuple[TableCell, ...]
    provenance: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.cells)

    @property
    def max_deviation(self) -> float:
        return max(c.deviation for c in self.cells)

    def to_text(self) -> str:
        head = f"{'row':<10}{'column':<8}{'computed':>14}{'published':>12}{'deviation':>12}  {'tol':<12}ok"
        lines = [f"Table {self.which[1:]}", head, "-" * len(head)]
        for c in self.cells:
            tol = f"{c.tolerance_kind} {c.tolerance:g}"
            lines.append(
                f"{c.row:<10}{c.column:<8}{c.computed:>14.6f}{c.published:>12g}"
                f"{c.deviation:>12.2e}  {tol:<12}{'yes' if c.ok else 'NO'}"
            )
        lines.append(f"max deviation {self.max_deviation:.3e}; {'all within tolerance' if self.ok else 'OUT OF TOLERANCE'}")
        return "\n".join(lines)

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["row", "column", "computed", "published", "deviation", "tolerance_kind", "tolerance", "ok"])
        for c in self.cells:
            w.writerow([
                c.row, c.column, repr(float(c.computed)), repr(float(c.published)),
                repr(float(c.deviation)), c.tolerance_kind, repr(float(c.tolerance)), int(c.ok),
            ])
        return buf.getvalue()


def reproduce_tables(which: str, scenarios: list[Scenario] | None = None) -> TableReport:
    """Recompute a published table and compare it cell by cell."""
    if which not in TABLES:
        raise ValueError(f"unknown table {which!r}; expected one of {', '.join(TABLES)}")
    if scenarios is None:
        scenarios = load_config(bundled_config_path())
    by_name = {s.name: s for s in scenarios}
    pub = published_values()[which]
    cells: list[TableCell] = []
    provenance: dict = {"config_hash": config_hash(list(scenarios)), "tool_version": __version__}

    if which == "T1":
        tol = pub["tolerance"]
        for name, value in pub["R0"].items():
            cells.append(TableCell(name, "R0", compute_r0(by_name[name].params), value, tol["kind"], tol["value"]))
    elif which == "T3":
        tol = pub["tolerance"]
        for name, published in pub["rows"].items():
            p = by_name[name].params
            dee = disease_endemic_equilibrium(p)
            computed = {"R0": compute_r0(p), "S*": dee.S, "I*": dee.I, "H*": dee.H}
            for col, value in published.items():
                cells.append(TableCell(name, col, computed[col], value, tol[col]["kind"], tol[col]["value"]))
    else:
        tol = pub["tolerance"]
        ben = BenefitSchedule(**pub["benefits"])
        steps = set()
        for name, per_ic in pub["pi"].items():
            s = by_name[name]
            for ic_label, value in per_ic.items():
                k = int(ic_label[2:]) - 1
                sim = dataclasses.replace(s.sim_for(k), t_end=s.sim.t0 + pub["horizon"])
                steps.add(sim.step)
                traj = integrate(s.params, sim)
                cells.append(TableCell(f"{name}/{ic_label}", "pi", zero_profit_premium(traj, ben), value, tol["kind"], tol["value"]))
        provenance["step_sizes"] = sorted(steps)
    return TableReport(which, tuple(cells), provenance)
