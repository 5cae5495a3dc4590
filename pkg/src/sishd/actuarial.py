"""Premium and reserve calculations on a simulated trajectory.

Premium income is collected from S at rate ``pi``; benefits are paid at rate
``b_I`` per infected and ``b_H`` per hospitalized individual, plus a lump sum
``d`` per disease death.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Literal

import numpy as np
from scipy.integrate import cumulative_trapezoid

from .simulate import Trajectory

DeathBenefitMode = Literal["flow", "stock"]


@dataclass(frozen=True)
class BenefitSchedule:
    b_I: float = 1.0
    b_H: float = 20.0
    d: float = 100.0

    def __post_init__(self):
        for name in ("b_I", "b_H", "d"):
            value = getattr(self, name)
            if not math.isfinite(value) or value < 0:
                raise ValueError(f"{name} must be finite and nonnegative, got {value!r}")
            object.__setattr__(self, name, float(value))

    def scaled(self, c: float) -> BenefitSchedule:
        return BenefitSchedule(c * self.b_I, c * self.b_H, c * self.d)


@dataclass(frozen=True)
class PricingReport:
    pi_zero_profit: float
    pi_star: float
    horizon: float
    times: np.ndarray
    reserves: dict[float, np.ndarray]  # premium multiplier of pi_star -> V on the grid
    death_benefit: DeathBenefitMode = "flow"
    interest: float = 0.0

    def reserve_at(self, multiplier: float, t: float) -> float:
        return float(np.interp(t, self.times, self.reserves[multiplier]))


def _cumulants(
    traj: Trajectory, death_benefit: DeathBenefitMode, interest: float
) -> tuple[np.ndarray, np.ndarray]:
    """Cumulative premium base (int S) and the three benefit cumulants."""
    if death_benefit not in ("flow", "stock"):
        raise ValueError(f"unknown death-benefit mode {death_benefit!r}")
    if interest < 0 or not math.isfinite(interest):
        raise ValueError(f"interest must be finite and nonnegative, got {interest!r}")

    if interest == 0.0:
        cS, cI, cH = traj.cum_S, traj.cum_I, traj.cum_H
        if death_benefit == "flow":
            cD = traj.cum_deaths
        else:
            cD = cumulative_trapezoid(traj.D, traj.times, initial=0.0)
        return cS, np.stack([cI, cH, cD])

    # Discounted integrands have no RK4 cumulant; use the trajectory grid.
    v = np.exp(-interest * (traj.times - traj.t0))
    death = (
        traj.params.gamma_I * traj.I + traj.params.gamma_H * traj.H
        if death_benefit == "flow"
        else traj.D
    )

    def cum(x):
        return cumulative_trapezoid(v * x, traj.times, initial=0.0)

    return cum(traj.S), np.stack([cum(traj.I), cum(traj.H), cum(death)])


def _benefit_cumulant(traj, ben, death_benefit, interest):
    cS, (cI, cH, cD) = _cumulants(traj, death_benefit, interest)
    return cS, ben.b_I * cI + ben.b_H * cH + ben.d * cD


def zero_profit_premium(
    traj: Trajectory,
    ben: BenefitSchedule,
    *,
    death_benefit: DeathBenefitMode = "flow",
    interest: float = 0.0,
) -> float:
    """Premium rate that balances benefit outgo and premium income over [t0, T]."""
    cS, cB = _benefit_cumulant(traj, ben, death_benefit, interest)
    if not cS[-1] > 0:
        raise ValueError("degenerate trajectory: integral of S over the horizon is zero")
    return float(cB[-1] / cS[-1])


def reserve_curve(
    traj: Trajectory,
    ben: BenefitSchedule,
    pi: float,
    *,
    death_benefit: DeathBenefitMode = "flow",
    interest: float = 0.0,
) -> np.ndarray:
    """V(t) on the trajectory grid: future premiums minus future benefits."""
    if pi < 0:
        raise ValueError(f"premium must be nonnegative, got {pi!r}")
    cS, cB = _benefit_cumulant(traj, ben, death_benefit, interest)
    return pi * (cS[-1] - cS) - (cB[-1] - cB)


def _terminal_ratio(traj: Trajectory, ben: BenefitSchedule, death_benefit: DeathBenefitMode) -> float:
    p = traj.params
    S, I, H, D = traj.states[-1]
    death = p.gamma_I * I + p.gamma_H * H if death_benefit == "flow" else D
    # Discount factors cancel in the instantaneous limit.
    return (ben.b_I * I + ben.b_H * H + ben.d * death) / S


def minimal_admissible_premium(
    traj: Trajectory,
    ben: BenefitSchedule,
    *,
    death_benefit: DeathBenefitMode = "flow",
    interest: float = 0.0,
) -> float:
    """Smallest premium keeping the reserve nonnegative at every grid time."""
    if np.any(traj.S <= 0):
        k = int(np.argmax(traj.S <= 0))
        raise ValueError(f"S vanishes at t = {traj.times[k]:.6g}; tail premium base degenerates")
    cS, cB = _benefit_cumulant(traj, ben, death_benefit, interest)
    tail_S = cS[-1] - cS
    tail_B = cB[-1] - cB
    step = float(np.min(np.diff(traj.times)))
    floor = 1e-12 * traj.params.carrying_bound * step
    ok = tail_S[:-1] > floor
    ratios = tail_B[:-1][ok] / tail_S[:-1][ok]
    candidates = [_terminal_ratio(traj, ben, death_benefit)]
    if ratios.size:
        candidates.append(float(ratios.max()))
    return float(max(candidates))


def price(
    traj: Trajectory,
    ben: BenefitSchedule,
    multipliers: tuple[float, ...] = (1.0,),
    *,
    death_benefit: DeathBenefitMode = "flow",
    interest: float = 0.0,
) -> PricingReport:
    kw = dict(death_benefit=death_benefit, interest=interest)
    pi_zero = zero_profit_premium(traj, ben, **kw)
    pi_star = minimal_admissible_premium(traj, ben, **kw)
    reserves = {float(m): reserve_curve(traj, ben, m * pi_star, **kw) for m in multipliers}
    return PricingReport(
        pi_zero_profit=pi_zero,
        pi_star=pi_star,
        horizon=traj.t_end - traj.t0,
        times=traj.times,
        reserves=reserves,
        death_benefit=death_benefit,
        interest=interest,
    )
