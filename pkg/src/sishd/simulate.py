"""Fixed-step classical RK4 for the SISHD system.

The state is augmented with the running integrals of S, I, H and of the
disease-death flow, so the quadratures the pricing layer needs come out of
the same RK4 pass as the trajectory itself.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .model import ModelParams, NumericalError, State, rates

#: Grid steps within this fraction of ``step`` of the horizon are not split off.
_GRID_SLACK = 1e-9
#: Negative undershoot tolerated (and clamped in output) before raising.
POSITIVITY_TOL = 1e-9

AUGMENTED_LABELS = ("S", "I", "H", "D", "cumS", "cumI", "cumH", "cumDeaths")


@dataclass(frozen=True)
class SimConfig:
    t0: float = 0.0
    t_end: float = 365.0
    # The source quotes "h = 10^{03}"; 1e-3 is the presumed intent.
    step: float = 1e-3
    initial: State = field(default_factory=lambda: State(800.0, 100.0, 100.0, 0.0))

    def __post_init__(self):
        for name in ("t0", "t_end", "step"):
            value = getattr(self, name)
            if not math.isfinite(value):
                raise ValueError(f"{name} must be finite, got {value!r}")
        if self.step <= 0:
            raise ValueError(f"step must be positive, got {self.step!r}")
        if self.t_end <= self.t0:
            raise ValueError(f"t_end must exceed t0 (t0={self.t0}, t_end={self.t_end})")
        if (self.t_end - self.t0) / self.step > 5e8:
            raise ValueError("grid too large: reduce horizon or increase step")
        if not isinstance(self.initial, State):
            raise TypeError("initial must be a State")

    def grid(self) -> np.ndarray:
        """Uniform grid from t0, plus a shortened last step if needed."""
        span = self.t_end - self.t0
        n = math.floor(span / self.step + _GRID_SLACK)
        times = self.t0 + self.step * np.arange(n + 1)
        if self.t_end - times[-1] > _GRID_SLACK * self.step:
            times = np.append(times, self.t_end)
        else:
            times[-1] = self.t_end
        return times


@dataclass(frozen=True)
class Trajectory:
    params: ModelParams
    times: np.ndarray  # (m+1,)
    states: np.ndarray  # (m+1, 4): S, I, H, D, clamped at 0
    cumulative: np.ndarray  # (m+1, 4): int S, int I, int H, int death flow

    @property
    def t0(self) -> float:
        return float(self.times[0])

    @property
    def t_end(self) -> float:
        return float(self.times[-1])

    S = property(lambda self: self.states[:, 0])
    I = property(lambda self: self.states[:, 1])
    H = property(lambda self: self.states[:, 2])
    D = property(lambda self: self.states[:, 3])
    cum_S = property(lambda self: self.cumulative[:, 0])
    cum_I = property(lambda self: self.cumulative[:, 1])
    cum_H = property(lambda self: self.cumulative[:, 2])
    cum_deaths = property(lambda self: self.cumulative[:, 3])

    def __len__(self) -> int:
        return len(self.times)

    def state_at(self, k: int) -> State:
        return State(*self.states[k])

    @property
    def final(self) -> State:
        return self.state_at(-1)

    def augmented(self) -> np.ndarray:
        """(m+1, 8) array in :data:`AUGMENTED_LABELS` order."""
        return np.hstack([self.states, self.cumulative])

    def tail(self) -> np.ndarray:
        """Tail integrals from every grid time to the horizon, shape (m+1, 4)."""
        return self.cumulative[-1] - self.cumulative


def _step(p: ModelParams, y: tuple[float, ...], h: float) -> tuple[float, ...]:
    S, I, H, D, cS, cI, cH, cD = y
    h2 = 0.5 * h
    s1, i1, r1, f1 = rates(p, S, I, H)
    S2, I2, H2 = S + h2 * s1, I + h2 * i1, H + h2 * r1
    s2, i2, r2, f2 = rates(p, S2, I2, H2)
    S3, I3, H3 = S + h2 * s2, I + h2 * i2, H + h2 * r2
    s3, i3, r3, f3 = rates(p, S3, I3, H3)
    S4, I4, H4 = S + h * s3, I + h * i3, H + h * r3
    s4, i4, r4, f4 = rates(p, S4, I4, H4)
    h6 = h / 6.0
    # Cumulant stages are the stage states themselves.
    return (
        S + h6 * (s1 + 2 * s2 + 2 * s3 + s4),
        I + h6 * (i1 + 2 * i2 + 2 * i3 + i4),
        H + h6 * (r1 + 2 * r2 + 2 * r3 + r4),
        D + h6 * (f1 + 2 * f2 + 2 * f3 + f4),
        cS + h6 * (S + 2 * S2 + 2 * S3 + S4),
        cI + h6 * (I + 2 * I2 + 2 * I3 + I4),
        cH + h6 * (H + 2 * H2 + 2 * H3 + H4),
        cD + h6 * (f1 + 2 * f2 + 2 * f3 + f4),
    )


def augmented_rhs(p: ModelParams, y: np.ndarray) -> np.ndarray:
    """Derivative of the 8-component augmented state."""
    S, I, H = y[0], y[1], y[2]
    dS, dI, dH, flow = rates(p, S, I, H)
    return np.array([dS, dI, dH, flow, S, I, H, flow])


def rk4_step(p: ModelParams, y: np.ndarray, h: float) -> np.ndarray:
    """One classical RK4 step of the augmented system (length-8 array)."""
    if not h > 0:
        raise ValueError(f"step must be positive, got {h!r}")
    y = np.asarray(y, dtype=float)
    if y.shape != (8,):
        raise ValueError(f"augmented state must have 8 components, got shape {y.shape}")
    out = np.array(_step(p, tuple(y.tolist()), h))
    if not np.all(np.isfinite(out)):
        raise NumericalError(f"non-finite state after RK4 step of size {h}")
    return out


def integrate(p: ModelParams, cfg: SimConfig) -> Trajectory:
    times = cfg.grid()
    x0 = cfg.initial
    y = (x0.S, x0.I, x0.H, x0.D, 0.0, 0.0, 0.0, 0.0)
    rows = [y]
    for k in range(len(times) - 1):
        y = _step(p, y, float(times[k + 1] - times[k]))
        rows.append(y)
    out = np.array(rows)

    if not np.all(np.isfinite(out)):
        k = int(np.argmax(~np.all(np.isfinite(out), axis=1)))
        raise NumericalError(f"non-finite state at t = {times[k]:.6g}")
    low = out[:, :4].min()
    if low < -POSITIVITY_TOL:
        k, j = np.unravel_index(np.argmin(out[:, :4]), out[:, :4].shape)
        raise NumericalError(
            f"positivity breach: {AUGMENTED_LABELS[j]} = {out[k, j]:.3e} at t = {times[k]:.6g}"
        )
    states = np.maximum(out[:, :4], 0.0)
    times.setflags(write=False)
    states.setflags(write=False)
    cumulative = out[:, 4:].copy()
    cumulative.setflags(write=False)
    return Trajectory(p, times, states, cumulative)


def tail_integrals(traj: Trajectory, t: float) -> tuple[float, float, float, float]:
    """(int_t^T S, int_t^T I, int_t^T H, int_t^T death flow), interpolating off-grid."""
    t0, T = traj.t0, traj.t_end
    if not t0 <= t <= T:
        raise ValueError(f"t = {t!r} outside trajectory range [{t0}, {T}]")
    end = traj.cumulative[-1]
    return tuple(
        float(end[j] - np.interp(t, traj.times, traj.cumulative[:, j])) for j in range(4)
    )
