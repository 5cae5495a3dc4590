"""SISHD parameter/state records and the model vector field.

    S' = Lambda - beta*S*(I + eps*H) + alpha_I*I - mu*S + alpha_H*H
    I' = beta*S*(I + eps*H) - (alpha_I + gamma_I + mu + delta)*I
    H' = delta*I - (gamma_H + mu + alpha_H)*H
    D' = gamma_I*I + gamma_H*H
"""

from __future__ import annotations

import math
from dataclasses import astuple, dataclass, fields

import numpy as np

PARAM_NAMES = (
    "Lambda",
    "mu",
    "beta",
    "epsilon",
    "alpha_I",
    "gamma_I",
    "delta",
    "gamma_H",
    "alpha_H",
)


class NumericalError(ArithmeticError):
    """Non-finite arithmetic or a positivity breach during computation."""


def _check_finite(name: str, value: float) -> None:
    if not math.isfinite(value):
        raise ValueError(f"{name} must be finite, got {value!r}")


@dataclass(frozen=True)
class ModelParams:
    Lambda: float  # recruitment, individuals/day
    mu: float  # natural death rate, 1/day
    beta: float  # transmission, 1/(individual*day)
    epsilon: float  # relative infectiousness of H, in [0, 1]
    alpha_I: float  # recovery from I, 1/day
    gamma_I: float  # disease death in I, 1/day
    delta: float  # hospitalization rate, 1/day
    gamma_H: float  # disease death in H, 1/day
    alpha_H: float  # discharge from H, 1/day

    def __post_init__(self):
        for f in fields(self):
            value = getattr(self, f.name)
            if isinstance(value, bool) or not isinstance(value, (int, float)):
                raise TypeError(f"{f.name} must be a real number, got {value!r}")
            object.__setattr__(self, f.name, float(value))
            _check_finite(f.name, float(value))
            if f.name == "epsilon":
                if not 0.0 <= value <= 1.0:
                    raise ValueError(f"epsilon must lie in [0, 1], got {value!r}")
            elif value <= 0.0:
                raise ValueError(f"{f.name} must be strictly positive, got {value!r}")

    @property
    def carrying_bound(self) -> float:
        """Lambda/mu, the DFE population and the bound of the feasible region."""
        return self.Lambda / self.mu

    @property
    def infected_outflow(self) -> float:
        """alpha_I + gamma_I + mu + delta: total exit rate from I."""
        return self.alpha_I + self.gamma_I + self.mu + self.delta

    @property
    def hospital_outflow(self) -> float:
        """gamma_H + mu + alpha_H: total exit rate from H."""
        return self.gamma_H + self.mu + self.alpha_H

    def as_dict(self) -> dict[str, float]:
        return {name: getattr(self, name) for name in PARAM_NAMES}

    def replace(self, **changes: float) -> ModelParams:
        values = self.as_dict()
        values.update(changes)
        return ModelParams(**values)


@dataclass(frozen=True)
class State:
    S: float
    I: float
    H: float
    D: float = 0.0

    def __post_init__(self):
        for f in fields(self):
            value = float(getattr(self, f.name))
            _check_finite(f.name, value)
            if value < 0.0:
                raise ValueError(f"state component {f.name} must be nonnegative, got {value!r}")
            object.__setattr__(self, f.name, value)

    def as_array(self) -> np.ndarray:
        return np.array(astuple(self), dtype=float)


@dataclass(frozen=True)
class FeasibleRegion:
    """The simplex S, I, H >= 0 with S + I + H <= bound."""

    bound: float

    def __post_init__(self):
        if not self.bound > 0:
            raise ValueError(f"bound must be positive, got {self.bound!r}")

    def contains(self, x: State, tol: float = 0.0) -> bool:
        if tol < 0:
            raise ValueError("tol must be nonnegative")
        return (
            min(x.S, x.I, x.H) >= -tol
            and x.S + x.I + x.H <= self.bound + tol
        )


def feasible_region(p: ModelParams) -> FeasibleRegion:
    return FeasibleRegion(p.carrying_bound)


def rates(p: ModelParams, S: float, I: float, H: float) -> tuple[float, float, float, float]:
    """Unchecked scalar right-hand side; the integrator's hot path."""
    infection = p.beta * S * (I + p.epsilon * H)
    return (
        p.Lambda - infection + p.alpha_I * I - p.mu * S + p.alpha_H * H,
        infection - p.infected_outflow * I,
        p.delta * I - p.hospital_outflow * H,
        p.gamma_I * I + p.gamma_H * H,
    )


def vector_field(p: ModelParams, x: State) -> np.ndarray:
    """(S', I', H', D') at ``x``."""
    return np.array(rates(p, x.S, x.I, x.H), dtype=float)


def total_living(x: State) -> float:
    return x.S + x.I + x.H


def in_feasible_region(p: ModelParams, x: State, tol: float = 0.0) -> bool:
    return feasible_region(p).contains(x, tol)
