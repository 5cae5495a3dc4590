"""Threshold quantities, equilibria and stability of the SISHD model.

Everything here works on the (S, I, H) subsystem; D decouples and is ignored.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

import numpy as np

from .model import PARAM_NAMES, ModelParams, State, rates

HYPERBOLICITY_TOL = 1e-9


class Stability(str, enum.Enum):
    LOCALLY_STABLE = "LocallyStable"
    UNSTABLE = "Unstable"
    NONHYPERBOLIC = "Nonhyperbolic"


class NoEndemicEquilibrium(ValueError):
    """Raised when an operation needs the DEE but R0 <= 1."""


@dataclass(frozen=True)
class RouthCoefficients:
    """Coefficients of lambda^3 + a1*lambda^2 + a2*lambda + a3."""

    a1: float
    a2: float
    a3: float

    @property
    def hurwitz_determinant(self) -> float:
        return self.a1 * self.a2 - self.a3

    def is_stable(self) -> bool:
        return self.a1 > 0 and self.a3 > 0 and self.hurwitz_determinant > 0


@dataclass(frozen=True)
class AnalysisReport:
    r0: float
    dfe: State
    dee: State | None
    dfe_stability: Stability
    dee_stability: Stability | None
    routh: RouthCoefficients | None
    dfe_eigenvalues: np.ndarray = field(repr=False)
    dee_eigenvalues: np.ndarray | None = field(default=None, repr=False)


@dataclass(frozen=True)
class GASReport:
    h1: bool
    h2_offdiag: bool
    h2_ghat_nonneg: bool
    a_spectral_abscissa: float
    sample_count: int
    seed: int


@dataclass(frozen=True)
class Sensitivity:
    partial: float
    normalized_index: float


def compute_r0(p: ModelParams) -> float:
    K = p.hospital_outflow
    return p.beta * p.Lambda * (K + p.epsilon * p.delta) / (p.mu * p.infected_outflow * K)


def next_generation_blocks(p: ModelParams) -> tuple[np.ndarray, np.ndarray]:
    """New-infection (F) and transition (V) Jacobians on (I, H) at the DFE."""
    s0 = p.carrying_bound
    F = np.array([[p.beta * s0, p.beta * p.epsilon * s0], [0.0, 0.0]])
    V = np.array([[p.infected_outflow, 0.0], [-p.delta, p.hospital_outflow]])
    return F, V


def r0_ngm_oracle(p: ModelParams) -> float:
    """Spectral radius of F V^-1, computed numerically."""
    F, V = next_generation_blocks(p)
    K = F @ np.linalg.inv(V)
    return float(np.max(np.abs(np.linalg.eigvals(K))))


def disease_free_equilibrium(p: ModelParams) -> State:
    return State(p.carrying_bound, 0.0, 0.0, 0.0)


def disease_endemic_equilibrium(p: ModelParams) -> State | None:
    """Endemic equilibrium (D = 0), or None when R0 <= 1."""
    if compute_r0(p) <= 1.0:
        return None
    K = p.hospital_outflow
    s_star = p.infected_outflow * K / (p.beta * (K + p.epsilon * p.delta))
    denom = (p.gamma_I + p.mu + p.delta) * K - p.alpha_H * p.delta
    i_star = K * (p.Lambda - p.mu * s_star) / denom
    h_star = p.delta * i_star / K
    if min(s_star, i_star, h_star) <= 0.0:
        # R0 within rounding of 1: the equilibrium merges with the DFE.
        return None
    return State(s_star, i_star, h_star, 0.0)


def jacobian(p: ModelParams, x: State) -> np.ndarray:
    S, I, H = x.S, x.I, x.H
    b, e = p.beta, p.epsilon
    return np.array(
        [
            [-b * I - b * e * H - p.mu, -b * S + p.alpha_I, -b * e * S + p.alpha_H],
            [b * I + b * e * H, b * S - p.infected_outflow, b * e * S],
            [0.0, p.delta, -p.hospital_outflow],
        ]
    )


def characteristic_coefficients(J: np.ndarray) -> RouthCoefficients:
    """Monic characteristic polynomial coefficients of a 3x3 matrix."""
    minors = (
        J[0, 0] * J[1, 1] - J[0, 1] * J[1, 0]
        + J[0, 0] * J[2, 2] - J[0, 2] * J[2, 0]
        + J[1, 1] * J[2, 2] - J[1, 2] * J[2, 1]
    )
    return RouthCoefficients(
        a1=float(-np.trace(J)),
        a2=float(minors),
        a3=float(-np.linalg.det(J)),
    )


def _require_dee(p: ModelParams) -> State:
    dee = disease_endemic_equilibrium(p)
    if dee is None:
        raise NoEndemicEquilibrium(f"no endemic equilibrium: R0 = {compute_r0(p):.6g} <= 1")
    return dee


def routh_coefficients(p: ModelParams) -> RouthCoefficients:
    """Characteristic coefficients of the Jacobian at the DEE (trace/minors/det)."""
    return characteristic_coefficients(jacobian(p, _require_dee(p)))


def routh_coefficients_symbolic(p: ModelParams) -> RouthCoefficients:
    """Closed-form a1, a2, a3 written through the auxiliaries M0, M1, M2, B.

    Cross-check path for :func:`routh_coefficients`; not used for reporting.
    """
    dee = _require_dee(p)
    mu, b, e = p.mu, p.beta, p.epsilon
    aI, gI, d, gH, aH = p.alpha_I, p.gamma_I, p.delta, p.gamma_H, p.alpha_H
    K = p.hospital_outflow

    M0 = p.Lambda - mu * dee.S
    M1 = K / ((gI + mu + d) * K - aH * d)
    M2 = d / K
    B = M2
    bS = b * dee.S
    bM = b * M0 * M1
    beM = b * e * B * M0 * M1

    rate_sum = aH + aI + d + gH + gI
    pair_sum = aH * aI + aH * d + aH * gI + aI * gH + d * gH + gH * gI
    c2 = aH + d + gH + gI + 2 * mu
    c3 = mu**2 + mu * (aH + d + gH + gI) + aH * gI + d * gH + gH * gI

    a1 = (rate_sum + 3 * mu) - bS + bM + beM
    a2 = (
        pair_sum + 2 * mu * rate_sum + 3 * mu**2
        + bS * (-aH - gH - 2 * mu - e * d)
        + bM * c2
        + beM * c2
    )
    a3 = (
        mu**3 + mu**2 * rate_sum + mu * pair_sum
        + bS * (-(mu**2) - mu * (aH + gH + e * d))
        + bM * c3
        + beM * c3
    )
    return RouthCoefficients(a1, a2, a3)


def gas_matrix(p: ModelParams) -> np.ndarray:
    """Linear part A of the infected subsystem at X* = Lambda/mu (equals F - V)."""
    x_star = p.carrying_bound
    return np.array(
        [
            [p.beta * x_star - p.infected_outflow, p.beta * p.epsilon * x_star],
            [p.delta, -p.hospital_outflow],
        ]
    )


def _classify_r0(r0: float, eta: float) -> Stability:
    if r0 < 1.0 - eta:
        return Stability.LOCALLY_STABLE
    if r0 > 1.0 + eta:
        return Stability.UNSTABLE
    return Stability.NONHYPERBOLIC


def classify_stability(p: ModelParams, eta: float = HYPERBOLICITY_TOL) -> AnalysisReport:
    r0 = compute_r0(p)
    dfe = disease_free_equilibrium(p)
    dee = disease_endemic_equilibrium(p)
    dee_stability = routh = dee_eig = None
    if dee is not None:
        J = jacobian(p, dee)
        routh = characteristic_coefficients(J)
        dee_eig = np.linalg.eigvals(J)
        dee_stability = Stability.LOCALLY_STABLE if routh.is_stable() else Stability.UNSTABLE
    return AnalysisReport(
        r0=r0,
        dfe=dfe,
        dee=dee,
        dfe_stability=_classify_r0(r0, eta),
        dee_stability=dee_stability,
        routh=routh,
        dfe_eigenvalues=np.linalg.eigvals(jacobian(p, dfe)),
        dee_eigenvalues=dee_eig,
    )


def sample_feasible_region(p: ModelParams, n: int, seed: int = 0) -> np.ndarray:
    """Uniform samples (n, 3) of the simplex S + I + H <= Lambda/mu."""
    rng = np.random.default_rng(seed)
    # Flat Dirichlet on 4 coordinates, slack dropped, is uniform on the solid simplex.
    w = rng.dirichlet(np.ones(4), size=n)
    return w[:, :3] * p.carrying_bound


def check_dfe_gas_conditions(p: ModelParams, sample_count: int = 1000, seed: int = 0) -> GASReport:
    if sample_count < 1:
        raise ValueError("sample_count must be >= 1")
    A = gas_matrix(p)
    x_star = p.carrying_bound
    pts = sample_feasible_region(p, sample_count, seed)
    X, I, H = pts[:, 0], pts[:, 1], pts[:, 2]
    g_hat = p.beta * I * (x_star - X) + p.beta * p.epsilon * H * (x_star - X)
    return GASReport(
        h1=True,
        h2_offdiag=bool(A[0, 1] >= 0 and A[1, 0] >= 0),
        h2_ghat_nonneg=bool(np.all(g_hat >= 0)),
        a_spectral_abscissa=float(np.max(np.linalg.eigvals(A).real)),
        sample_count=sample_count,
        seed=seed,
    )


def r0_partials(p: ModelParams) -> dict[str, float]:
    """Analytic partial derivatives of R0 with respect to every parameter."""
    r0 = compute_r0(p)
    b, L, mu, e, d = p.beta, p.Lambda, p.mu, p.epsilon, p.delta
    Q = p.infected_outflow
    K = p.hospital_outflow
    num = K + e * d
    return {
        "beta": L * num / (mu * Q * K),
        "epsilon": b * L * d / (mu * Q * K),
        "alpha_I": -b * L * num / (mu * Q**2 * K),
        "gamma_I": -b * L * num / (mu * Q**2 * K),
        "alpha_H": -b * L * e * d / (mu * Q * K**2),
        "gamma_H": -b * L * e * d / (mu * Q * K**2),
        "Lambda": r0 / L,
        # mu enters the prefactor and both outflow sums.
        "mu": r0 * (1.0 / num - 1.0 / mu - 1.0 / Q - 1.0 / K),
        "delta": b * L / (mu * K) * (e / Q - num / Q**2),
    }


def r0_elasticities(p: ModelParams) -> dict[str, float]:
    """Normalized indices (dR0/dp)(p/R0) in closed form; exact 1 for beta and Lambda."""
    mu, e, d = p.mu, p.epsilon, p.delta
    Q = p.infected_outflow
    K = p.hospital_outflow
    num = K + e * d
    return {
        "beta": 1.0,
        "epsilon": e * d / num,
        "alpha_I": -p.alpha_I / Q,
        "gamma_I": -p.gamma_I / Q,
        "alpha_H": -p.alpha_H * e * d / (K * num),
        "gamma_H": -p.gamma_H * e * d / (K * num),
        "Lambda": 1.0,
        "mu": mu / num - 1.0 - mu / Q - mu / K,
        "delta": d * (e / num - 1.0 / Q),
    }


def sensitivity_indices(p: ModelParams) -> dict[str, Sensitivity]:
    """Partial and normalized forward sensitivity index of R0 per parameter."""
    partials = r0_partials(p)
    indices = r0_elasticities(p)
    return {name: Sensitivity(partials[name], indices[name]) for name in PARAM_NAMES}


def fixed_point_residual(p: ModelParams, x: State) -> float:
    """Max-norm of (S', I', H') at ``x``."""
    return max(abs(v) for v in rates(p, x.S, x.I, x.H)[:3])
