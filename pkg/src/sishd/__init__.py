"""SISHD epidemic model: dynamics analysis, RK4 simulation and insurance pricing."""

__version__ = "0.1.0"

from .actuarial import (
    BenefitSchedule,
    PricingReport,
    minimal_admissible_premium,
    price,
    reserve_curve,
    zero_profit_premium,
)
from .analysis import (
    AnalysisReport,
    RouthCoefficients,
    Stability,
    check_dfe_gas_conditions,
    classify_stability,
    compute_r0,
    disease_endemic_equilibrium,
    disease_free_equilibrium,
    jacobian,
    r0_ngm_oracle,
    routh_coefficients,
    sensitivity_indices,
)
from .model import (
    FeasibleRegion,
    ModelParams,
    NumericalError,
    State,
    in_feasible_region,
    total_living,
    vector_field,
)
from .simulate import SimConfig, Trajectory, integrate, rk4_step, tail_integrals

__all__ = [
    "AnalysisReport",
    "BenefitSchedule",
    "FeasibleRegion",
    "ModelParams",
    "NumericalError",
    "PricingReport",
    "RouthCoefficients",
    "SimConfig",
    "Stability",
    "State",
    "Trajectory",
    "check_dfe_gas_conditions",
    "classify_stability",
    "compute_r0",
    "disease_endemic_equilibrium",
    "disease_free_equilibrium",
    "in_feasible_region",
    "integrate",
    "jacobian",
    "minimal_admissible_premium",
    "price",
    "r0_ngm_oracle",
    "reserve_curve",
    "rk4_step",
    "routh_coefficients",
    "sensitivity_indices",
    "tail_integrals",
    "total_living",
    "vector_field",
    "zero_profit_premium",
]
