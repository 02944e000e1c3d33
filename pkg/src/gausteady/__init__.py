"""Steady-state analysis, dissipative engineering, and moment simulation
for Gaussian open quantum systems."""

from .engineer import (
    EngineeringParameters,
    LocalityProfile,
    PureStateSpec,
    locality_profile,
    purely_dissipative,
    q_matrix,
    rank_condition,
    synthesize,
    target_covariance,
    theorem2_check,
)
from .model import (
    CovarianceMatrix,
    GaussianDynamics,
    GaussianState,
    diffusion_matrix,
    drift_matrix,
    is_pure,
    purity,
    symplectic_form,
)
from .numkit import DEFAULT_TOL, TolerancePolicy
from .steady import Theorem1Report, analyze, log_negativity
from .dynamics import Trajectory, evolve, fidelity_to

__all__ = [
    "EngineeringParameters",
    "LocalityProfile",
    "PureStateSpec",
    "locality_profile",
    "purely_dissipative",
    "q_matrix",
    "rank_condition",
    "synthesize",
    "target_covariance",
    "theorem2_check",
    "CovarianceMatrix",
    "GaussianDynamics",
    "GaussianState",
    "diffusion_matrix",
    "drift_matrix",
    "is_pure",
    "purity",
    "symplectic_form",
    "DEFAULT_TOL",
    "TolerancePolicy",
    "Theorem1Report",
    "analyze",
    "log_negativity",
    "Trajectory",
    "evolve",
    "fidelity_to",
]

__version__ = "0.1.0"
