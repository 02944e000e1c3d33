"""Steady-state analyzer for Gaussian dissipative systems.

Given system matrices (G, C) this module decides whether the moment
dynamics have a unique steady state, whether that state is pure, and
reports the residuals of three equivalent algebraic pure-steady-state
conditions together with the closed-form pure covariance when it applies.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from . import numkit
from .errors import (
    ConditionViolated,
    InvalidPartition,
    NoUniqueSolution,
    SingularGram,
)
from .model import (
    CovarianceMatrix,
    GaussianDynamics,
    diffusion_matrix,
    drift_matrix,
    is_pure,
    symplectic_form,
)
from .numkit import DEFAULT_TOL, TolerancePolicy

__all__ = [
    "build_K",
    "condition_iii",
    "condition_ii",
    "pure_Vs_formula",
    "analyze",
    "log_negativity",
    "Theorem1Report",
]

# Condition number above which the Gram inversion in the closed-form
# covariance is treated as singular.
GRAM_COND_LIMIT = 1e12


def build_K(sys: GaussianDynamics):
    """Stack the 2n observability-style blocks
    ``(C; C (Sigma G); C (Sigma G)^2; ...)`` into a 2nm x 2n complex matrix.

    Block i is computed iteratively from block i-1 to avoid explicit matrix
    powers.  All 2n blocks are kept even though blocks beyond rank
    saturation are redundant by Cayley-Hamilton.
    """
    SG = sys.sigma @ sys.G
    blocks = [sys.C]
    for _ in range(2 * sys.n - 1):
        blocks.append(blocks[-1] @ SG)
    return np.vstack(blocks)


def condition_iii(
    sys: GaussianDynamics, tol: TolerancePolicy = DEFAULT_TOL
) -> tuple[bool, float]:
    """Evaluate the system-only pure-steady-state condition ``K Sigma C^T = 0``.

    Returns the verdict and the Frobenius residual ``||K Sigma C^T||``.
    """
    K = build_K(sys)
    resid = float(np.linalg.norm(K @ sys.sigma @ sys.C.T))
    scale = 1.0 + np.linalg.norm(K) * np.linalg.norm(sys.C)
    return bool(resid <= tol.residual_atol * scale), resid


def condition_ii(
    sys: GaussianDynamics,
    Vs: CovarianceMatrix,
    tol: TolerancePolicy = DEFAULT_TOL,
) -> tuple[bool, tuple[float, float]]:
    """Evaluate the dark-state conditions on a candidate steady covariance:
    ``(Vs + i Sigma/2) C^T = 0`` and ``Sigma G Vs + Vs G Sigma^T = 0``.

    Returns the verdict plus both Frobenius residuals.
    """
    S = sys.sigma
    V = Vs.V
    r1 = float(np.linalg.norm((V + 0.5j * S) @ sys.C.T))
    r2 = float(np.linalg.norm(S @ sys.G @ V + V @ sys.G @ S.T))
    scale1 = tol.residual_atol * (1.0 + np.linalg.norm(V) * np.linalg.norm(sys.C))
    scale2 = tol.residual_atol * (1.0 + np.linalg.norm(V) * np.linalg.norm(sys.G))
    return bool(r1 <= scale1 and r2 <= scale2), (r1, r2)


def pure_Vs_formula(
    sys: GaussianDynamics, tol: TolerancePolicy = DEFAULT_TOL
) -> CovarianceMatrix:
    """Closed-form pure steady covariance
    ``Vs = (1/2) Sigma^T Im(K^dag K) [Re(K^dag K)]^{-1}``.

    Valid only when :func:`condition_iii` holds.  The Gram inversion falls
    back to a pseudo-inverse for moderately ill-conditioned inputs and fails
    hard above a condition number of 1e12.
    """
    ok, _ = condition_iii(sys, tol)
    if not ok:
        raise ConditionViolated(
            "the closed-form covariance requires K Sigma C^T = 0"
        )
    K = build_K(sys)
    gram = K.conj().T @ K
    re = (gram.real + gram.real.T) / 2.0
    im = (gram.imag - gram.imag.T) / 2.0
    cond = np.linalg.cond(re)
    if cond > GRAM_COND_LIMIT:
        raise SingularGram(
            f"Re(K^dag K) condition number {cond:.3e} exceeds {GRAM_COND_LIMIT:.0e}; "
            "the steady state is not unique"
        )
    S = sys.sigma
    V = 0.5 * S.T @ im @ np.linalg.pinv(re)
    sym_resid = np.linalg.norm(V - V.T)
    if sym_resid > tol.residual_atol * (1.0 + np.linalg.norm(V)):
        raise SingularGram(
            f"closed-form covariance asymmetric (residual {sym_resid:.3e})"
        )
    cov = CovarianceMatrix((V + V.T) / 2.0)
    if not is_pure(cov, tol):
        raise ConditionViolated("closed-form covariance failed the purity check")
    return cov


@dataclass(frozen=True)
class Theorem1Report:
    """Outcome of :func:`analyze`.

    ``unique`` is the Hurwitz verdict on the drift matrix.  When it holds,
    ``Vs`` is the Lyapunov steady covariance and the three equivalent
    pure-steady-state conditions are evaluated; otherwise the remaining
    fields are ``None``/``False``.
    """

    unique: bool
    eigenvalues: np.ndarray
    Vs: Optional[CovarianceMatrix] = None
    pure: bool = False
    cond_ii: bool = False
    cond_ii_residuals: Optional[tuple[float, float]] = None
    cond_iii: bool = False
    cond_iii_residual: Optional[float] = None
    Vs_formula: Optional[CovarianceMatrix] = None
    formula_failure: Optional[str] = None


def analyze(
    sys: GaussianDynamics, tol: TolerancePolicy = DEFAULT_TOL
) -> Theorem1Report:
    """Full steady-state analysis of a Gaussian dissipative system."""
    A = drift_matrix(sys)
    eigs = np.linalg.eigvals(A)
    if not numkit.is_hurwitz(A, tol):
        # No unique steady state; the pure-state conditions are not
        # meaningful without uniqueness, so they are skipped.
        return Theorem1Report(unique=False, eigenvalues=eigs)

    D = diffusion_matrix(sys)
    Vs = CovarianceMatrix(numkit.lyapunov_solve(A, D, tol))
    pure = is_pure(Vs, tol)
    ok_ii, res_ii = condition_ii(sys, Vs, tol)
    ok_iii, res_iii = condition_iii(sys, tol)

    Vs_formula = None
    failure = None
    if ok_iii:
        try:
            Vs_formula = pure_Vs_formula(sys, tol)
        except (SingularGram, ConditionViolated, NoUniqueSolution) as exc:
            failure = str(exc)
    else:
        failure = "condition (iii) does not hold"

    return Theorem1Report(
        unique=True,
        eigenvalues=eigs,
        Vs=Vs,
        pure=pure,
        cond_ii=ok_ii,
        cond_ii_residuals=res_ii,
        cond_iii=ok_iii,
        cond_iii_residual=res_iii,
        Vs_formula=Vs_formula,
        formula_failure=failure,
    )


def log_negativity(
    state: CovarianceMatrix,
    partition: Sequence[int],
    tol: TolerancePolicy = DEFAULT_TOL,
) -> float:
    """Logarithmic negativity of ``state`` across the bipartition defined by
    ``partition`` (0-based mode indices forming one side).

    Partial transposition flips the sign of the p-quadratures of the
    partitioned modes; the symplectic eigenvalues of the transposed
    covariance are read off the spectrum of ``i Sigma V_pt`` and summed as
    ``sum_j max(0, -ln(2 nu_j))``.
    """
    n = state.n
    modes = sorted(set(int(k) for k in partition))
    if not modes or len(modes) >= n:
        raise InvalidPartition(
            "partition must be a nonempty proper subset of the modes"
        )
    if modes[0] < 0 or modes[-1] >= n:
        raise InvalidPartition(f"mode indices must lie in [0, {n - 1}]")

    flip = np.ones(2 * n)
    for k in modes:
        flip[n + k] = -1.0
    Vpt = np.diag(flip) @ state.V @ np.diag(flip)

    S = symplectic_form(n)
    nus = np.abs(np.linalg.eigvals(1j * S @ Vpt).real)
    nus = np.sort(nus)[::2]  # eigenvalues come in +/- pairs
    return float(np.sum(np.maximum(0.0, -np.log(2.0 * nus))))
