"""Fixed-step integration of the first- and second-moment dynamics with
fidelity/purity convergence diagnostics.

The moment equations are linear, so a classical RK4 step with a step size
set from the drift spectrum is both deterministic and accurate; adaptivity
would buy nothing at this scale.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import numkit
from .errors import NonPositiveDeterminant, UnstableStep
from .model import (
    CovarianceMatrix,
    GaussianDynamics,
    GaussianState,
    diffusion_matrix,
    drift_matrix,
    purity,
)
from .numkit import DEFAULT_TOL, TolerancePolicy

__all__ = ["Trajectory", "evolve", "fidelity_to"]

# Covariance eigenvalue beyond which the integration is declared divergent.
DIVERGENCE_LIMIT = 1e6

# Maximum number of stored sample rows per trajectory.
MAX_SAMPLES = 2000

# Uncertainty-relation slack allowed to accumulate over an integration.
DRIFT_BUDGET = 1e-7


@dataclass(frozen=True)
class Trajectory:
    """Sampled moment trajectory with convergence diagnostics.

    ``fidelity`` is measured against the steady covariance of the system
    (NaN when the system has no unique steady state); means are assumed to
    decay to zero, which holds for any Hurwitz drift.
    """

    times: np.ndarray
    means: np.ndarray        # shape (T, 2n)
    covs: np.ndarray         # shape (T, 2n, 2n)
    fidelity: np.ndarray
    purity: np.ndarray

    def covariances(self) -> list[CovarianceMatrix]:
        """Sampled covariances as validated values (integrator drift budget
        applied to the uncertainty check)."""
        return [CovarianceMatrix(V, atol=DRIFT_BUDGET) for V in self.covs]


def fidelity_to(V: CovarianceMatrix, Vs: CovarianceMatrix) -> float:
    """Fidelity ``1 / sqrt(det(V + Vs))`` between two zero-mean Gaussian
    states (exact when at least one of them is pure)."""
    if V.n != Vs.n:
        raise NonPositiveDeterminant(
            f"mode counts differ: {V.n} vs {Vs.n}"
        )
    return _fidelity_raw(V.V, Vs.V)


def _fidelity_raw(V, Vs) -> float:
    det = np.linalg.det(V + Vs)
    if det <= 0:
        raise NonPositiveDeterminant(f"det(V + Vs) = {det:.3e} must be positive")
    return float(1.0 / np.sqrt(det))


def evolve(
    sys: GaussianDynamics,
    init: GaussianState,
    t_final: float,
    dt: float,
    tol: TolerancePolicy = DEFAULT_TOL,
) -> Trajectory:
    """Integrate ``d<m>/dt = A m`` and ``dV/dt = A V + V A^T + D`` with
    classical RK4 from ``init`` to ``t_final``.

    The covariance is re-symmetrized every step.  Raises
    :class:`UnstableStep` as soon as a covariance eigenvalue exceeds 1e6.
    """
    if t_final <= 0 or dt <= 0 or dt > t_final:
        raise ValueError("require 0 < dt <= t_final")
    A = drift_matrix(sys)
    D = diffusion_matrix(sys)

    Vs = None
    if numkit.is_hurwitz(A, tol):
        Vs = numkit.lyapunov_solve(A, D, tol)

    n_steps = int(np.ceil(t_final / dt))
    stride = max(1, int(np.ceil((n_steps + 1) / MAX_SAMPLES)))

    def f_mean(m):
        return A @ m

    def f_cov(V):
        return A @ V + V @ A.T + D

    m = init.mean.copy()
    V = init.cov.V.copy()

    times, means, covs = [], [], []

    def record(t):
        times.append(t)
        means.append(m.copy())
        covs.append(V.copy())

    record(0.0)
    t = 0.0
    for step in range(1, n_steps + 1):
        h = min(dt, t_final - t)
        k1m, k1v = f_mean(m), f_cov(V)
        k2m, k2v = f_mean(m + 0.5 * h * k1m), f_cov(V + 0.5 * h * k1v)
        k3m, k3v = f_mean(m + 0.5 * h * k2m), f_cov(V + 0.5 * h * k2v)
        k4m, k4v = f_mean(m + h * k3m), f_cov(V + h * k3v)
        m = m + (h / 6.0) * (k1m + 2 * k2m + 2 * k3m + k4m)
        V = V + (h / 6.0) * (k1v + 2 * k2v + 2 * k3v + k4v)
        V = (V + V.T) / 2.0
        t = min(t + h, t_final)

        eigs = np.linalg.eigvalsh(V)
        if eigs[-1] > DIVERGENCE_LIMIT:
            raise UnstableStep(
                f"covariance eigenvalue {eigs[-1]:.3e} exceeded "
                f"{DIVERGENCE_LIMIT:.0e} at t = {t:.3g}"
            )
        if step % stride == 0 or step == n_steps:
            record(t)

    covs = np.array(covs)
    means = np.array(means)
    times = np.array(times)
    purities = np.array(
        [purity(CovarianceMatrix(Vk, atol=DRIFT_BUDGET)) for Vk in covs]
    )
    if Vs is not None:
        fids = np.array([_fidelity_raw(Vk, Vs) for Vk in covs])
    else:
        fids = np.full(len(times), np.nan)
    return Trajectory(
        times=times, means=means, covs=covs, fidelity=fids, purity=purities
    )
