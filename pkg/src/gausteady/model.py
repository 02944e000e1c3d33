"""Data model for Gaussian dissipative systems.

Quadrature ordering is ``(q_1 ... q_n, p_1 ... p_n)`` throughout, with
``hbar = 1`` and vacuum covariance ``I/2``.  The symplectic form in this
ordering is ``[[0, I], [-I, 0]]``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import DimensionMismatch, NonPositiveDeterminant
from .numkit import DEFAULT_TOL, TolerancePolicy

__all__ = [
    "symplectic_form",
    "interleaved_to_blocked",
    "GaussianDynamics",
    "CovarianceMatrix",
    "GaussianState",
    "drift_matrix",
    "diffusion_matrix",
    "purity",
    "is_pure",
]


def symplectic_form(n: int):
    """The 2n x 2n canonical symplectic form in (q..., p...) ordering."""
    if n < 1:
        raise DimensionMismatch("mode count must be >= 1")
    S = np.zeros((2 * n, 2 * n))
    S[:n, n:] = np.eye(n)
    S[n:, :n] = -np.eye(n)
    return S


def interleaved_to_blocked(n: int):
    """Permutation matrix T mapping interleaved ordering (q1, p1, q2, p2, ...)
    to the blocked ordering (q1...qn, p1...pn) used by this package.

    For a vector ``x_int`` in interleaved ordering, ``T @ x_int`` is blocked;
    for a matrix ``M_int``, use ``T @ M_int @ T.T``.
    """
    T = np.zeros((2 * n, 2 * n))
    for i in range(n):
        T[i, 2 * i] = 1.0          # q_i
        T[n + i, 2 * i + 1] = 1.0  # p_i
    return T


def _finite(M, name):
    if not np.all(np.isfinite(np.asarray(M))):
        raise ValueError(f"{name} contains non-finite entries")


@dataclass(frozen=True)
class GaussianDynamics:
    """A linear dissipative system: quadratic Hamiltonian matrix ``G``
    (2n x 2n real symmetric) and coupling matrix ``C`` (m x 2n complex,
    one row per dissipative channel).

    ``G`` is symmetrized on construction to guard against rounding in
    user-supplied data.
    """

    G: np.ndarray
    C: np.ndarray

    def __post_init__(self):
        G = np.asarray(self.G, dtype=float)
        C = np.atleast_2d(np.asarray(self.C, dtype=complex))
        if G.ndim != 2 or G.shape[0] != G.shape[1] or G.shape[0] % 2 != 0:
            raise DimensionMismatch(
                f"G must be 2n x 2n, got shape {G.shape}"
            )
        if C.shape[1] != G.shape[0]:
            raise DimensionMismatch(
                f"C must have 2n = {G.shape[0]} columns, got shape {C.shape}"
            )
        _finite(G, "G")
        _finite(C.real, "C")
        _finite(C.imag, "C")
        object.__setattr__(self, "G", (G + G.T) / 2.0)
        object.__setattr__(self, "C", C)

    @property
    def n(self) -> int:
        return self.G.shape[0] // 2

    @property
    def m(self) -> int:
        return self.C.shape[0]

    @property
    def sigma(self):
        return symplectic_form(self.n)


@dataclass(frozen=True)
class CovarianceMatrix:
    """A physical covariance matrix: real symmetric, positive definite, and
    satisfying the uncertainty inequality ``V + i Sigma/2 >= 0`` up to the
    stated tolerance.
    """

    V: np.ndarray
    atol: float = field(default=DEFAULT_TOL.residual_atol, repr=False)

    def __post_init__(self):
        V = np.asarray(self.V, dtype=float)
        if V.ndim != 2 or V.shape[0] != V.shape[1] or V.shape[0] % 2 != 0:
            raise DimensionMismatch(f"V must be 2n x 2n, got shape {V.shape}")
        _finite(V, "V")
        if np.linalg.norm(V - V.T) > self.atol * (1 + np.linalg.norm(V)):
            raise DimensionMismatch("V must be symmetric")
        V = (V + V.T) / 2.0
        if np.min(np.linalg.eigvalsh(V)) <= 0:
            raise ValueError("V must be positive definite")
        n = V.shape[0] // 2
        unc = np.min(np.linalg.eigvalsh(V + 0.5j * symplectic_form(n)))
        if unc < -self.atol:
            raise ValueError(
                f"uncertainty relation violated: min eig(V + i Sigma/2) = {unc:.3e}"
            )
        object.__setattr__(self, "V", V)

    @property
    def n(self) -> int:
        return self.V.shape[0] // 2


@dataclass(frozen=True)
class GaussianState:
    """Mean vector plus covariance; fully determines a Gaussian state."""

    mean: np.ndarray
    cov: CovarianceMatrix

    def __post_init__(self):
        mean = np.asarray(self.mean, dtype=float).reshape(-1)
        _finite(mean, "mean")
        if mean.size != 2 * self.cov.n:
            raise DimensionMismatch(
                f"mean must have length {2 * self.cov.n}, got {mean.size}"
            )
        object.__setattr__(self, "mean", mean)

    @property
    def n(self) -> int:
        return self.cov.n


def drift_matrix(sys: GaussianDynamics):
    """Drift matrix ``A = Sigma (G + Im(C^dag C))`` of the moment dynamics.

    The imaginary part of ``C^dag C`` is antisymmetrized to remove rounding
    noise (it is exactly antisymmetric for any ``C``).
    """
    M = (sys.C.conj().T @ sys.C).imag
    M = (M - M.T) / 2.0
    return sys.sigma @ (sys.G + M)


def diffusion_matrix(sys: GaussianDynamics):
    """Diffusion matrix ``D = Sigma Re(C^dag C) Sigma^T``; symmetric PSD."""
    S = sys.sigma
    M = (sys.C.conj().T @ sys.C).real
    M = (M + M.T) / 2.0
    D = S @ M @ S.T
    return (D + D.T) / 2.0


def purity(state: CovarianceMatrix) -> float:
    """Purity ``1 / sqrt(2^{2n} det V)`` of the Gaussian state."""
    det = np.linalg.det(2.0 * state.V)
    if det <= 0:
        raise NonPositiveDeterminant(f"det(2V) = {det:.3e} must be positive")
    return float(1.0 / np.sqrt(det))


def is_pure(state: CovarianceMatrix, tol: TolerancePolicy = DEFAULT_TOL) -> bool:
    """Purity test through the phase-space identity
    ``Sigma V Sigma V = -I/4`` satisfied exactly by pure states."""
    S = symplectic_form(state.n)
    resid = S @ state.V @ S @ state.V + 0.25 * np.eye(2 * state.n)
    return bool(np.linalg.norm(resid) <= tol.residual_atol)
