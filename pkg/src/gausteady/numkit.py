"""Dense linear-algebra kernel: Lyapunov solving, spectra, numerical
rank/kernel/range, subspace comparison, matrix exponential.

All functions are pure and operate on plain ``numpy`` arrays.  Tolerances are
bundled in a :class:`TolerancePolicy` so that every rank/residual decision in
the package is driven by one explicit object.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .errors import DimensionMismatch, NoUniqueSolution

__all__ = [
    "TolerancePolicy",
    "DEFAULT_TOL",
    "lyapunov_solve",
    "is_hurwitz",
    "numerical_rank",
    "kernel_basis",
    "range_basis",
    "subspaces_equal",
    "matrix_exp",
]


@dataclass(frozen=True)
class TolerancePolicy:
    """Numerical thresholds used throughout the package.

    Attributes
    ----------
    rank_rtol : float
        Relative singular-value cutoff; singular values below
        ``rank_rtol * sigma_max`` are treated as zero.
    residual_atol : float
        Absolute bound on residual norms (Frobenius) for equation checks.
    eig_real_tol : float
        Margin for classifying an eigenvalue real part as zero.
    """

    rank_rtol: float = 1e-10
    residual_atol: float = 1e-9
    eig_real_tol: float = 1e-10

    def __post_init__(self):
        for name in ("rank_rtol", "residual_atol", "eig_real_tol"):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be strictly positive")


DEFAULT_TOL = TolerancePolicy()


def _as_square(A, name="A"):
    A = np.asarray(A, dtype=float)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise DimensionMismatch(f"{name} must be square, got shape {A.shape}")
    if not np.all(np.isfinite(A)):
        raise ValueError(f"{name} contains non-finite entries")
    return A


def lyapunov_solve(A, D, tol: TolerancePolicy = DEFAULT_TOL):
    """Solve the continuous Lyapunov equation ``A V + V A^T + D = 0``.

    Uses the Kronecker vectorization identity
    ``(I (x) A + A (x) I) vec(V) = -vec(D)`` with a dense LU solve; adequate
    at desk scale.  The unique-solution condition is checked up front via the
    eigenvalue-sum test: the equation is uniquely solvable iff no two
    eigenvalues of ``A`` sum to zero.

    Raises
    ------
    NoUniqueSolution
        If ``A`` and ``-A`` share an eigenvalue within ``eig_real_tol``.
    DimensionMismatch
        If shapes are inconsistent or ``D`` is not symmetric.
    """
    A = _as_square(A)
    D = _as_square(D, "D")
    if A.shape != D.shape:
        raise DimensionMismatch(
            f"A and D must have the same shape, got {A.shape} and {D.shape}"
        )
    if not np.allclose(D, D.T, atol=tol.residual_atol):
        raise DimensionMismatch("D must be symmetric")

    lam = np.linalg.eigvals(A)
    sums = lam[:, None] + lam[None, :]
    if np.min(np.abs(sums)) <= tol.eig_real_tol:
        raise NoUniqueSolution(
            "A and -A share an eigenvalue; the Lyapunov equation has no "
            "unique solution"
        )

    n = A.shape[0]
    M = np.kron(np.eye(n), A) + np.kron(A, np.eye(n))
    v = np.linalg.solve(M, -D.reshape(-1, order="F"))
    V = v.reshape((n, n), order="F")
    V = (V + V.T) / 2.0

    residual = np.linalg.norm(A @ V + V @ A.T + D)
    if residual > tol.residual_atol * (1.0 + np.linalg.norm(D)):
        raise NoUniqueSolution(
            f"Lyapunov residual {residual:.3e} exceeds tolerance"
        )
    return V


def is_hurwitz(A, tol: TolerancePolicy = DEFAULT_TOL) -> bool:
    """True iff every eigenvalue of ``A`` has real part below ``-eig_real_tol``."""
    A = _as_square(A)
    return bool(np.all(np.linalg.eigvals(A).real < -tol.eig_real_tol))


def _svd(M):
    M = np.asarray(M)
    if M.ndim != 2:
        raise DimensionMismatch(f"expected a matrix, got shape {M.shape}")
    if not np.all(np.isfinite(M)):
        raise ValueError("matrix contains non-finite entries")
    return np.linalg.svd(M, full_matrices=True)


def numerical_rank(M, tol: TolerancePolicy = DEFAULT_TOL) -> int:
    """Count singular values above the relative threshold."""
    _, s, _ = _svd(M)
    if s.size == 0 or s[0] == 0.0:
        return 0
    return int(np.count_nonzero(s > tol.rank_rtol * s[0]))


def kernel_basis(M, tol: TolerancePolicy = DEFAULT_TOL):
    """Orthonormal columns spanning the (right) null space of ``M``."""
    _, s, Vh = _svd(M)
    r = 0 if s.size == 0 or s[0] == 0.0 else int(
        np.count_nonzero(s > tol.rank_rtol * s[0])
    )
    return Vh.conj().T[:, r:]


def range_basis(M, tol: TolerancePolicy = DEFAULT_TOL):
    """Orthonormal columns spanning the column space of ``M``."""
    U, s, _ = _svd(M)
    r = 0 if s.size == 0 or s[0] == 0.0 else int(
        np.count_nonzero(s > tol.rank_rtol * s[0])
    )
    return U[:, :r]


def subspaces_equal(U, W, tol: TolerancePolicy = DEFAULT_TOL) -> bool:
    """True iff the column spans of ``U`` and ``W`` coincide.

    Compared through the orthogonal projectors onto the two spans, which
    makes the test invariant under basis choice and tolerant of linearly
    dependent input columns.
    """
    U = np.atleast_2d(np.asarray(U))
    W = np.atleast_2d(np.asarray(W))
    if U.shape[0] != W.shape[0]:
        raise DimensionMismatch(
            f"row dimensions differ: {U.shape[0]} vs {W.shape[0]}"
        )
    Bu = range_basis(U, tol)
    Bw = range_basis(W, tol)
    Pu = Bu @ Bu.conj().T
    Pw = Bw @ Bw.conj().T
    return bool(np.linalg.norm(Pu - Pw) < tol.residual_atol)


def matrix_exp(A, t: float):
    """Matrix exponential ``exp(A t)`` (scaling-and-squaring Pade)."""
    A = _as_square(A)
    if not np.isfinite(t):
        raise ValueError("t must be finite")
    return scipy.linalg.expm(A * t)
