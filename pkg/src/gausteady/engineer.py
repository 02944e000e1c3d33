"""Synthesis of dissipative systems driving a target pure Gaussian state.

A pure Gaussian state is specified by a pair (X, Y) of real symmetric
matrices with Y > 0 through the complex symmetric graph matrix Z = X + iY.
Every system whose unique steady state is that target arises, for some
parameter triple (P, R, Gamma), from

    C = P^T (-Z, I),
    G = [[X R X + Y R Y - Gamma Y^{-1} X - X Y^{-1} Gamma^T, -X R + Gamma Y^{-1}],
         [(-X R + Gamma Y^{-1})^T,                            R              ]]

subject to a controllability-style rank condition on (P, Q) with
Q = -i R Y - Y^{-1} Gamma^T.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import numkit, steady
from .errors import AsymmetricInput, DimensionMismatch, NonPositiveY
from .model import CovarianceMatrix, GaussianDynamics, is_pure, symplectic_form
from .numkit import DEFAULT_TOL, TolerancePolicy

__all__ = [
    "PureStateSpec",
    "EngineeringParameters",
    "LocalityProfile",
    "target_covariance",
    "state_symplectic",
    "synthesize",
    "q_matrix",
    "rank_condition",
    "theorem2_check",
    "locality_profile",
    "purely_dissipative",
]


@dataclass(frozen=True)
class PureStateSpec:
    """Target pure Gaussian state encoded as Z = X + iY.

    X is n x n real symmetric (graph/adjacency part), Y is n x n real
    symmetric positive definite (squeezing part).
    """

    X: np.ndarray
    Y: np.ndarray

    def __post_init__(self):
        X = np.asarray(self.X, dtype=float)
        Y = np.asarray(self.Y, dtype=float)
        if X.ndim != 2 or X.shape[0] != X.shape[1]:
            raise DimensionMismatch(f"X must be square, got shape {X.shape}")
        if Y.shape != X.shape:
            raise DimensionMismatch(
                f"Y must match X, got {Y.shape} vs {X.shape}"
            )
        if not np.allclose(X, X.T):
            raise AsymmetricInput("X must be symmetric")
        if not np.allclose(Y, Y.T):
            raise AsymmetricInput("Y must be symmetric")
        if np.min(np.linalg.eigvalsh((Y + Y.T) / 2.0)) <= 0:
            raise NonPositiveY("Y must be positive definite")
        object.__setattr__(self, "X", (X + X.T) / 2.0)
        object.__setattr__(self, "Y", (Y + Y.T) / 2.0)

    @property
    def n(self) -> int:
        return self.X.shape[0]

    @property
    def Z(self):
        return self.X + 1j * self.Y


@dataclass(frozen=True)
class EngineeringParameters:
    """Free parameters (P, R, Gamma) of the synthesis parameterization.

    P is n x m complex (channel mixing), R is n x n real symmetric, Gamma is
    n x n real antisymmetric.
    """

    P: np.ndarray
    R: np.ndarray
    Gamma: np.ndarray

    def __post_init__(self):
        P = np.asarray(self.P, dtype=complex)
        if P.ndim == 1:
            P = P.reshape(-1, 1)
        R = np.asarray(self.R, dtype=float)
        Gamma = np.asarray(self.Gamma, dtype=float)
        n = P.shape[0]
        if P.shape[1] < 1:
            raise DimensionMismatch("at least one channel is required")
        if R.shape != (n, n) or Gamma.shape != (n, n):
            raise DimensionMismatch(
                f"R and Gamma must be {n} x {n}, got {R.shape} and {Gamma.shape}"
            )
        if not np.allclose(R, R.T):
            raise AsymmetricInput("R must be symmetric")
        if not np.allclose(Gamma, -Gamma.T):
            raise AsymmetricInput("Gamma must be antisymmetric")
        object.__setattr__(self, "P", P)
        object.__setattr__(self, "R", (R + R.T) / 2.0)
        object.__setattr__(self, "Gamma", (Gamma - Gamma.T) / 2.0)

    @property
    def n(self) -> int:
        return self.P.shape[0]

    @property
    def m(self) -> int:
        return self.P.shape[1]


@dataclass(frozen=True)
class LocalityProfile:
    """Which modes each channel touches, and which mode pairs the
    Hamiltonian couples (0-based indices)."""

    channel_supports: tuple[frozenset, ...]
    hamiltonian_edges: frozenset


def state_symplectic(spec: PureStateSpec):
    """The symplectic factor S with V = (1/2) S S^T for the target state:
    ``S = [[Y^{-1/2}, 0], [X Y^{-1/2}, Y^{1/2}]]``.

    The principal square root of Y comes from its symmetric
    eigendecomposition, which is also the single source for Y^{-1/2}.
    """
    w, U = np.linalg.eigh(spec.Y)
    if np.min(w) <= 0:
        raise NonPositiveY("Y must be positive definite")
    Yh = U @ np.diag(np.sqrt(w)) @ U.T
    Yih = U @ np.diag(1.0 / np.sqrt(w)) @ U.T
    n = spec.n
    S = np.zeros((2 * n, 2 * n))
    S[:n, :n] = Yih
    S[n:, :n] = spec.X @ Yih
    S[n:, n:] = Yh
    return S


def target_covariance(
    spec: PureStateSpec, tol: TolerancePolicy = DEFAULT_TOL
) -> CovarianceMatrix:
    """Covariance matrix (1/2) S S^T of the target pure state."""
    S = state_symplectic(spec)
    sigma = symplectic_form(spec.n)
    sympl_resid = np.linalg.norm(S @ sigma @ S.T - sigma)
    if sympl_resid > tol.residual_atol * (1.0 + np.linalg.norm(S) ** 2):
        raise NonPositiveY(
            f"state factor is not symplectic (residual {sympl_resid:.3e})"
        )
    cov = CovarianceMatrix(0.5 * S @ S.T)
    assert is_pure(cov, tol)
    return cov


def _y_inverse(spec: PureStateSpec):
    w, U = np.linalg.eigh(spec.Y)
    return U @ np.diag(1.0 / w) @ U.T


def synthesize(
    spec: PureStateSpec, params: EngineeringParameters
) -> GaussianDynamics:
    """Assemble the system (G, C) from the parameterization.

    Any valid (P, R, Gamma) yields a well-formed system; whether its steady
    state is unique is a separate question settled by :func:`rank_condition`
    or :func:`theorem2_check`.
    """
    if params.n != spec.n:
        raise DimensionMismatch(
            f"parameter dimension {params.n} != state dimension {spec.n}"
        )
    n = spec.n
    X, Y = spec.X, spec.Y
    R, Gamma = params.R, params.Gamma
    Yinv = _y_inverse(spec)

    C = params.P.T @ np.hstack([-spec.Z, np.eye(n)])

    G2 = -X @ R + Gamma @ Yinv
    G1 = X @ R @ X + Y @ R @ Y - Gamma @ Yinv @ X - X @ Yinv @ Gamma.T
    G = np.block([[G1, G2], [G2.T, R]])
    return GaussianDynamics(G=G, C=C)


def q_matrix(spec: PureStateSpec, params: EngineeringParameters):
    """The invariance generator ``Q = -i R Y - Y^{-1} Gamma^T``."""
    if params.n != spec.n:
        raise DimensionMismatch(
            f"parameter dimension {params.n} != state dimension {spec.n}"
        )
    return -1j * params.R @ spec.Y - _y_inverse(spec) @ params.Gamma.T


def rank_condition(
    P, Q, tol: TolerancePolicy = DEFAULT_TOL
) -> tuple[bool, int]:
    """Check ``rank(P, QP, ..., Q^{n-1}P) = n`` (uniqueness of the
    engineered steady state)."""
    P = np.asarray(P, dtype=complex)
    if P.ndim == 1:
        P = P.reshape(-1, 1)
    Q = np.asarray(Q, dtype=complex)
    n = Q.shape[0]
    if Q.shape != (n, n) or P.shape[0] != n:
        raise DimensionMismatch(
            f"P must be n x m and Q n x n, got {P.shape} and {Q.shape}"
        )
    blocks = [P]
    for _ in range(n - 1):
        blocks.append(Q @ blocks[-1])
    rank = numkit.numerical_rank(np.hstack(blocks), tol)
    return rank == n, rank


def theorem2_check(
    spec: PureStateSpec,
    sys: GaussianDynamics,
    tol: TolerancePolicy = DEFAULT_TOL,
) -> bool:
    """Decide whether the target state is the unique steady state of
    ``sys``: the kernel of ``V_s + i Sigma/2`` must equal the range of
    ``K^T``.

    The kernel is known analytically as the span of the columns of
    ``(-Z; I)``, so no eigendecomposition of the covariance is needed.
    """
    if sys.n != spec.n:
        raise DimensionMismatch(
            f"system has {sys.n} modes, state spec has {spec.n}"
        )
    kernel = np.vstack([-spec.Z, np.eye(spec.n)])
    K = steady.build_K(sys)
    return numkit.subspaces_equal(kernel, K.T, tol)


def locality_profile(
    sys: GaussianDynamics, tol: TolerancePolicy = DEFAULT_TOL
) -> LocalityProfile:
    """Per-channel mode supports and Hamiltonian coupling edges.

    A channel touches mode i when either of its q_i or p_i coefficients is
    nonzero relative to the channel's largest coefficient; a Hamiltonian
    edge (i, j) exists when any of the n x n blocks of G couples the two
    modes above the same relative threshold.
    """
    n = sys.n
    supports = []
    for row in np.abs(sys.C):
        peak = row.max()
        thr = tol.rank_rtol * peak if peak > 0 else 0.0
        supports.append(
            frozenset(i for i in range(n) if row[i] > thr or row[n + i] > thr)
        )

    absG = np.abs(sys.G)
    peak = absG.max()
    thr = tol.rank_rtol * peak if peak > 0 else 0.0
    edges = set()
    for bi in (0, n):
        for bj in (0, n):
            block = absG[bi : bi + n, bj : bj + n]
            for i in range(n):
                for j in range(n):
                    if i != j and block[i, j] > thr:
                        edges.add((min(i, j), max(i, j)))
    return LocalityProfile(tuple(supports), frozenset(edges))


def purely_dissipative(spec: PureStateSpec) -> GaussianDynamics:
    """The simplest synthesis: P = I, R = Gamma = 0 (no Hamiltonian, n
    channels that mirror the structure of the target graph matrix)."""
    n = spec.n
    params = EngineeringParameters(
        P=np.eye(n, dtype=complex), R=np.zeros((n, n)), Gamma=np.zeros((n, n))
    )
    return synthesize(spec, params)
