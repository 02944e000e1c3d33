"""Named constructors for the worked systems and target states.

These double as fixtures for the test suite and as presets addressable from
the command line (``catalog list`` / ``show`` / ``export``).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Union

import numpy as np
import scipy.linalg

from .engineer import PureStateSpec
from .errors import (
    AsymmetricInput,
    DimensionMismatch,
    NonPositiveRate,
    TooFewModes,
    UnknownEntry,
)
from .model import GaussianDynamics

__all__ = [
    "single_opo",
    "cascade",
    "cascaded_opos",
    "cv_cluster",
    "h_graph",
    "two_mode_squeezed",
    "harmonic_chain",
    "CatalogEntry",
    "CATALOG",
    "get_entry",
    "build_entry",
]


def single_opo(kappa: float, eps: complex) -> GaussianDynamics:
    """Single cavity mode with squeezing Hamiltonian and vacuum damping.

    G = [[Re eps, Im eps], [Im eps, -Re eps]], C = sqrt(kappa/2) (1, i).
    """
    if kappa <= 0:
        raise NonPositiveRate(f"kappa must be positive, got {kappa}")
    eps = complex(eps)
    G = np.array([[eps.real, eps.imag], [eps.imag, -eps.real]])
    C = np.sqrt(kappa / 2.0) * np.array([[1.0, 1j]])
    return GaussianDynamics(G=G, C=C)


def cascade(sys1: GaussianDynamics, sys2: GaussianDynamics) -> GaussianDynamics:
    """Series connection of two single-channel systems: the output field of
    the first drives the second.

    The combined system has Hamiltonian
    ``H1 + H2 + (L2^dag L1 - L1^dag L2)/2i`` and coupling ``L = L1 + L2``.
    """
    if sys1.m != 1 or sys2.m != 1:
        raise DimensionMismatch("cascade requires two single-channel systems")
    n1, n2 = sys1.n, sys2.n
    n = n1 + n2

    def embed_vec(c, offset, nloc):
        out = np.zeros(2 * n, dtype=complex)
        out[offset : offset + nloc] = c[:nloc]
        out[n + offset : n + offset + nloc] = c[nloc:]
        return out

    def embed_sym(G, offset, nloc):
        out = np.zeros((2 * n, 2 * n))
        sl = slice(offset, offset + nloc)
        sp = slice(n + offset, n + offset + nloc)
        out[sl, sl] = G[:nloc, :nloc]
        out[sl, sp] = G[:nloc, nloc:]
        out[sp, sl] = G[nloc:, :nloc]
        out[sp, sp] = G[nloc:, nloc:]
        return out

    c1 = embed_vec(sys1.C[0], 0, n1)
    c2 = embed_vec(sys2.C[0], n1, n2)
    G = embed_sym(sys1.G, 0, n1) + embed_sym(sys2.G, n1, n2)
    # Interaction (L2^dag L1 - L1^dag L2)/2i as a quadratic form; its
    # symmetric part is Im(conj(c2) c1^T) plus transpose, the antisymmetric
    # remainder only shifts the Hamiltonian by a constant.
    M = np.imag(np.outer(c2.conj(), c1))
    G = G + M + M.T
    C = (c1 + c2).reshape(1, -1)
    return GaussianDynamics(G=G, C=C)


def cascaded_opos(kappa: float, eps1: float, eps2: float) -> GaussianDynamics:
    """Two degenerate parametric oscillators connected by a unidirectional
    field, as one two-mode single-channel system.

    Per-mode Hamiltonians use real pump rates eps_j with quadratic form
    ``eps_j (q_j p_j + p_j q_j)/4``, giving the off-diagonal block
    ``[[eps1, -kappa], [kappa, eps2]]/2`` in the combined G and the coupling
    row ``sqrt(kappa/2) (1, 1, i, i)``.
    """
    if kappa <= 0:
        raise NonPositiveRate(f"kappa must be positive, got {kappa}")
    parts = []
    for eps in (float(eps1), float(eps2)):
        G = np.array([[0.0, eps / 2.0], [eps / 2.0, 0.0]])
        C = np.sqrt(kappa / 2.0) * np.array([[1.0, 1j]])
        parts.append(GaussianDynamics(G=G, C=C))
    return cascade(parts[0], parts[1])


def cv_cluster(X, r: float) -> PureStateSpec:
    """Canonical CV cluster state: graph matrix Z = X + i e^{-2r} I with X
    the symmetric adjacency matrix and r the squeezing parameter."""
    X = np.asarray(X, dtype=float)
    if X.ndim != 2 or X.shape[0] != X.shape[1] or not np.allclose(X, X.T):
        raise AsymmetricInput("adjacency matrix must be square and symmetric")
    n = X.shape[0]
    return PureStateSpec(X=X, Y=np.exp(-2.0 * r) * np.eye(n))


def h_graph(W, alpha: float) -> PureStateSpec:
    """Multimode squeezed state generated by a two-mode-squeezing
    interaction graph W: Z = i e^{-2 alpha W}."""
    W = np.asarray(W, dtype=float)
    if W.ndim != 2 or W.shape[0] != W.shape[1] or not np.allclose(W, W.T):
        raise AsymmetricInput("graph matrix W must be square and symmetric")
    n = W.shape[0]
    return PureStateSpec(X=np.zeros((n, n)), Y=scipy.linalg.expm(-2.0 * alpha * W))


def two_mode_squeezed(alpha: float) -> PureStateSpec:
    """Two-mode squeezed (EPR-approximating) state: the H-graph state on
    the single-edge graph of two modes."""
    return h_graph(np.array([[0.0, 1.0], [1.0, 0.0]]), alpha)


def _chain_adjacency(n: int):
    X = np.zeros((n, n))
    for i in range(n - 1):
        X[i, i + 1] = X[i + 1, i] = 1.0
    return X


def harmonic_chain(n: int, r: float) -> PureStateSpec:
    """Equally weighted 1-D chain cluster state on n modes."""
    n = int(n)
    if n < 2:
        raise TooFewModes(f"a chain needs at least 2 modes, got {n}")
    return cv_cluster(_chain_adjacency(n), r)


def _graph_adjacency(kind: str, n: int):
    n = int(n)
    if n < 2:
        raise TooFewModes(f"a graph needs at least 2 modes, got {n}")
    X = _chain_adjacency(n)
    if kind == "chain":
        return X
    if kind == "ring":
        X[0, n - 1] = X[n - 1, 0] = 1.0
        return X
    if kind == "complete":
        return np.ones((n, n)) - np.eye(n)
    if kind == "star":
        X = np.zeros((n, n))
        X[0, 1:] = X[1:, 0] = 1.0
        return X
    raise UnknownEntry(f"unknown graph kind {kind!r}")


@dataclass(frozen=True)
class CatalogEntry:
    """A named preset: either a dissipative system or a target state spec."""

    name: str
    kind: str  # "system" | "state-spec"
    description: str
    defaults: dict
    build: Callable[..., Union[GaussianDynamics, PureStateSpec]]


CATALOG: dict[str, CatalogEntry] = {}


def _register(entry: CatalogEntry):
    CATALOG[entry.name] = entry
    return entry


_register(
    CatalogEntry(
        name="single_opo",
        kind="system",
        description="single below-threshold parametric oscillator",
        defaults={"kappa": 6.0, "eps": 0.0},
        build=lambda kappa, eps: single_opo(kappa, eps),
    )
)
_register(
    CatalogEntry(
        name="cascaded_opos",
        kind="system",
        description="two parametric oscillators cascaded by a one-way field",
        defaults={"kappa": 6.0, "eps1": 4.8, "eps2": -4.8},
        build=lambda kappa, eps1, eps2: cascaded_opos(kappa, eps1, eps2),
    )
)
_register(
    CatalogEntry(
        name="cv_cluster",
        kind="state-spec",
        description="CV cluster state on a named graph (chain/ring/complete/star)",
        defaults={"n": 4, "r": 1.0, "graph": "chain"},
        build=lambda n, r, graph: cv_cluster(_graph_adjacency(graph, n), r),
    )
)
_register(
    CatalogEntry(
        name="h_graph",
        kind="state-spec",
        description="multimode squeezed state from a chain interaction graph",
        defaults={"n": 4, "alpha": 0.5},
        build=lambda n, alpha: h_graph(_chain_adjacency(int(n)), alpha),
    )
)
_register(
    CatalogEntry(
        name="two_mode_squeezed",
        kind="state-spec",
        description="two-mode squeezed (EPR-approximating) state",
        defaults={"alpha": 0.5},
        build=lambda alpha: two_mode_squeezed(alpha),
    )
)
_register(
    CatalogEntry(
        name="harmonic_chain",
        kind="state-spec",
        description="1-D equally weighted chain cluster state",
        defaults={"n": 4, "r": 1.0},
        build=lambda n, r: harmonic_chain(int(n), r),
    )
)


def get_entry(name: str) -> CatalogEntry:
    try:
        return CATALOG[name]
    except KeyError:
        raise UnknownEntry(
            f"unknown catalog entry {name!r}; available: {sorted(CATALOG)}"
        ) from None


def build_entry(name: str, **overrides):
    """Build a catalog entry with keyword overrides of its defaults."""
    entry = get_entry(name)
    params = dict(entry.defaults)
    for key, value in overrides.items():
        if key not in params:
            raise UnknownEntry(
                f"entry {name!r} has no parameter {key!r}; "
                f"available: {sorted(params)}"
            )
        params[key] = value
    return entry.build(**params), params
