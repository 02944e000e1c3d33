import numpy as np
import pytest

from gausteady import (
    EngineeringParameters,
    GaussianDynamics,
    PureStateSpec,
    drift_matrix,
)
from gausteady.numkit import is_hurwitz


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)


def random_system(rng, n, m):
    """Random (G, C) with entries in [-1, 1]."""
    G = rng.uniform(-1, 1, (2 * n, 2 * n))
    G = (G + G.T) / 2.0
    C = rng.uniform(-1, 1, (m, 2 * n)) + 1j * rng.uniform(-1, 1, (m, 2 * n))
    return GaussianDynamics(G=G, C=C)


def random_hurwitz_system(rng, n_max=3, m_max=3):
    """Rejection-sample a random system with Hurwitz drift."""
    while True:
        n = int(rng.integers(1, n_max + 1))
        m = int(rng.integers(1, m_max + 1))
        sys = random_system(rng, n, m)
        if is_hurwitz(drift_matrix(sys)):
            return sys


def random_spec(rng, n):
    """Random pure-state spec with moderately conditioned X and Y."""
    X = rng.uniform(-1, 1, (n, n))
    X = (X + X.T) / 2.0
    B = rng.uniform(-0.5, 0.5, (n, n))
    Y = np.eye(n) + (B + B.T) / 2.0 + B @ B.T
    return PureStateSpec(X=X, Y=Y)


def random_params(rng, n, m=None, dissipative_only=False):
    """Random parameter triple; full-rank P when m == n is overwhelmingly
    likely for continuous distributions."""
    m = n if m is None else m
    P = rng.uniform(-1, 1, (n, m)) + 1j * rng.uniform(-1, 1, (n, m))
    if dissipative_only:
        R = np.zeros((n, n))
        Gamma = np.zeros((n, n))
    else:
        R = rng.uniform(-1, 1, (n, n))
        R = (R + R.T) / 2.0
        Gamma = rng.uniform(-1, 1, (n, n))
        Gamma = (Gamma - Gamma.T) / 2.0
    return EngineeringParameters(P=P, R=R, Gamma=Gamma)


def cascaded_steady_covariance(kappa, eps):
    """Closed-form steady covariance of the balanced cascaded pair."""
    gm, gp = kappa - eps, kappa + eps
    return 0.5 * np.array(
        [
            [kappa / gm, -eps / gm, 0.0, 0.0],
            [-eps / gm, kappa / gm, 0.0, 0.0],
            [0.0, 0.0, kappa / gp, eps / gp],
            [0.0, 0.0, eps / gp, kappa / gp],
        ]
    )
