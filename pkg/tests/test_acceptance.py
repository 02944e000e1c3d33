"""End-to-end acceptance gate.

Each test covers one numbered criterion at its stated tolerance and prints
one PASS line on success (run with ``pytest -s`` to see them; any failure
shows up as a normal pytest failure).
"""

import time

import numpy as np
import pytest

from gausteady import catalog
from gausteady.dynamics import evolve
from gausteady.engineer import (
    EngineeringParameters,
    locality_profile,
    purely_dissipative,
    q_matrix,
    rank_condition,
    synthesize,
    target_covariance,
)
from gausteady.model import (
    CovarianceMatrix,
    GaussianState,
    diffusion_matrix,
    drift_matrix,
    is_pure,
    symplectic_form,
)
from gausteady.numkit import lyapunov_solve, matrix_exp
from gausteady.steady import (
    analyze,
    build_K,
    condition_ii,
    condition_iii,
    log_negativity,
    pure_Vs_formula,
)

from conftest import (
    cascaded_steady_covariance,
    random_hurwitz_system,
    random_params,
    random_spec,
)


def test_criterion_1_cascaded_opo_reproduction():
    start = time.perf_counter()
    rep = analyze(catalog.cascaded_opos(6.0, 4.8, -4.8))
    assert rep.unique and rep.pure
    V_expect = cascaded_steady_covariance(6.0, 4.8)
    assert np.abs(rep.Vs.V - V_expect).max() < 1e-9
    E = log_negativity(rep.Vs, [0])
    assert abs(E - 1.0986) < 1e-4
    elapsed = time.perf_counter() - start
    assert elapsed < 1.0
    print(
        f"PASS criterion 1: cascaded pair pure & unique, Vs entrywise < 1e-9, "
        f"E = {E:.4f} ({elapsed:.2f} s)"
    )


def test_criterion_2_single_opo_obstruction():
    kappa = 6.0
    sigma = symplectic_form(1)
    for eps in (0.1 * kappa, -0.1 * kappa, 0.5 * kappa, -0.5 * kappa):
        sys = catalog.single_opo(kappa, eps)
        vec = build_K(sys) @ sigma @ sys.C.T
        assert np.abs(vec - np.array([[0.0], [kappa * eps]])).max() < 1e-12
        ok, _ = condition_iii(sys)
        assert not ok
    Vs = pure_Vs_formula(catalog.single_opo(kappa, 0.0))
    assert np.abs(Vs.V - 0.5 * np.eye(2)).max() < 1e-10
    print(
        "PASS criterion 2: K Sigma C^T = (0, kappa*eps) within 1e-12; "
        "vacuum covariance within 1e-10 at eps = 0"
    )


def test_criterion_3_purity_condition_equivalence_suite():
    start = time.perf_counter()
    rng = np.random.default_rng(3)
    disagreements = 0
    pure_count = 0
    for _ in range(200):
        sys = random_hurwitz_system(rng, n_max=3, m_max=3)
        A, D = drift_matrix(sys), diffusion_matrix(sys)
        Vs = CovarianceMatrix(lyapunov_solve(A, D))
        pure = is_pure(Vs)
        ok_iii, _ = condition_iii(sys)
        ok_ii, _ = condition_ii(sys, Vs)
        if not (ok_iii == pure == ok_ii):
            disagreements += 1
        if ok_iii:
            pure_count += 1
            assert np.abs(pure_Vs_formula(sys).V - Vs.V).max() < 1e-8
    # generic random systems are never pure; engineered ones exercise the
    # positive branch of the equivalence
    for _ in range(20):
        n = int(rng.integers(1, 4))
        sys = purely_dissipative(random_spec(rng, n))
        A, D = drift_matrix(sys), diffusion_matrix(sys)
        Vs = CovarianceMatrix(lyapunov_solve(A, D))
        ok_iii, _ = condition_iii(sys)
        ok_ii, _ = condition_ii(sys, Vs)
        if not (ok_iii and is_pure(Vs) and ok_ii):
            disagreements += 1
        assert np.abs(pure_Vs_formula(sys).V - Vs.V).max() < 1e-8
    elapsed = time.perf_counter() - start
    assert disagreements == 0
    assert elapsed < 30.0
    print(
        f"PASS criterion 3: 220 systems, zero disagreements between the "
        f"three conditions ({elapsed:.1f} s)"
    )


def test_criterion_4_synthesis_round_trip_suite():
    start = time.perf_counter()
    rng = np.random.default_rng(4)
    checked = 0
    while checked < 100:
        n = int(rng.integers(1, 5))
        m = int(rng.integers(1, n + 1))
        full_rank_P = bool(rng.integers(0, 2)) or m == n
        params = random_params(
            rng, n, m=n if full_rank_P else m,
            dissipative_only=full_rank_P,
        )
        spec = random_spec(rng, n)
        if not rank_condition(params.P, q_matrix(spec, params))[0]:
            continue
        rep = analyze(synthesize(spec, params))
        assert rep.unique and rep.pure
        assert np.abs(rep.Vs.V - target_covariance(spec).V).max() < 1e-8
        checked += 1
    elapsed = time.perf_counter() - start
    assert elapsed < 30.0
    print(
        f"PASS criterion 4: {checked} synthesized systems drive their "
        f"target state ({elapsed:.1f} s)"
    )


def test_criterion_5_two_mode_squeezed_constructions():
    alpha = 0.8
    spec = catalog.two_mode_squeezed(alpha)
    mu, nu = np.cosh(alpha), -np.sinh(alpha)
    P2 = np.array(
        [
            [1j * np.cosh(alpha), 1j * np.sinh(alpha)],
            [1j * np.sinh(alpha), 1j * np.cosh(alpha)],
        ]
    )
    sys2 = synthesize(
        spec,
        EngineeringParameters(P=P2, R=np.zeros((2, 2)), Gamma=np.zeros((2, 2))),
    )
    assert np.abs(sys2.C[0] - np.array([mu, nu, 1j * mu, -1j * nu])).max() < 1e-12
    assert np.abs(sys2.C[1] - np.array([nu, mu, -1j * nu, 1j * mu])).max() < 1e-12

    params1 = EngineeringParameters(
        P=P2[:, :1], R=np.diag([0.0, 1.0]), Gamma=np.zeros((2, 2))
    )
    ok, rank = rank_condition(params1.P, q_matrix(spec, params1))
    assert ok and rank == 2
    rep1 = analyze(synthesize(spec, params1))
    rep2 = analyze(sys2)
    assert rep1.pure and rep2.pure
    assert np.abs(rep1.Vs.V - rep2.Vs.V).max() < 1e-9
    assert np.abs(rep1.Vs.V - target_covariance(spec).V).max() < 1e-9
    print(
        "PASS criterion 5: two-mode squeezed channels exact; single-channel "
        "variant passes the rank condition and reaches the same covariance"
    )


def test_criterion_6_harmonic_chain_constructions():
    r = 0.5
    spec = catalog.harmonic_chain(4, r)
    pd = purely_dissipative(spec)
    expect_C = np.hstack([-spec.X - 1j * np.exp(-2 * r) * np.eye(4), np.eye(4)])
    assert np.abs(pd.C - expect_C).max() < 1e-12
    sizes = sorted(len(s) for s in locality_profile(pd).channel_supports)
    assert sizes == [2, 2, 3, 3]

    Xinv = np.linalg.inv(spec.X)
    params = EngineeringParameters(
        P=np.array([[1.0], [0.0], [0.0], [0.0]], dtype=complex),
        R=Xinv,
        Gamma=np.zeros((4, 4)),
    )
    ok, rank = rank_condition(params.P, q_matrix(spec, params))
    assert ok and rank == 4
    sys1 = synthesize(spec, params)
    expect_G = np.block(
        [[spec.X + np.exp(-4 * r) * Xinv, -np.eye(4)], [-np.eye(4), Xinv]]
    )
    assert np.abs(sys1.G - expect_G).max() < 1e-12
    prof = locality_profile(sys1)
    assert prof.hamiltonian_edges == frozenset({(0, 1), (1, 2), (2, 3), (0, 3)})
    rep = analyze(sys1)
    assert rep.unique and rep.pure
    assert np.abs(rep.Vs.V - target_covariance(spec).V).max() < 1e-8
    print(
        "PASS criterion 6: chain channels and supports {2,3,3,2}; "
        "single-channel ring Hamiltonian drives the cluster target"
    )


def test_criterion_7_convergence_dynamics():
    start = time.perf_counter()
    sys = catalog.cascaded_opos(6.0, 4.8, -4.8)
    A = drift_matrix(sys)
    Vs = lyapunov_solve(A, diffusion_matrix(sys))
    rate = 0.6
    t_final, dt = 40.0 / rate, 0.005

    trajs = []
    for scale in (0.5, 1.0, 2.0):
        state = GaussianState(
            mean=np.zeros(4), cov=CovarianceMatrix(scale * np.eye(4))
        )
        traj = evolve(sys, state, t_final, dt)
        trajs.append(traj)
        assert traj.fidelity[-1] == pytest.approx(1.0, abs=1e-4)
        assert traj.purity[-1] == pytest.approx(1.0, abs=1e-4)
        # independent closed-form propagator oracle at every sampled time
        V0 = scale * np.eye(4)
        for t, V in zip(traj.times, traj.covs):
            E = matrix_exp(A, t)
            assert np.abs(E @ (V0 - Vs) @ E.T + Vs - V).max() < 1e-5

    f_half, f_one, f_two = (t.fidelity for t in trajs)
    p_half, p_one, p_two = (t.purity for t in trajs)
    assert np.all(f_half >= f_one - 1e-12) and np.all(f_one >= f_two - 1e-12)
    assert np.all(p_half >= p_one - 1e-12) and np.all(p_one >= p_two - 1e-12)
    elapsed = time.perf_counter() - start
    assert elapsed < 5.0
    print(
        f"PASS criterion 7: ordered convergence from I/2, I, 2I; RK4 within "
        f"1e-5 of the closed form ({elapsed:.1f} s)"
    )


def test_criterion_8_invariant_suite():
    rng = np.random.default_rng(8)
    pure_covs = []
    systems = []

    # catalog targets
    for builder in (
        lambda: catalog.harmonic_chain(4, 0.5),
        lambda: catalog.two_mode_squeezed(0.7),
        lambda: catalog.h_graph(np.array([[0.0, 1.0], [1.0, 0.0]]), 0.3),
        lambda: catalog.cv_cluster(np.ones((3, 3)) - np.eye(3), 1.0),
    ):
        spec = builder()
        pure_covs.append(target_covariance(spec))
        systems.append(purely_dissipative(spec))

    # analyzer outputs
    systems.append(catalog.cascaded_opos(6.0, 4.8, -4.8))
    systems.append(catalog.single_opo(6.0, 0.0))
    for _ in range(20):
        n = int(rng.integers(1, 4))
        spec = random_spec(rng, n)
        pure_covs.append(target_covariance(spec))
        systems.append(synthesize(spec, random_params(rng, n)))

    for sys in systems:
        rep = analyze(sys)
        assert rep.unique
        if rep.pure:
            pure_covs.append(rep.Vs)
            if rep.Vs_formula is not None:
                pure_covs.append(rep.Vs_formula)
        ok_iii, _ = condition_iii(sys)
        if ok_iii:
            K = build_K(sys)
            S = symplectic_form(sys.n)
            assert np.abs(K @ S @ K.T).max() < 1e-9

    assert len(pure_covs) >= 30
    for cov in pure_covs:
        S = symplectic_form(cov.n)
        resid = S @ cov.V @ S @ cov.V + 0.25 * np.eye(2 * cov.n)
        assert np.linalg.norm(resid) < 1e-9
        assert np.min(np.linalg.eigvalsh(cov.V + 0.5j * S)) >= -1e-9
    print(
        f"PASS criterion 8: {len(pure_covs)} pure covariances satisfy the "
        f"purity and uncertainty identities; K Sigma K^T = 0 where required"
    )
