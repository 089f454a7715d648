import math

import numpy as np
import pytest

from numrad.matcore import DimensionError, operator_norm, rank_one
from numrad.numrange import numerical_radius
from numrad.oracle import brute_pair_max
from numrad.parallel import (
    ProbeVerdict, Verdict, block_operator, compression_hypothesis, linearly_dependent,
    normal_bridge, norm_parallel, omega_parallel, pair_transform, rank_one_self_parallel,
    scalar_identity_probe, witness_check,
)

from conftest import I2, R, S, crandn, random_normal

GAP_SR = 1.5 - math.sqrt(5) / 2


def phase_dist(a, b):
    return abs((a - b + math.pi) % (2 * math.pi) - math.pi)


def lambda_sweep(A, B, m=720):
    # brute force over the unit circle with the spectral radius evaluator
    return max(numerical_radius(A + np.exp(2j * math.pi * k / m) * B).omega for k in range(m))


class TestOmegaParallelExamples:
    def test_s_identity(self):
        d = omega_parallel(S, I2)
        assert d.value is Verdict.PARALLEL
        assert d.certificate.achieved == pytest.approx(2.0, abs=1e-12)
        assert d.certificate.lambda_star == pytest.approx(1.0)

    def test_identity_nilpotent(self):
        d = omega_parallel(I2, R)
        assert d.parallel
        assert d.certificate.achieved == pytest.approx(1.5, abs=1e-12)
        assert d.certificate.lambda_star == pytest.approx(1.0)

    def test_s_nilpotent_not_parallel(self):
        d = omega_parallel(S, R)
        c = d.certificate
        assert d.value is Verdict.NOT_PARALLEL
        assert c.achieved == pytest.approx(math.sqrt(5) / 2, abs=1e-10)
        assert c.gap == pytest.approx(GAP_SR, abs=1e-10)
        # every lam gives the same value sqrt(4 + |lam|^2) / 2
        assert lambda_sweep(S, R, 64) == pytest.approx(math.sqrt(5) / 2, abs=1e-10)

    def test_dependent_pair(self, rng):
        A = crandn(rng, 3, 3)
        d = omega_parallel(A, 3 * A)
        assert d.parallel and d.certificate.phase == 0.0

    def test_negative_multiple(self, rng):
        A = crandn(rng, 3, 3)
        d = omega_parallel(A, -2 * A)
        assert d.parallel
        assert phase_dist(d.certificate.phase, math.pi) <= 1e-6

    def test_identity_and_adjoint(self, rng):
        for _ in range(5):
            A = crandn(rng, 3, 3)
            alpha = complex(*rng.standard_normal(2))
            assert omega_parallel(A, alpha * np.eye(3)).parallel
            assert omega_parallel(A, A.conj().T).parallel

    def test_zero_operand(self, rng):
        A = crandn(rng, 2, 2)
        for d in (omega_parallel(A, np.zeros((2, 2))), omega_parallel(np.zeros((2, 2)), A)):
            assert d.parallel and d.certificate.phase == 0.0 and d.certificate.gap == 0.0
        assert omega_parallel(np.zeros((2, 2)), np.zeros((2, 2))).parallel

    def test_mismatch(self):
        with pytest.raises(DimensionError):
            omega_parallel(I2, np.eye(3))

    def test_bad_tol(self):
        with pytest.raises(ValueError):
            omega_parallel(S, I2, decide_tol=0)

    def test_achieved_matches_sweep(self, rng):
        for _ in range(4):
            A, B = crandn(rng, 2, 2), crandn(rng, 2, 2)
            c = omega_parallel(A, B).certificate
            sweep = lambda_sweep(A, B, 360)
            assert c.achieved >= sweep - 1e-12
            assert c.achieved <= sweep + 1e-3


class TestCertificateInvariants:
    def test_bounds_and_witnesses(self):
        rng = np.random.default_rng(8)
        for _ in range(15):
            n = rng.integers(2, 5)
            A, B = crandn(rng, n, n), crandn(rng, n, n)
            for pair in ((A, B), (A, B + A), (A, np.eye(n)), (A, A.conj().T)):
                c = omega_parallel(*pair).certificate
                assert 0 <= c.achieved <= c.target + 1e-9
                assert (c.decision is Verdict.PARALLEL) == (c.gap <= c.decide_tol)
                if c.decision is Verdict.PARALLEL:
                    res = c.witness_residuals
                    assert res.a_residual <= 1e-6 and res.b_residual <= 1e-6
                    assert res.product_residual <= 1e-6 * c.target


class TestWitnessCheck:
    def test_parallel_witness(self):
        r = witness_check(S, I2, [1, 0])
        assert r.ok and r.product_residual == pytest.approx(0.0)

    def test_zero_factor(self):
        r = witness_check(R, I2, [1, 0])
        assert not r.ok and r.a_residual == pytest.approx(0.5)

    def test_no_witness_for_s_r(self):
        for x in np.vstack([np.eye(2), crandn(np.random.default_rng(1), 50, 2)]):
            x = x / np.linalg.norm(x)
            assert not witness_check(S, R, x).ok

    def test_non_unit(self):
        with pytest.raises(ValueError):
            witness_check(S, I2, [1, 1])


class TestNormParallel:
    def test_reflexive(self, rng):
        A = crandn(rng, 3, 3)
        d = norm_parallel(A, A)
        assert d.parallel and d.certificate.phase == pytest.approx(0.0, abs=1e-9)
        assert d.certificate.achieved == pytest.approx(2 * operator_norm(A)[0])

    def test_nilpotent_vs_projection(self):
        # ||[[lam, 1], [0, 0]]|| = sqrt(2) for every unimodular lam
        d = norm_parallel(R, np.diag([1, 0]))
        assert d.value is Verdict.NOT_PARALLEL
        assert d.certificate.achieved == pytest.approx(math.sqrt(2), abs=1e-12)

    def test_diagonal(self):
        d = norm_parallel(np.diag([1, 0.5]), I2)
        assert d.parallel and d.certificate.achieved == pytest.approx(2.0)

    def test_eq_witness_on_parallel(self, rng):
        A = crandn(rng, 3, 3)
        d = norm_parallel(A, 2.5 * np.exp(0.7j) * A)
        res = d.certificate.witness_residuals
        assert d.parallel and res.ok and res.product_residual <= 1e-6
        assert phase_dist(d.certificate.phase, -0.7) <= 1e-6


class TestNormalBridge:
    def test_hermitian_identity(self):
        b = normal_bridge(S, I2)
        assert b.is_applicable and b.omega_decision.parallel and b.norm_decision.parallel

    def test_non_normal(self):
        b = normal_bridge(R, I2)
        assert not b.is_applicable and b.omega_decision is None

    def test_reflexive(self):
        D = np.diag([1j, 1])
        b = normal_bridge(D, D)
        assert b.is_applicable and b.omega_decision.parallel and b.norm_decision.parallel

    def test_implication(self):
        rng = np.random.default_rng(12)
        for _ in range(10):
            n = rng.integers(2, 5)
            N = random_normal(rng, n)
            for M in (random_normal(rng, n), N.conj().T, 2 * N):
                b = normal_bridge(N, M)
                if b.omega_decision.parallel:
                    assert b.norm_decision.parallel


class TestBlockOperator:
    def test_scalar(self):
        T = block_operator([[1]], [[1]], 0.0)
        np.testing.assert_array_equal(T, [[0, 1], [1, 0]])
        assert numerical_radius(T).omega == pytest.approx(1.0)

    def test_identities(self):
        T = block_operator(I2, I2, 0.0)
        assert T.shape == (4, 4)
        assert numerical_radius(T).omega == pytest.approx(1.0)

    def test_nilpotent(self):
        assert numerical_radius(block_operator(R, R, 0.0)).omega == pytest.approx(1.0, abs=1e-10)

    def test_layout(self, rng):
        A, B = crandn(rng, 2, 2), crandn(rng, 2, 2)
        T = block_operator(A, B, 0.3)
        np.testing.assert_allclose(T[:2, 2:], np.exp(0.3j) * A)
        np.testing.assert_allclose(T[2:, :2], np.exp(-0.3j) * B.conj().T)
        assert not np.any(T[:2, :2]) and not np.any(T[2:, 2:])

    def test_remark(self, rng):
        for _ in range(5):
            A = crandn(rng, 3, 3)
            B = rng.uniform(0.2, 3) * np.exp(1j * rng.uniform(0, 6)) * A
            d = norm_parallel(A, B)
            assert d.parallel
            theta = d.certificate.phase / 2
            half = 0.5 * (operator_norm(A)[0] + operator_norm(B)[0])
            assert abs(numerical_radius(block_operator(A, B, theta)).omega - half) <= 1e-8


class TestPairTransform:
    def test_adjoint(self):
        A, B = pair_transform(S, I2, "adjoint")
        np.testing.assert_array_equal(A, S)
        np.testing.assert_array_equal(B, I2)

    def test_scalings(self, rng):
        A, B = crandn(rng, 2, 2), crandn(rng, 2, 2)
        gA, gB = pair_transform(A, B, "scale_gamma", gamma=2j)
        np.testing.assert_array_equal(gA, 2j * A)
        np.testing.assert_array_equal(gB, 2j * B)
        rA, rB = pair_transform(A, B, "scale_real", alpha=2, beta=-3)
        np.testing.assert_array_equal(rA, 2 * A)
        np.testing.assert_array_equal(rB, -3 * B)

    @pytest.mark.parametrize("kwargs", [
        {"mode": "scale_gamma", "gamma": 0},
        {"mode": "scale_real", "alpha": 0, "beta": 1},
        {"mode": "scale_real", "alpha": 1j, "beta": 1},
        {"mode": "rotate"},
    ])
    def test_errors(self, kwargs):
        with pytest.raises(ValueError):
            pair_transform(S, I2, **kwargs)


@pytest.fixture(scope="module")
def pairs():
    rng = np.random.default_rng(21)
    out = []
    for _ in range(4):
        A = crandn(rng, 3, 3)
        out += [(A, crandn(rng, 3, 3)), (A, complex(*rng.standard_normal(2)) * np.eye(3)),
                (A, A.conj().T)]
    return out


class TestPropositionInvariances:
    def test_symmetry(self, pairs):
        for A, B in pairs:
            d1, d2 = omega_parallel(A, B), omega_parallel(B, A)
            assert d1.value is d2.value
            assert abs(d1.certificate.achieved - d2.certificate.achieved) <= 1e-9

    def test_reflexive(self, pairs):
        for A, _ in pairs[::3]:
            d = omega_parallel(A, A)
            assert d.parallel and d.certificate.phase == 0.0

    def test_adjoint_pair(self, pairs):
        for A, B in pairs:
            d = omega_parallel(A, B)
            lam = d.certificate.lambda_star
            As, Bs = pair_transform(A, B, "adjoint")
            assert omega_parallel(As, Bs).value is d.value
            assert abs(numerical_radius(As + np.conj(lam) * Bs).omega - d.certificate.achieved) <= 1e-9

    def test_scalings(self, pairs):
        for A, B in pairs:
            d = omega_parallel(A, B)
            g = 1.7 * np.exp(0.4j)
            dg = omega_parallel(*pair_transform(A, B, "scale_gamma", gamma=g))
            assert dg.value is d.value
            assert abs(dg.certificate.achieved - abs(g) * d.certificate.achieved) <= 1e-9
            dr = omega_parallel(*pair_transform(A, B, "scale_real", alpha=0.6, beta=2.5))
            assert dr.value is d.value
            if d.parallel:
                assert phase_dist(dg.certificate.phase, d.certificate.phase) <= 1e-6
                assert phase_dist(dr.certificate.phase, d.certificate.phase) <= 1e-6


def test_nontransitivity():
    assert omega_parallel(S, I2).parallel
    assert omega_parallel(I2, R).parallel
    assert not omega_parallel(S, R).parallel


class TestRankOneSelfParallel:
    def test_collinear(self):
        e1 = np.array([1, 0])
        d, dep = rank_one_self_parallel(e1, 3 * e1)
        assert d.parallel and dep

    def test_orthogonal(self):
        e1, e2 = np.eye(2)
        d, dep = rank_one_self_parallel(e1, e2)
        assert not d.parallel and not dep
        # w(e1 e1* + lam e2 e2*) = max(1, |lam|) = 1
        assert d.certificate.achieved == pytest.approx(1.0)
        assert lambda_sweep(rank_one(e1, e1), rank_one(e2, e2), 36) == pytest.approx(1.0)

    def test_oblique(self):
        e1 = np.array([1, 0])
        u = np.array([1, 1]) / math.sqrt(2)
        d, dep = rank_one_self_parallel(e1, u)
        assert not d.parallel and not dep
        sweep = lambda_sweep(rank_one(e1, e1), rank_one(u, u), 72)
        assert d.certificate.achieved == pytest.approx(sweep, abs=1e-9)
        assert d.certificate.achieved == pytest.approx(1 + 1 / math.sqrt(2), abs=1e-10)

    def test_gap_is_smallest_gram_eigenvalue(self, rng):
        for _ in range(5):
            x, y = crandn(rng, 3), crandn(rng, 3)
            d, _ = rank_one_self_parallel(x, y)
            s = np.linalg.svd(np.column_stack([x, y]), compute_uv=False)
            assert d.certificate.gap == pytest.approx(s[-1] ** 2, abs=1e-9)

    def test_zero_vector(self):
        with pytest.raises(ValueError):
            rank_one_self_parallel([0, 0], [1, 0])

    def test_dependence_helper(self):
        assert linearly_dependent([1, 1j], [2j, -2])
        assert not linearly_dependent([1, 0], [1, 1e-6])


class TestScalarIdentityProbe:
    def test_scalar(self):
        p = scalar_identity_probe(2 * np.eye(3), 50, 0)
        assert p.verdict is ProbeVerdict.SCALAR and p.counterexample is None

    def test_non_scalar(self):
        T = np.diag([1.0, -1.0, 0.0])
        p = scalar_identity_probe(T, 50, 0)
        assert p.verdict is ProbeVerdict.NON_SCALAR
        x, y, d = p.counterexample
        assert abs(np.vdot(x, y)) <= 1e-12
        assert d.certificate.gap > d.certificate.decide_tol
        # the oracle agrees that no witness exists for this S
        S_ = rank_one(x, y)
        prod = numerical_radius(T).omega * numerical_radius(S_).omega
        assert brute_pair_max(T, S_, 3000, 1).best_value < prod - 1e-3

    def test_zero(self):
        assert scalar_identity_probe(np.zeros((3, 3)), 5, 0).verdict is ProbeVerdict.SCALAR

    def test_inconclusive(self):
        # too few trials can miss; a nearly scalar matrix stays parallel to a
        # sampled S only if the gap is tiny, so fake that with a loose tolerance
        T = np.diag([1.0, 1.0, 1.0 + 1e-6])
        p = scalar_identity_probe(T, 3, 0, decide_tol=1e-3)
        assert p.verdict is ProbeVerdict.INCONCLUSIVE

    def test_small_dimension(self):
        with pytest.raises(DimensionError):
            scalar_identity_probe(I2, 5, 0)

    def test_compression_hypothesis(self, rng):
        assert compression_hypothesis(3 * np.eye(4))
        assert not compression_hypothesis(np.diag([1.0, 2.0, 3.0]))


def test_oracle_equivalence_small_pairs():
    rng = np.random.default_rng(31)
    pairs = [(S, I2), (I2, R), (S, R)]
    for _ in range(6):
        A = crandn(rng, 2, 2)
        pairs += [(A, crandn(rng, 2, 2)), (A, A.conj().T)]
    for A, B in pairs:
        d = omega_parallel(A, B)
        c = d.certificate
        best = brute_pair_max(A, B, 3000, 42).best_value
        assert d.parallel == (best >= c.norm_a * c.norm_b - 1e-3)
