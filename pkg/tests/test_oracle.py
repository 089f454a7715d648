import math

import numpy as np
import pytest

from numrad.matcore import operator_norm
from numrad.numrange import numerical_radius
from numrad.oracle import (
    brute_operator_norm, brute_pair_max, brute_radius, sphere_sample,
)

from conftest import I2, R, S, crandn


class TestSphereSample:
    def test_dimension_one_phases(self):
        X = sphere_sample(1, 20, 3)
        assert X.shape == (20, 1)
        np.testing.assert_allclose(np.abs(X[:, 0]), 1, atol=1e-15)

    def test_unit_norms(self):
        X = sphere_sample(2, 1000, 42)
        assert X.shape == (1000, 2)
        assert np.max(np.abs(np.linalg.norm(X, axis=1) - 1)) <= 1e-12

    def test_deterministic(self):
        assert np.array_equal(sphere_sample(3, 10, 7), sphere_sample(3, 10, 7))
        assert not np.array_equal(sphere_sample(3, 10, 7), sphere_sample(3, 10, 8))

    def test_documented_generator(self):
        z = np.random.default_rng(5).standard_normal((4, 6))
        X = z[:, :3] + 1j * z[:, 3:]
        np.testing.assert_array_equal(sphere_sample(3, 4, 5),
                                      X / np.linalg.norm(X, axis=1, keepdims=True))

    @pytest.mark.parametrize("n, count", [(0, 5), (2, 0)])
    def test_rejects_empty(self, n, count):
        with pytest.raises(ValueError):
            sphere_sample(n, count, 1)


class TestBruteRadius:
    def test_identity(self):
        assert brute_radius(I2, 100, 1).best_value == pytest.approx(1.0, abs=1e-12)

    def test_nilpotent(self):
        assert brute_radius(R, 5000, 42).best_value == pytest.approx(0.5, abs=1e-4)

    def test_hermitian(self):
        assert brute_radius(S, 5000, 42).best_value == pytest.approx(1.0, abs=1e-6)

    def test_report_reevaluates(self):
        A = np.array([[1, 2j], [0.5, -1]])
        rep = brute_radius(A, 500, 3)
        x = rep.best_vector
        assert abs(np.linalg.norm(x) - 1) <= 1e-12
        assert rep.best_value == abs(np.vdot(x, A @ x))
        assert rep.samples_used == 500 and rep.seed == 3 and rep.refinement_steps > 0

    def test_reproducible(self):
        A = np.array([[1, 2j], [0.5, -1]])
        r1, r2 = brute_radius(A, 500, 3), brute_radius(A, 500, 3)
        assert r1.best_value == r2.best_value and np.array_equal(r1.best_vector, r2.best_vector)
        assert r1.refinement_steps == r2.refinement_steps

    def test_inner_approximation(self, rng):
        for n in (2, 3, 4):
            for _ in range(4):
                A = crandn(rng, n, n)
                assert brute_radius(A, 1000, 1).best_value <= numerical_radius(A).omega + 1e-9
                assert brute_operator_norm(A, 1000, 1).best_value <= operator_norm(A)[0] + 1e-9


class TestBrutePairMax:
    def test_parallel_pair(self):
        assert brute_pair_max(S, I2, 5000, 42).best_value == pytest.approx(1.0, abs=1e-6)

    def test_nonparallel_pair(self):
        # w(S) w(R) = 1/2 but |<Sx,x><Rx,x>| never exceeds 1/4
        best = brute_pair_max(S, R, 5000, 42).best_value
        assert best < 0.5 - 0.01
        assert best == pytest.approx(0.25, abs=1e-6)

    def test_reflexive(self, rng):
        A = crandn(rng, 3, 3)
        w = numerical_radius(A).omega
        assert brute_pair_max(A, A, 5000, 42).best_value == pytest.approx(w * w, abs=1e-3)

    def test_mismatch(self):
        with pytest.raises(ValueError):
            brute_pair_max(I2, np.eye(3))


class TestBruteOperatorNorm:
    def test_identity(self):
        assert brute_operator_norm(np.eye(3), 100, 0).best_value == pytest.approx(1.0)

    def test_jordan(self):
        assert brute_operator_norm([[1, 1], [0, 1]], 5000, 42).best_value == pytest.approx(
            (1 + math.sqrt(5)) / 2, abs=1e-4)

    def test_zero(self):
        assert brute_operator_norm(np.zeros((2, 2)), 100, 0).best_value == 0.0
