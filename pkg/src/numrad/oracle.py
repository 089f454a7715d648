"""Brute-force maximizers over the complex unit sphere.

These are deliberately naive and share nothing with the spectral code paths:
sample many unit vectors, keep the best, then polish it by derivative-free
coordinate hill climbing. Results are inner approximations of the true
maxima and serve as an independent check on them.

Random vectors come from :func:`numpy.random.default_rng` (PCG64). For a
vector in C^n, ``2n`` standard normals ``z`` are drawn and the vector is
``(z[:n] + 1j z[n:]) / norm``; vectors are drawn in one ``(count, 2n)`` block,
so the output for a given ``(n, count, seed)`` is fixed.
"""

from dataclasses import dataclass

import numpy as np

from .matcore import as_matrix, DimensionError

STEP_START = 0.1
STEP_END = 1e-7
MAX_PASSES = 10_000


@dataclass(frozen=True)
class OracleReport:
    best_value: float
    best_vector: np.ndarray
    samples_used: int
    seed: int
    refinement_steps: int


def sphere_sample(n, count, seed):
    """``count`` seeded pseudo-random unit vectors in C^n, as rows of an array."""
    if n < 1 or count < 1:
        raise ValueError("n and count must be >= 1")
    rng = np.random.default_rng(seed)
    z = rng.standard_normal((count, 2 * n))
    X = z[:, :n] + 1j * z[:, n:]
    return X / np.linalg.norm(X, axis=1, keepdims=True)


def _maximize(objective, n, count, seed):
    """Sample, take the argmax (lowest index on ties), then hill-climb.

    ``objective`` takes a ``(k, n)`` array of unit rows and returns ``k`` values.
    """
    X = sphere_sample(n, count, seed)
    vals = objective(X)
    k = int(np.argmax(vals))
    best = X[k]
    best_val = float(vals[k])

    coords = np.concatenate([best.real, best.imag])
    moves = 0
    step = STEP_START
    while step >= STEP_END:
        for _ in range(MAX_PASSES):
            improved = False
            for j in range(2 * n):
                for sign in (1.0, -1.0):
                    trial = coords.copy()
                    trial[j] += sign * step
                    trial /= np.linalg.norm(trial)
                    v = trial[:n] + 1j * trial[n:]
                    f = float(objective(v[None, :])[0])
                    if f > best_val:
                        coords, best_val, best = trial, f, v
                        moves += 1
                        improved = True
            if not improved:
                break
        step /= 2
    return OracleReport(best_val, best, count, seed, moves)


def _qform(A, X):
    return np.einsum("ki,ij,kj->k", np.conj(X), A, X)


def brute_radius(A, count=5000, seed=42):
    """Sampled maximum of ``|<Ax, x>|``; never exceeds the numerical radius."""
    A = as_matrix(A)
    return _maximize(lambda X: np.abs(_qform(A, X)), A.shape[0], count, seed)


def brute_pair_max(A, B, count=5000, seed=42):
    """Sampled maximum of ``|<Ax, x> <Bx, x>|``.

    This reaches ``w(A) w(B)`` exactly when the pair is numerical-radius parallel.
    """
    A = as_matrix(A, "A")
    B = as_matrix(B, "B")
    if A.shape != B.shape:
        raise DimensionError(f"dimension mismatch: {A.shape} vs {B.shape}")
    return _maximize(lambda X: np.abs(_qform(A, X) * _qform(B, X)), A.shape[0], count, seed)


def brute_operator_norm(A, count=5000, seed=42):
    A = as_matrix(A)
    return _maximize(lambda X: np.linalg.norm(X @ A.T, axis=1), A.shape[0], count, seed)
