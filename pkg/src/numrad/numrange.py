"""Numerical range sampling and the numerical radius.

The numerical radius is the maximum over directions of the support function
of the numerical range, ``w(A) = max_t lambda_max(H(t))`` with
``H(t) = (e^{-it} A + e^{it} A^*) / 2``. The inner maximization is an exact
Hermitian eigenproblem, so only a 1-d periodic search remains.
"""

from dataclasses import dataclass

import numpy as np

from .matcore import (
    ConvergenceError, as_matrix, as_vector, hermitian_components, hermitian_part,
    inner, max_eig_hermitian, quadratic_form, top_eigvals, DimensionError,
)
from .search import TWO_PI, grid, periodic_max

N_GRID = 512
N_BRACKETS = 5
THETA_TOL = 1e-12
RADIUS_TOL = 1e-10


@dataclass(frozen=True)
class BoundarySample:
    theta: float
    point: complex
    support_value: float


@dataclass(frozen=True)
class RangeBoundary:
    samples: tuple

    @property
    def thetas(self):
        return np.array([s.theta for s in self.samples])

    @property
    def points(self):
        return np.array([s.point for s in self.samples])

    @property
    def support(self):
        return np.array([s.support_value for s in self.samples])


@dataclass(frozen=True)
class RadiusResult:
    omega: float
    theta_star: float
    witness: np.ndarray
    witness_value: complex
    residual: float


def support_function(A):
    """Vectorized ``t -> lambda_max(H(t))`` for a fixed matrix ``A``."""
    K1, K2 = hermitian_components(as_matrix(A))

    def g(t):
        t = np.asarray(t, dtype=float)
        H = np.cos(t)[..., None, None] * K1 + np.sin(t)[..., None, None] * K2
        return top_eigvals(H)
    return g


def range_boundary(A, m):
    """Sample ``m`` boundary points of the numerical range of ``A``.

    For each ``theta_k = 2 pi k / m`` the top eigenvector of ``H(theta_k)``
    is mapped to ``<A x, x>``. Their convex hull is an inner approximation of
    the numerical range; the support values give the outer one.
    """
    A = as_matrix(A)
    if int(m) != m or m < 4:
        raise ValueError(f"sample count must be an integer >= 4, got {m!r}")
    thetas = grid(int(m))
    K1, K2 = hermitian_components(A)
    H = np.cos(thetas)[:, None, None] * K1 + np.sin(thetas)[:, None, None] * K2
    try:
        w, V = np.linalg.eigh(H)
    except np.linalg.LinAlgError as exc:
        raise ConvergenceError(f"eigensolver failed: {exc}", iterations=1) from exc
    X = V[:, :, -1]
    pts = np.einsum("ki,ij,kj->k", np.conj(X), A, X)
    return RangeBoundary(tuple(
        BoundarySample(float(t), complex(p), float(s))
        for t, p, s in zip(thetas, pts, w[:, -1])))


def numerical_radius(A, tol=RADIUS_TOL):
    """Numerical radius of ``A`` with a maximizing unit vector.

    A 512-point angle grid locates the candidate maxima of the support
    function, the five best are refined by golden-section search down to a
    bracket width of 1e-12, and the witness is the top eigenvector at the
    winning angle. Raises :class:`ConvergenceError` if the witness misses the
    returned value by more than ``tol``.
    """
    if not tol > 0:
        raise ValueError("tol must be positive")
    A = as_matrix(A)
    n = A.shape[0]
    if not np.any(A):
        e1 = np.zeros(n, dtype=complex)
        e1[0] = 1
        return RadiusResult(0.0, 0.0, e1, 0j, 0.0)

    theta, _, _ = periodic_max(support_function(A), N_GRID, THETA_TOL, N_BRACKETS)
    eig = max_eig_hermitian(hermitian_part(A, theta))
    w = eig.vector
    val = quadratic_form(A, w)
    omega = max(eig.value, 0.0)
    residual = abs(abs(val) - omega)
    if residual > tol:
        raise ConvergenceError(
            f"radius witness residual {residual:.3g} exceeds tol {tol:g}",
            iterations=1,
            diagnostics={"omega": omega, "theta": theta, "witness_value": val})
    return RadiusResult(float(omega), float(theta % TWO_PI), w, val, float(residual))


def rank_one_radius(x, y):
    """Closed form ``(|<x, y>| + ||x|| ||y||) / 2`` for the rank-one map ``x (x) y``."""
    x = as_vector(x, "x")
    y = as_vector(y, "y")
    if x.shape != y.shape:
        raise DimensionError(f"dimension mismatch: {x.shape} vs {y.shape}")
    return 0.5 * (abs(inner(x, y)) + float(np.linalg.norm(x) * np.linalg.norm(y)))
