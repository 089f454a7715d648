"""Dense complex matrix helpers and the spectral kernel.

Matrices are plain ``numpy`` arrays of dtype ``complex128``; the helpers here
validate them, and every other module goes through :func:`max_eig_hermitian`
(or its batched sibling) for eigenvalue work.

Inner products are conjugate-linear in the second slot, so that
``<A x, x> = x^* A x``.
"""

from dataclasses import dataclass

import numpy as np

__all__ = [
    "EIG_TOL", "UNIT_TOL", "HERMITIAN_TOL",
    "NumradError", "DimensionError", "NotHermitianError", "ConvergenceError",
    "EigResult",
    "as_matrix", "as_vector", "require_unit", "canonical_phase",
    "inner", "quadratic_form", "hermitian_part", "hermitian_components",
    "max_eig_hermitian", "top_eigvals", "operator_norm", "rank_one",
    "is_normal", "adjoint",
]

EIG_TOL = 1e-10
UNIT_TOL = 1e-12
HERMITIAN_TOL = 1e-12


class NumradError(Exception):
    """Base class for errors raised by this package."""


class DimensionError(NumradError, ValueError):
    """Raised when operands have incompatible or invalid shapes."""


class NotHermitianError(NumradError, ValueError):
    """Raised when a routine that needs a Hermitian matrix gets something else."""


class ConvergenceError(NumradError, ArithmeticError):
    """Raised when an iterative method fails to meet its contract.

    ``iterations`` records how much work was done before giving up and
    ``diagnostics`` carries whatever else the caller might want to inspect.
    """

    def __init__(self, msg, iterations=0, diagnostics=None):
        super().__init__(msg)
        self.iterations = iterations
        self.diagnostics = diagnostics or {}


@dataclass(frozen=True)
class EigResult:
    value: float
    vector: np.ndarray
    residual: float


def as_matrix(A, name="matrix"):
    """Return ``A`` as a finite square ``complex128`` array, or raise."""
    M = np.array(A, dtype=complex)
    if M.ndim != 2 or M.shape[0] != M.shape[1] or M.shape[0] < 1:
        raise DimensionError(f"{name} must be a non-empty square matrix, got shape {M.shape}")
    if not np.all(np.isfinite(M)):
        raise ValueError(f"{name} has non-finite entries")
    return M


def as_vector(x, name="vector"):
    v = np.array(x, dtype=complex)
    if v.ndim != 1 or v.shape[0] < 1:
        raise DimensionError(f"{name} must be a non-empty 1-d array, got shape {v.shape}")
    if not np.all(np.isfinite(v)):
        raise ValueError(f"{name} has non-finite components")
    return v


def require_unit(x, name="vector"):
    v = as_vector(x, name)
    if abs(np.linalg.norm(v) - 1.0) > UNIT_TOL:
        raise ValueError(f"{name} is not a unit vector (norm {np.linalg.norm(v)!r})")
    return v


def _check_dims(A, x):
    if A.shape[1] != x.shape[0]:
        raise DimensionError(f"dimension mismatch: matrix {A.shape} vs vector {x.shape}")


def canonical_phase(x):
    """Rotate ``x`` so that its first largest-modulus component is real and positive.

    Eigenvectors are only defined up to a unimodular factor; fixing it keeps
    printed witnesses reproducible.
    """
    x = np.asarray(x, dtype=complex)
    mags = np.abs(x)
    k = int(np.argmax(mags >= mags.max() * (1 - 1e-12)))
    if mags[k] == 0:
        return x.copy()
    y = x * (np.conj(x[k]) / mags[k])
    y[k] = mags[k]
    return y


def inner(x, y):
    """``<x, y>``, linear in ``x`` and conjugate-linear in ``y``."""
    return complex(np.vdot(y, x))


def quadratic_form(A, x):
    """Return ``<A x, x> = x^* A x``."""
    A = as_matrix(A)
    x = as_vector(x)
    _check_dims(A, x)
    return complex(np.vdot(x, A @ x))


def adjoint(A):
    return np.conj(np.asarray(A)).T


def hermitian_components(A):
    """Split ``A`` as ``K1 + i K2`` with ``K1``, ``K2`` Hermitian.

    ``hermitian_part(A, t) == cos(t) K1 + sin(t) K2``, which is what the
    batched angle sweeps use.
    """
    Ah = adjoint(A)
    return (A + Ah) / 2, (A - Ah) / 2j


def _symmetrize(H):
    return (H + np.conj(np.swapaxes(H, -1, -2))) / 2


def hermitian_part(A, theta):
    """Return ``(e^{-i theta} A + e^{i theta} A^*) / 2``, Hermitian by construction."""
    A = as_matrix(A)
    if not np.isfinite(theta):
        raise ValueError("theta must be finite")
    H = (np.exp(-1j * theta) * A + np.exp(1j * theta) * adjoint(A)) / 2
    return _symmetrize(H)


def max_eig_hermitian(H):
    """Largest eigenvalue of a Hermitian matrix with a unit eigenvector.

    Backed by LAPACK ``zheevd`` through :func:`numpy.linalg.eigh`; the
    contract is the residual bound ``||Hx - lambda x|| <= EIG_TOL``, checked on
    every call. When the top eigenvalue is multiple, the vector is whichever
    one LAPACK returns for this input, phase-normalized.
    """
    H = as_matrix(H, "H")
    asym = np.max(np.abs(H - adjoint(H)))
    if asym > HERMITIAN_TOL:
        raise NotHermitianError(f"matrix is not Hermitian (max |H - H*| = {asym:.3g})")
    H = _symmetrize(H)
    try:
        w, V = np.linalg.eigh(H)
    except np.linalg.LinAlgError as exc:
        raise ConvergenceError(f"eigensolver failed: {exc}", iterations=1) from exc
    value = float(w[-1])
    x = canonical_phase(V[:, -1])
    x /= np.linalg.norm(x)
    residual = float(np.linalg.norm(H @ x - value * x))
    if residual > EIG_TOL:
        raise ConvergenceError(
            f"eigen residual {residual:.3g} exceeds {EIG_TOL:g}", iterations=1,
            diagnostics={"value": value, "residual": residual})
    return EigResult(value, x, residual)


def top_eigvals(H):
    """Largest eigenvalue of each matrix in a stack of Hermitian matrices."""
    try:
        return np.linalg.eigvalsh(H)[..., -1]
    except np.linalg.LinAlgError as exc:
        raise ConvergenceError(f"batched eigensolver failed: {exc}", iterations=1) from exc


def operator_norm(A):
    """Largest singular value of ``A`` and a unit vector attaining it.

    Computed as ``sqrt(lambda_max(A^* A))`` so the same Hermitian kernel is
    used throughout. The zero matrix returns ``(0.0, e_1)``.
    """
    A = as_matrix(A)
    n = A.shape[0]
    if not np.any(A):
        e1 = np.zeros(n, dtype=complex)
        e1[0] = 1
        return 0.0, e1
    # A^*A is formed exactly Hermitian, but scale the tolerance with ||A||^2
    G = _symmetrize(adjoint(A) @ A)
    scale = max(1.0, float(np.max(np.abs(G))))
    eig = max_eig_hermitian(G / scale)
    value = float(np.sqrt(max(eig.value * scale, 0.0)))
    x = eig.vector
    return float(max(value, np.linalg.norm(A @ x))), x


def rank_one(x, y):
    """The matrix of ``z -> <z, y> x``, entries ``x_i conj(y_j)``."""
    x = as_vector(x, "x")
    y = as_vector(y, "y")
    if x.shape != y.shape:
        raise DimensionError(f"dimension mismatch: {x.shape} vs {y.shape}")
    return np.outer(x, np.conj(y))


def is_normal(A, tol=1e-10):
    A = as_matrix(A)
    Ah = adjoint(A)
    return bool(np.max(np.abs(Ah @ A - A @ Ah)) <= tol)
