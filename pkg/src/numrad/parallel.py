"""Numerical-radius parallelism and norm parallelism of matrix pairs.

``A`` and ``B`` are *numerical-radius parallel* when ``w(A + lam B) = w(A) + w(B)``
for some unimodular ``lam``, and *norm parallel* when the same holds for the
operator norm. Both deciders maximize over the phase of ``lam``, compare the
maximum with the triangle-inequality bound, and return a certificate holding
the optimal phase and a witness vector.

For the numerical radius the phase search is done jointly with the angle of
the Hermitian part. Writing ``H_A(t)`` for the rotated Hermitian part,

    max_lam w(A + lam B) = max_{t, s} lambda_max(H_A(t) + H_B(s)),  lam = e^{i(t - s)},

which equals ``max_x |<Ax, x>| + |<Bx, x>|`` over unit ``x``. A coarse grid on
the ``(t, s)`` torus seeds an alternating ascent (phases from the current
vector, vector from the top eigenpair), and the certified value is a full
:func:`numerical_radius` call at the resulting phase.
"""

import enum
from dataclasses import dataclass, field
from typing import NamedTuple, Optional

import numpy as np

from .matcore import (
    DimensionError, adjoint, as_matrix, as_vector, hermitian_components, inner,
    is_normal, operator_norm, quadratic_form, rank_one, require_unit, top_eigvals,
)
from .numrange import numerical_radius
from .search import TWO_PI, grid, periodic_max

N_PHASE = 512
N_BRACKETS = 5
PHASE_TOL = 1e-12
JOINT_GRID = 48
ASCENT_MAXITER = 5000
ASCENT_PHASE_TOL = 1e-13
WIT_TOL = 1e-6
DECIDE_REL = 1e-8
NORMAL_TOL = 1e-10


class Verdict(str, enum.Enum):
    PARALLEL = "Parallel"
    NOT_PARALLEL = "NotParallel"


class ProbeVerdict(str, enum.Enum):
    SCALAR = "scalar"
    NON_SCALAR = "non_scalar"
    INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class WitnessCheck:
    ok: bool
    product_residual: float
    a_residual: float
    b_residual: float


@dataclass(frozen=True)
class ParallelCertificate:
    kind: str  # "omega" or "norm"
    phase: float
    achieved: float
    target: float
    gap: float
    decision: Verdict
    witness: np.ndarray
    witness_residuals: WitnessCheck
    decide_tol: float
    norm_a: float
    norm_b: float
    theta_star: float = 0.0

    @property
    def lambda_star(self):
        return complex(np.exp(1j * self.phase))


@dataclass(frozen=True)
class Decision:
    value: Verdict
    certificate: ParallelCertificate

    @property
    def parallel(self):
        return self.value is Verdict.PARALLEL


class BridgeResult(NamedTuple):
    is_applicable: bool
    omega_decision: Optional[Decision]
    norm_decision: Optional[Decision]


@dataclass(frozen=True)
class ProbeResult:
    verdict: ProbeVerdict
    counterexample: Optional[tuple] = None  # (x, y, Decision)
    trials_run: int = 0
    decisions: list = field(default_factory=list, repr=False)


def default_decide_tol(target, rel_tol=DECIDE_REL):
    return rel_tol * max(1.0, target)


def _pair(A, B):
    A = as_matrix(A, "A")
    B = as_matrix(B, "B")
    if A.shape != B.shape:
        raise DimensionError(f"dimension mismatch: {A.shape} vs {B.shape}")
    return A, B


def _e1(n):
    e = np.zeros(n, dtype=complex)
    e[0] = 1
    return e


def witness_check(A, B, x, wit_tol=WIT_TOL, omegas=None):
    """Test whether unit ``x`` satisfies ``|<Ax,x><Bx,x>| = w(A) w(B)``.

    ``ok`` compares the product against ``wit_tol * max(1, w(A) w(B))``; the
    single-factor residuals ``| |<Ax,x>| - w(A) |`` and the same for ``B`` are
    reported alongside, since a true witness drives them to zero as well.
    """
    A, B = _pair(A, B)
    x = require_unit(x, "x")
    if x.shape[0] != A.shape[0]:
        raise DimensionError(f"dimension mismatch: matrix {A.shape} vs vector {x.shape}")
    if omegas is None:
        omegas = (numerical_radius(A).omega, numerical_radius(B).omega)
    wa, wb = omegas
    a = quadratic_form(A, x)
    b = quadratic_form(B, x)
    prod = abs(abs(a * b) - wa * wb)
    return WitnessCheck(bool(prod <= wit_tol * max(1.0, wa * wb)),
                        float(prod), float(abs(abs(a) - wa)), float(abs(abs(b) - wb)))


def norm_witness_check(A, B, x, wit_tol=WIT_TOL, norms=None):
    """Test ``|<Ax, Bx>| = ||A|| ||B||`` for a unit ``x``; residuals as in :func:`witness_check`."""
    A, B = _pair(A, B)
    x = require_unit(x, "x")
    if norms is None:
        norms = (operator_norm(A)[0], operator_norm(B)[0])
    na, nb = norms
    Ax, Bx = A @ x, B @ x
    prod = abs(abs(inner(Ax, Bx)) - na * nb)
    return WitnessCheck(bool(prod <= wit_tol * max(1.0, na * nb)), float(prod),
                        float(abs(np.linalg.norm(Ax) - na)), float(abs(np.linalg.norm(Bx) - nb)))


def _degenerate(kind, A, B, na, nb, wit_tol, check, rel_tol):
    # equality w(A + B) = w(A) + w(B) is exact when either side vanishes
    target = na + nb
    n = A.shape[0]
    if kind == "omega":
        r = numerical_radius(A if na > 0 else B)
        witness, theta = (r.witness, r.theta_star) if target > 0 else (_e1(n), 0.0)
    else:
        witness = operator_norm(A if na > 0 else B)[1]
        theta = 0.0
    res = check(A, B, witness, wit_tol, (na, nb))
    cert = ParallelCertificate(kind, 0.0, target, target, 0.0, Verdict.PARALLEL, witness,
                               res, default_decide_tol(target, rel_tol), na, nb, theta)
    return Decision(Verdict.PARALLEL, cert)


def _ascent(A, B, KA, KB, x, scale):
    """Alternating maximization of ``|<Ax,x>| + |<Bx,x>|`` from the unit vector ``x``.

    Each sweep aligns the phases with the current quadratic forms, then takes
    the top eigenvector of ``H_A(t) + H_B(s)``; the objective never decreases.
    Stops once both phases settle to ``ASCENT_PHASE_TOL`` or the value stalls
    for good.
    """
    t = s = None
    value = -np.inf
    stall = 0
    for _ in range(ASCENT_MAXITER):
        nt = float(np.angle(np.vdot(x, A @ x)))
        ns = float(np.angle(np.vdot(x, B @ x)))
        H = (np.cos(nt) * KA[0] + np.sin(nt) * KA[1]
             + np.cos(ns) * KB[0] + np.sin(ns) * KB[1])
        w, V = np.linalg.eigh(H)
        x = V[:, -1]
        moved = np.inf if t is None else abs(np.angle(np.exp(1j * (nt - t)))) + abs(
            np.angle(np.exp(1j * (ns - s))))
        stall = stall + 1 if w[-1] - value <= 1e-16 * scale else 0
        t, s, value = nt, ns, max(value, float(w[-1]))
        if moved <= ASCENT_PHASE_TOL or stall >= 50:
            break
    return value, t, s, x


def _torus_maxima(G, count):
    is_max = np.ones(G.shape, dtype=bool)
    for di in (-1, 0, 1):
        for dj in (-1, 0, 1):
            if di or dj:
                is_max &= G >= np.roll(np.roll(G, di, axis=0), dj, axis=1)
    ii, jj = np.nonzero(is_max)
    if ii.size == 0:
        ii, jj = np.indices(G.shape).reshape(2, -1)
    order = np.lexsort((jj, ii, -G[ii, jj]))[:count]
    return ii[order], jj[order]


def _best_omega_phase(A, B):
    KA = hermitian_components(A)
    KB = hermitian_components(B)
    ts = grid(JOINT_GRID)
    HA = np.cos(ts)[:, None, None] * KA[0] + np.sin(ts)[:, None, None] * KA[1]
    HB = np.cos(ts)[:, None, None] * KB[0] + np.sin(ts)[:, None, None] * KB[1]
    H = HA[:, None] + HB[None, :]
    G = top_eigvals(H)
    scale = max(1.0, float(np.max(G)))
    best = None
    for i, j in zip(*_torus_maxima(G, N_BRACKETS)):
        x0 = np.linalg.eigh(H[i, j])[1][:, -1]
        value, t, s, _ = _ascent(A, B, KA, KB, x0, scale)
        phase = (t - s) % TWO_PI
        if best is None or value > best[0] + 1e-14 * scale or (
                abs(value - best[0]) <= 1e-14 * scale and phase < best[1]):
            best = (value, phase)
    return best[1]


def omega_parallel(A, B, decide_tol=None, wit_tol=WIT_TOL, rel_tol=DECIDE_REL):
    """Decide ``A || B`` in the numerical-radius sense and certify the answer.

    ``decide_tol`` defaults to ``rel_tol * max(1, w(A) + w(B))``. The certificate
    witness is the numerical-radius witness of ``A + lam* B``.
    """
    A, B = _pair(A, B)
    if decide_tol is not None and not decide_tol > 0:
        raise ValueError("decide_tol must be positive")
    wa = numerical_radius(A).omega
    wb = numerical_radius(B).omega
    if not np.any(A) or not np.any(B):
        return _degenerate("omega", A, B, wa, wb, wit_tol, witness_check, rel_tol)
    target = wa + wb
    tol = default_decide_tol(target, rel_tol) if decide_tol is None else decide_tol

    phase = _best_omega_phase(A, B)
    r = numerical_radius(A + np.exp(1j * phase) * B)
    if phase != 0.0:
        # flat directions are common (disk-shaped ranges, dependent pairs): prefer lam = 1
        r0 = numerical_radius(A + B)
        if r0.omega >= r.omega - 1e-14 * max(1.0, target):
            phase, r = 0.0, r0
    achieved = r.omega
    gap = target - achieved
    verdict = Verdict.PARALLEL if gap <= tol else Verdict.NOT_PARALLEL
    res = witness_check(A, B, r.witness, wit_tol, (wa, wb))
    cert = ParallelCertificate("omega", phase, achieved, target, gap, verdict, r.witness,
                               res, tol, wa, wb, r.theta_star)
    return Decision(verdict, cert)


def _norm_sweep(A, B):
    def f(phi):
        phi = np.asarray(phi, dtype=float)
        M = A + np.exp(1j * phi)[:, None, None] * B
        G = np.conj(np.swapaxes(M, -1, -2)) @ M
        return np.sqrt(np.maximum(top_eigvals(G), 0.0))
    return f


def norm_parallel(A, B, decide_tol=None, wit_tol=WIT_TOL, rel_tol=DECIDE_REL):
    """Decide ``A || B`` for the operator norm.

    Maximizes ``||A + e^{i phi} B||`` over a 512-point phase grid with
    golden-section refinement of the five best brackets. The witness is the
    top right singular vector of ``A + lam* B``; when parallel it should
    satisfy ``|<Ax, Bx>| = ||A|| ||B||``, reported in ``witness_residuals``.
    """
    A, B = _pair(A, B)
    if decide_tol is not None and not decide_tol > 0:
        raise ValueError("decide_tol must be positive")
    na = operator_norm(A)[0]
    nb = operator_norm(B)[0]
    if not np.any(A) or not np.any(B):
        return _degenerate("norm", A, B, na, nb, wit_tol, norm_witness_check, rel_tol)
    target = na + nb
    tol = default_decide_tol(target, rel_tol) if decide_tol is None else decide_tol

    phase, _, _ = periodic_max(_norm_sweep(A, B), N_PHASE, PHASE_TOL, N_BRACKETS)
    achieved, x = operator_norm(A + np.exp(1j * phase) * B)
    gap = target - achieved
    verdict = Verdict.PARALLEL if gap <= tol else Verdict.NOT_PARALLEL
    res = norm_witness_check(A, B, x, wit_tol, (na, nb))
    cert = ParallelCertificate("norm", phase, achieved, target, gap, verdict, x,
                               res, tol, na, nb)
    return Decision(verdict, cert)


def normal_bridge(A, B, decide_tol=None):
    """Run both deciders on a pair of normal matrices.

    For normal operators the numerical radius equals the norm, so numerical-radius
    parallelism forces norm parallelism. Not applicable (decisions ``None``)
    unless both matrices are normal to within 1e-10.
    """
    A, B = _pair(A, B)
    if not (is_normal(A, NORMAL_TOL) and is_normal(B, NORMAL_TOL)):
        return BridgeResult(False, None, None)
    return BridgeResult(True, omega_parallel(A, B, decide_tol), norm_parallel(A, B, decide_tol))


def block_operator(A, B, theta):
    """The ``2n x 2n`` matrix ``[[0, e^{i theta} A], [e^{-i theta} B^*, 0]]``."""
    A, B = _pair(A, B)
    n = A.shape[0]
    Z = np.zeros((n, n), dtype=complex)
    return np.block([[Z, np.exp(1j * theta) * A], [np.exp(-1j * theta) * adjoint(B), Z]])


def pair_transform(A, B, mode, gamma=None, alpha=None, beta=None):
    """Apply one of the parallelism-preserving pair maps.

    ``mode`` is ``"adjoint"`` -> ``(A*, B*)``, ``"scale_gamma"`` ->
    ``(gamma A, gamma B)`` for complex ``gamma != 0``, or ``"scale_real"`` ->
    ``(alpha A, beta B)`` for nonzero reals.
    """
    A, B = _pair(A, B)
    if mode == "adjoint":
        return adjoint(A), adjoint(B)
    if mode == "scale_gamma":
        if gamma is None or gamma == 0:
            raise ValueError("scale_gamma needs a nonzero gamma")
        return gamma * A, gamma * B
    if mode == "scale_real":
        if alpha is None or beta is None or alpha == 0 or beta == 0:
            raise ValueError("scale_real needs nonzero alpha and beta")
        if np.iscomplexobj(alpha) or np.iscomplexobj(beta):
            raise ValueError("scale_real takes real alpha and beta")
        return alpha * A, beta * B
    raise ValueError(f"unknown mode {mode!r}")


def linearly_dependent(x, y, rtol=1e-10):
    M = np.column_stack([as_vector(x, "x"), as_vector(y, "y")])
    if M.shape[0] < 2:
        return True
    s = np.linalg.svd(M, compute_uv=False)
    return bool(s[-1] <= rtol * s[0])


def rank_one_self_parallel(x, y, decide_tol=None):
    """Decide ``x (x) x || y (x) y`` and independently test ``x``, ``y`` for collinearity.

    The two answers should always agree. Returns ``(decision, dependent)``.
    """
    x = as_vector(x, "x")
    y = as_vector(y, "y")
    if x.shape != y.shape:
        raise DimensionError(f"dimension mismatch: {x.shape} vs {y.shape}")
    if not np.any(x) or not np.any(y):
        raise ValueError("x and y must be nonzero")
    return omega_parallel(rank_one(x, x), rank_one(y, y), decide_tol), linearly_dependent(x, y)


def _orthogonal_unit_pair(rng, n):
    z = rng.standard_normal((2, 2 * n))
    x = z[0, :n] + 1j * z[0, n:]
    x /= np.linalg.norm(x)
    y = z[1, :n] + 1j * z[1, n:]
    y -= inner(y, x) * x
    y /= np.linalg.norm(y)
    return x, y


def compression_hypothesis(T, trials=100, seed=0, tol=1e-10):
    """Sampled check of ``<Tx, y> = 0`` for unit ``x`` and ``y`` orthogonal to ``x``."""
    T = as_matrix(T, "T")
    rng = np.random.default_rng(seed)
    scale = max(1.0, float(np.max(np.abs(T))))
    for _ in range(trials):
        x, y = _orthogonal_unit_pair(rng, T.shape[0])
        if abs(inner(T @ x, y)) > tol * scale:
            return False
    return True


def scalar_identity_probe(T, trials, seed, decide_tol=None):
    """Search for a rank-one ``S = x (x) y`` (``y`` orthogonal to ``x``) not parallel to ``T``.

    A scalar multiple of the identity is parallel to every operator, so any
    such ``S`` proves ``T`` is not scalar. Sampling can never prove the
    converse; the verdict is ``scalar`` only if every trial was parallel and
    ``T`` is numerically ``(tr T / n) I``, otherwise ``inconclusive``.
    """
    T = as_matrix(T, "T")
    n = T.shape[0]
    if n < 3:
        raise DimensionError("scalar_identity_probe needs dimension >= 3")
    if trials < 1:
        raise ValueError("trials must be >= 1")
    rng = np.random.default_rng(seed)
    decisions = []
    for k in range(trials):
        x, y = _orthogonal_unit_pair(rng, n)
        d = omega_parallel(T, rank_one(x, y), decide_tol)
        decisions.append(d)
        if not d.parallel:
            return ProbeResult(ProbeVerdict.NON_SCALAR, (x, y, d), k + 1, decisions)
    mu = np.trace(T) / n
    if np.max(np.abs(T - mu * np.eye(n))) <= 1e-8:
        return ProbeResult(ProbeVerdict.SCALAR, None, trials, decisions)
    return ProbeResult(ProbeVerdict.INCONCLUSIVE, None, trials, decisions)
