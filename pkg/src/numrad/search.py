"""Periodic 1-d maximization: coarse grid plus golden-section refinement.

Several brackets are refined in lockstep so that each golden step costs a
single batched objective call.
"""

import math

import numpy as np

from .matcore import ConvergenceError

TWO_PI = 2 * math.pi
INV_PHI = (math.sqrt(5) - 1) / 2
INV_PHI2 = (3 - math.sqrt(5)) / 2


def grid(m):
    return TWO_PI * np.arange(m) / m


def local_maxima(values, count):
    """Indices of the ``count`` best local maxima of a circular sample.

    Ordered by decreasing value, ties going to the smaller index.
    """
    v = np.asarray(values)
    is_max = (v >= np.roll(v, 1)) & (v >= np.roll(v, -1))
    idx = np.flatnonzero(is_max)
    if idx.size == 0:
        idx = np.arange(v.size)
    order = np.lexsort((idx, -v[idx]))
    return idx[order[:count]]


def golden_max(f, lo, hi, tol):
    """Maximize ``f`` on each bracket ``[lo[k], hi[k]]`` simultaneously.

    ``f`` maps an array of abscissae to an array of values. Returns the best
    evaluated point and value per bracket along with the iteration count.
    """
    a = np.array(lo, dtype=float)
    b = np.array(hi, dtype=float)
    h = float(np.max(b - a))
    if h <= tol:
        mid = (a + b) / 2
        return mid, f(mid), 0
    steps = int(math.ceil(math.log(tol / h) / math.log(INV_PHI)))
    c = a + INV_PHI2 * (b - a)
    d = a + INV_PHI * (b - a)
    fc = f(c)
    fd = f(d)
    best_x = np.where(fc >= fd, c, d)
    best_f = np.maximum(fc, fd)
    for it in range(steps):
        left = fc >= fd  # keep [a, d]
        b = np.where(left, d, b)
        a = np.where(left, a, c)
        new_c = a + INV_PHI2 * (b - a)
        new_d = a + INV_PHI * (b - a)
        probe = np.where(left, new_c, new_d)
        fp = f(probe)
        if not np.all(np.isfinite(fp)):
            raise ConvergenceError("non-finite objective during golden-section search",
                                   iterations=it, diagnostics={"probe": probe})
        fc, fd, c, d = (np.where(left, fp, fd), np.where(left, fc, fp),
                        np.where(left, new_c, d), np.where(left, c, new_d))
        better = fp > best_f
        best_x = np.where(better, probe, best_x)
        best_f = np.where(better, fp, best_f)
    width = float(np.max(b - a))
    if width > tol * 1.0001:
        raise ConvergenceError(f"golden-section bracket width {width:.3g} above {tol:g}",
                               iterations=steps, diagnostics={"lo": a, "hi": b})
    return best_x, best_f, steps


def periodic_max(f, m, tol, brackets=5):
    """Global maximum of a 2*pi-periodic ``f`` sampled on ``m`` points.

    Returns ``(x, value, grid_values)`` with ``x`` in ``[0, 2*pi)``. Among
    candidates tying at the top (within a few ulps) the smallest angle wins.
    """
    xs = grid(m)
    gv = np.asarray(f(xs), dtype=float)
    if not np.all(np.isfinite(gv)):
        raise ConvergenceError("non-finite objective on the coarse grid", iterations=0)
    picks = local_maxima(gv, brackets)
    step = TWO_PI / m
    bx, bf, _ = golden_max(f, xs[picks] - step, xs[picks] + step, tol)
    cand_x = np.concatenate([xs[picks], np.mod(bx, TWO_PI)])
    cand_f = np.concatenate([gv[picks], bf])
    top = float(np.max(cand_f))
    ties = cand_f >= top - 8 * np.finfo(float).eps * max(1.0, abs(top))
    k = int(np.flatnonzero(ties)[np.argmin(cand_x[ties])])
    return float(cand_x[k]), float(cand_f[k]), gv
