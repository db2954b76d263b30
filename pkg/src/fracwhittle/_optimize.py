"""Bounded one-dimensional minimisation: coarse grid scan plus golden section."""

import math

import numpy as np

from ._errors import EstimationFailedError

INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0


def search_grid(lo, hi, step):
    """Equally spaced grid on [lo, hi] with spacing at most ``step``; both ends included."""
    count = max(int(math.ceil((hi - lo) / step - 1e-9)), 1) + 1
    return np.linspace(lo, hi, count)


def golden_section(f, lo, hi, tol):
    """Minimise ``f`` on [lo, hi] until the bracket is narrower than ``tol``.

    Returns ``(x, f(x), n_evals)``.
    """
    a, b = lo, hi
    c = b - INV_PHI * (b - a)
    d = a + INV_PHI * (b - a)
    fc, fd = f(c), f(d)
    evals = 2
    while b - a > tol:
        if fc <= fd:
            b, d, fd = d, c, fc
            c = b - INV_PHI * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + INV_PHI * (b - a)
            fd = f(d)
        evals += 1
    if fc <= fd:
        return c, fc, evals
    return d, fd, evals


def minimize_bounded(grid_fn, point_fn, lo, hi, step, tol):
    """Grid scan over [lo, hi] then golden refinement on the best bracket.

    ``grid_fn`` maps an array of trial points to objective values (``inf`` where
    the objective cannot be evaluated); ``point_fn`` evaluates a single point.
    Returns ``(x, fx, n_evals)``.
    """
    grid = search_grid(lo, hi, step)
    vals = np.asarray(grid_fn(grid), dtype=np.float64)
    vals = np.where(np.isfinite(vals), vals, np.inf)
    if not np.any(np.isfinite(vals)):
        raise EstimationFailedError("objective is not finite anywhere on the search grid")
    i = int(np.argmin(vals))
    a = grid[max(i - 1, 0)]
    b = grid[min(i + 1, grid.shape[0] - 1)]
    x, fx, ne = golden_section(point_fn, a, b, tol)
    evals = grid.shape[0] + ne
    if not fx < vals[i]:
        x, fx = float(grid[i]), float(vals[i])
    return float(x), float(fx), evals
