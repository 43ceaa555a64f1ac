"""Positive real roots of a model eigencondition.

Roots are bracketed by sign changes on a uniform grid of step ``pi/8`` and
refined by bisection.  All brackets are bisected together as numpy arrays, so
the refinement is order independent and bit reproducible.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .exceptions import MissedRootSuspicion
from .models import BoundaryModel

SCAN_STEP = math.pi / 8
DEFAULT_TOL = 1e-12


@dataclass(frozen=True)
class RootList:
    """Ordered positive roots with their final brackets.

    ``brackets[i]`` is ``(lo, hi)`` with ``lo <= roots[i] <= hi`` and
    ``hi - lo <= tolerance``.  Only ``lambda_n > 0`` is stored; the
    negative roots are ``-lambda_n``.
    """

    roots: np.ndarray
    brackets: np.ndarray
    tolerance: float

    def __len__(self):
        return len(self.roots)

    def __getitem__(self, i):
        return self.roots[i]

    def head(self, n: int) -> "RootList":
        return RootList(self.roots[:n], self.brackets[:n], self.tolerance)


def count_estimate(model: BoundaryModel, cutoff: float) -> int:
    """Asymptotic root count in ``(0, cutoff]``, one root per quasi-period."""
    return model.count_estimate(cutoff)


def _bisect(f, lo, hi, flo, tol, max_iter=200):
    lo = lo.copy()
    hi = hi.copy()
    neg_lo = flo < 0
    for _ in range(max_iter):
        width = hi - lo
        if width.size == 0 or np.all(width <= tol):
            break
        mid = 0.5 * (lo + hi)
        # stalls once mid rounds onto an endpoint
        stuck = (mid <= lo) | (mid >= hi)
        fm = f(mid)
        go_right = (fm < 0) == neg_lo
        exact = fm == 0
        active = (width > tol) & ~stuck
        lo = np.where(active & (go_right | exact), mid, lo)
        hi = np.where(active & (~go_right | exact), mid, hi)
    return lo, hi


def find_roots(
    model: BoundaryModel,
    cutoff: float,
    tol: float = DEFAULT_TOL,
    mu: float = 0.0,
    step: float = SCAN_STEP,
    check: bool = True,
) -> RootList:
    """Return every root of ``model.g(., mu)`` in ``(0, cutoff]``.

    Parameters
    ----------
    model : BoundaryModel
    cutoff : float
        Upper end of the search interval.
    tol : float
        Final bracket width.
    mu : float
        Dimensionless mass.
    step : float
        Scan grid step; the default cannot skip adjacent roots of any
        catalog model.
    check : bool
        Compare the number of roots with ``count_estimate``.

    Raises
    ------
    MissedRootSuspicion
        If the count differs from the estimate by more than one.
    """
    if not cutoff > 0:
        raise ValueError("cutoff must be positive")
    if not tol > 0:
        raise ValueError("tol must be positive")
    n = max(1, math.ceil(cutoff / step))
    grid = np.linspace(0.0, cutoff, n + 1)[1:]
    grid = np.concatenate(([min(1e-6, 0.5 * grid[0])], grid))
    f = lambda x: np.asarray(model.g(x, mu), dtype=float)
    vals = f(grid)

    exact = vals[1:] == 0.0
    change = (vals[:-1] * vals[1:] < 0.0) & ~exact
    lo = grid[:-1][change]
    hi = grid[1:][change]
    lo, hi = _bisect(f, lo, hi, vals[:-1][change], tol)

    roots = np.concatenate((0.5 * (lo + hi), grid[1:][exact]))
    brackets = np.concatenate(
        (np.column_stack((lo, hi)), np.repeat(grid[1:][exact], 2).reshape(-1, 2))
    ).reshape(-1, 2)
    order = np.argsort(roots, kind="stable")
    result = RootList(roots[order], brackets[order], tol)

    if check:
        expected = count_estimate(model, cutoff)
        if abs(len(result) - expected) > 1:
            raise MissedRootSuspicion(len(result), expected, cutoff)
    return result


def first_roots(model: BoundaryModel, n: int, mu: float = 0.0, tol: float = DEFAULT_TOL) -> RootList:
    """The ``n`` smallest positive roots."""
    if n < 1:
        raise ValueError("n must be >= 1")
    cutoff = (n + 1.5) * model.root_spacing
    while True:
        found = find_roots(model, cutoff, tol=tol, mu=mu)
        if len(found) >= n:
            return found.head(n)
        cutoff *= 1.5


def residuals(model: BoundaryModel, roots: RootList, mu: float = 0.0) -> np.ndarray:
    """``|G(lambda_n)|`` for every root."""
    return np.abs(np.asarray(model.g(roots.roots, mu)))


def residual_bounds(model: BoundaryModel, roots: RootList, mu: float = 0.0) -> np.ndarray:
    """Largest ``|G(lambda_n)|`` compatible with the bracket width.

    The local slope is taken from a symmetric secant of half-width ``1e-6``,
    and a few ulps of the function scale absorb rounding in ``G`` itself.
    """
    h = 1e-6
    x = roots.roots
    slope = np.abs(np.asarray(model.g(x + h, mu)) - np.asarray(model.g(x - h, mu))) / (2 * h)
    width = np.maximum(roots.brackets[:, 1] - roots.brackets[:, 0], 0.0)
    scale = 1.0 + mu / np.maximum(x, 1.0)
    return 2.0 * slope * np.maximum(width, roots.tolerance) + 8 * np.finfo(float).eps * scale * (1 + x)
