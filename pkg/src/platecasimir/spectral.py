"""Numerical check of the partial-fraction sum rule

    d/dz ln K(z) = sum_n 2 z / (z^2 + lambda_n^2),

which turns the divergent mode sum into an integral over ``ln K``.  The left
side is evaluated from the growth/reflection split, the right side from the
roots found in :mod:`platecasimir.roots`.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import digamma

from .models import BoundaryModel
from .roots import RootList, first_roots


@dataclass(frozen=True)
class TailModel:
    """Linear root asymptote ``lambda_n ~ (n + offset) * pi * density`` for n > start."""

    offset: float
    density: float
    start: int

    def tail_sum(self, z: float) -> float:
        """``sum_{n > start} 2z / (z^2 + lambda_n^2)`` under the asymptote.

        Uses ``sum_{m>=0} 1/((m+b)^2 + w^2) = Im psi(b + i w) / w``.
        """
        if z == 0:
            return 0.0
        a = math.pi * self.density
        b = self.start + 1 + self.offset
        return 2.0 / a * float(np.imag(digamma(complex(b, z / a))))

    def bound(self, z: float) -> float:
        """Crude upper bound ``2z / (pi^2 d^2 (N + c))`` on the tail."""
        return 2.0 * z / (math.pi**2 * self.density**2 * (self.start + self.offset))


def fit_tail(roots: RootList, n_fit: int = 10) -> TailModel:
    """Fit the asymptote to the last ``n_fit`` roots."""
    n_fit = min(n_fit, len(roots))
    if n_fit < 2:
        raise ValueError("need at least two roots to fit a tail")
    n = np.arange(len(roots) - n_fit + 1, len(roots) + 1, dtype=float)
    slope, intercept = np.polyfit(n, roots.roots[-n_fit:], 1)
    return TailModel(offset=intercept / slope, density=slope / math.pi, start=len(roots))


def log_deriv_k(model: BoundaryModel, z: float, mu: float = 0.0) -> float:
    """``K'(z)/K(z)`` without forming ``K``.

    ``d ln D/dz + (R' - sigma R) e^{-sigma z} / (1 + R e^{-sigma z})``.
    ``K`` is even, so the value at ``z = 0`` is zero.
    """
    if z == 0:
        return 0.0
    if z < 0:
        return -log_deriv_k(model, -z, mu)
    s = model.sigma
    r = model.reflection(z, mu)
    dr = model.reflection_deriv(z, mu)
    ex = math.exp(-s * z)
    return model.log_growth_deriv(z, mu) + (dr - s * r) * ex / (1.0 + r * ex)


def partial_fraction_sum(roots: RootList, z: float, tail: TailModel | None = None) -> float:
    """``sum_n 2z/(z^2 + lambda_n^2)`` over ``roots``, plus ``tail`` if given."""
    lam = np.asarray(roots.roots, dtype=float)
    # sum from the smallest terms up
    terms = (2.0 * z / (z * z + lam * lam))[::-1]
    total = math.fsum(terms)
    if tail is not None:
        total += tail.tail_sum(z)
    return total


def mittag_leffler_residual(
    model: BoundaryModel, z: float, n: int, mu: float = 0.0, roots: RootList | None = None
) -> float:
    """``|K'/K - sum_{k<=n} 2z/(z^2 + lambda_k^2)|``; decays like ``1/n``."""
    if roots is None:
        roots = first_roots(model, n, mu)
    else:
        roots = roots.head(n)
    return abs(log_deriv_k(model, z, mu) - partial_fraction_sum(roots, z))
