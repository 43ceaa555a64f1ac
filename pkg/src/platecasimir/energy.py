"""Casimir energy per unit plate area.

The dimensionless coefficient is

    e(mu) = E l^3 / (hbar c L^2) = alpha g / (4 pi^2) * I(mu)

with ``I`` from :mod:`platecasimir.quadrature`.  For the MIT fermion
(``alpha = -4``, ``g = 1``) the prefactor is ``-1/pi^2``, and at ``mu = 0``
the kernel reduces to ``z^2 ln(1 + e^{-2z})``, which integrates to
``7 pi^4 / 2880`` and gives ``e = -7 pi^2 / 2880``.  Writing the massless
measure as ``z^3`` would break both the ``mu -> 0`` limit of the massive
integral and this value.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np
from scipy.special import kve

from .exceptions import DomainError, SeriesTruncation, Unsupported
from .models import BoundaryModel, massless_zeta_weight
from .quadrature import QuadratureSpec, integrate_kernel

# hbar c = 197.3269804 MeV fm (CODATA 2018)
HBAR_C_MEV_FM = 197.3269804
# exact since the 2019 SI redefinition
ELECTRON_VOLT_J = 1.602176634e-19
HBAR_C_EV_M = HBAR_C_MEV_FM * 1e-9
HBAR_C_J_M = HBAR_C_EV_M * ELECTRON_VOLT_J

CONSTANTS_PROVENANCE = "hbar*c = 197.3269804 MeV fm (CODATA 2018); 1 eV = 1.602176634e-19 J (SI 2019)"


@dataclass(frozen=True)
class EnergyCoefficient:
    """``e(mu) = E l^3 / (hbar c L^2)`` with its error estimate."""

    e: float
    err: float
    mu: float
    model: str
    params: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {"model": self.model, "params": dict(self.params), "mu": self.mu, "e": self.e, "err": self.err}


@dataclass(frozen=True)
class PhysicalResult:
    energy: float
    unit: str
    length: float
    area: float
    mass_ev: float | None = None
    mu: float | None = None
    hbar_c_ev_m: float = HBAR_C_EV_M
    constants: str = CONSTANTS_PROVENANCE

    def to_dict(self) -> dict:
        return {
            "energy": self.energy, "unit": self.unit, "length_m": self.length,
            "area_m2": self.area, "mass_ev": self.mass_ev, "mu": self.mu,
            "hbar_c_ev_m": self.hbar_c_ev_m, "constants": self.constants,
        }


def prefactor(model: BoundaryModel) -> float:
    """``alpha g / (4 pi^2)``."""
    return model.alpha * model.multiplicity / (4.0 * math.pi**2)


def casimir_coefficient(model: BoundaryModel, mu: float, spec: QuadratureSpec | None = None) -> EnergyCoefficient:
    """Regularized energy coefficient by quadrature.

    Raises ``ToleranceNotMet`` from the integrator unchanged.
    """
    if not mu >= 0:
        raise ValueError(f"mu must be >= 0, got {mu!r}")
    value, err = integrate_kernel(model, mu, spec)
    c = prefactor(model)
    return EnergyCoefficient(c * value, abs(c) * err, float(mu), model.name, model.params)


def zeta4_partial(n_terms: int) -> float:
    """``zeta(4)`` from ``n_terms`` partial sums plus an Euler-Maclaurin tail."""
    n = n_terms
    k = np.arange(1, n + 1, dtype=float)
    head = math.fsum((1.0 / k**4)[::-1])
    tail = 1 / (3 * n**3) - 1 / (2 * n**4) + 1 / (3 * n**5) - 1 / (6 * n**7) + 2 / (9 * n**9)
    return head + tail


def eta4_partial(n_terms: int) -> float:
    """Dirichlet eta at 4: ``(1 - 2^{-3}) zeta(4)``."""
    return (1.0 - 2.0**-3) * zeta4_partial(n_terms)


def laplace_moment(s: float, mu: float) -> float:
    """``exp(s mu) * int_mu^inf z sqrt(z^2 - mu^2) e^{-s z} dz = exp(s mu) mu^2 K_2(s mu) / s``."""
    if mu == 0:
        return 2.0 / s**3
    return mu * mu / s * float(kve(2, s * mu))


def series_coefficient(model: BoundaryModel, mu: float, k_max: int = 200, tol: float = 1e-12) -> float:
    """Energy coefficient from the term-by-term expansion of the logarithm.

    Valid only for constant ``R``.  Each term
    ``(-1)^{k+1} R^k / k * int z sqrt(z^2-mu^2) e^{-sigma k z} dz`` is a
    modified Bessel function; at ``mu = 0`` the sum is ``zeta(4)`` or
    ``eta(4)`` up to a factor.

    Raises
    ------
    Unsupported
        If ``R`` depends on ``z``.
    SeriesTruncation
        If the remainder bound after ``k_max`` terms exceeds ``tol`` relative.
    """
    r = model.constant_reflection
    if r is None:
        raise Unsupported(f"model {model.name!r} has a z-dependent reflection kernel")
    if not mu >= 0:
        raise ValueError(f"mu must be >= 0, got {mu!r}")
    if k_max < 10:
        raise ValueError("k_max must be >= 10")
    s = model.sigma

    if mu == 0 and abs(r) == 1.0:
        series = -zeta4_partial(k_max) if r < 0 else eta4_partial(k_max)
        return prefactor(model) * 2.0 / s**3 * series

    # scaled by exp(sigma mu); term k carries exp(-sigma (k-1) mu)
    terms = []
    for k in range(1, k_max + 1):
        sign = 1.0 if k % 2 else -1.0
        terms.append(sign * r**k / k * laplace_moment(s * k, mu) * math.exp(-s * (k - 1) * mu))
    total = math.fsum(terms[::-1])
    k = k_max + 1
    ratio = abs(r) * math.exp(-s * mu)
    next_term = abs(r) ** k / k * laplace_moment(s * k, mu) * math.exp(-s * (k - 1) * mu)
    remainder = next_term / (1.0 - ratio) if ratio < 1 else math.inf
    if remainder > tol * abs(total):
        raise SeriesTruncation(prefactor(model) * total * math.exp(-s * mu), remainder, tol * abs(total))
    return prefactor(model) * total * math.exp(-s * mu)


def asymptotic_coefficient_mit(mu: float, order: int = 1) -> float:
    """Heavy-mass form of the MIT coefficient.

    With ``z = mu + t`` and ``ln(1 + R e^{-2z}) ~ R e^{-2z}``, the measure
    times ``R`` is ``(2mu)^{-1/2} mu t^{3/2} (1 + 3t/(4mu) + ...)``, so

        e(mu) ~ -3 sqrt(mu) e^{-2mu} / (32 pi^{3/2}) * (1 + 15/(16 mu)).

    ``order=0`` drops the bracket.  Its relative error is about ``1/mu``,
    which is still 11% at ``mu = 8``; the default keeps the first correction.
    """
    if mu < 4:
        raise DomainError("asymptotic form requires mu >= 4")
    if order not in (0, 1):
        raise ValueError("order must be 0 or 1")
    lead = -3.0 / (32.0 * math.pi**1.5) * math.sqrt(mu) * math.exp(-2.0 * mu)
    return lead * (1.0 + 15.0 / (16.0 * mu)) if order else lead


def massless_closed_form(model: BoundaryModel) -> Fraction:
    """Exact ``e(0) / pi^2`` as a fraction.

    >>> from platecasimir.models import get_model
    >>> massless_closed_form(get_model("mit"))
    Fraction(-7, 2880)
    """
    w = massless_zeta_weight(model)
    if w is None:
        raise Unsupported(f"no closed form for {model.name} with parameters {model.params}")
    return w


def closed_form_value(model: BoundaryModel) -> float:
    return float(massless_closed_form(model)) * math.pi**2


def mu_from_mass(mass_ev: float, length_m: float) -> float:
    """``mu = m c l / hbar`` with the mass in eV and ``l`` in meters."""
    return mass_ev * length_m / HBAR_C_EV_M


def energy_per_area(model: BoundaryModel, mass_ev: float, length_m: float, spec=None) -> tuple[float, float]:
    """``E / L^2`` in J/m^2 and its error."""
    c = casimir_coefficient(model, mu_from_mass(mass_ev, length_m), spec)
    f = HBAR_C_J_M / length_m**3
    return c.e * f, c.err * f


def force_per_area(
    model: BoundaryModel, mass_ev: float, length_m: float, h: float = 1e-4, spec=None
) -> tuple[float, float]:
    """Pressure ``-d/dl (E/L^2)`` in Pa by central difference.

    The mass is held fixed, so ``mu`` moves with ``l``.  Negative values are
    attractive.  The error combines a Richardson estimate of the
    ``O(h^2)`` truncation with the propagated quadrature error.
    """
    if not length_m > 0:
        raise ValueError("length must be positive")
    if not 1e-6 <= h <= 1e-2:
        raise ValueError("relative step h must lie in [1e-6, 1e-2]")

    def diff(step):
        dl = step * length_m
        ep, ep_err = energy_per_area(model, mass_ev, length_m + dl, spec)
        em, em_err = energy_per_area(model, mass_ev, length_m - dl, spec)
        return -(ep - em) / (2 * dl), (ep_err + em_err) / (2 * dl)

    f1, q1 = diff(h)
    f2, _ = diff(2 * h)
    return f1, abs(f1 - f2) / 3.0 + q1


def convert_energy(value: float, src: str, dst: str) -> float:
    factors = {"J": 1.0, "eV": ELECTRON_VOLT_J}
    try:
        return value * factors[src] / factors[dst]
    except KeyError as exc:
        raise ValueError(f"unknown unit {exc.args[0]!r}; use 'J' or 'eV'") from None


def to_physical(e: float, length_m: float, area_m2: float, unit: str = "J",
                mass_ev: float | None = None) -> PhysicalResult:
    """``E = e hbar c L^2 / l^3`` in joules or electronvolts."""
    if not (length_m > 0 and area_m2 > 0):
        raise ValueError("length and area must be positive")
    energy_j = e * HBAR_C_J_M * area_m2 / length_m**3
    mu = None if mass_ev is None else mu_from_mass(mass_ev, length_m)
    return PhysicalResult(convert_energy(energy_j, "J", unit), unit, length_m, area_m2, mass_ev, mu)
