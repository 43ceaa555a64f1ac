"""Boundary and topology conditions for a field between two flat surfaces.

Every model supplies three things:

* the eigencondition ``G(z)`` whose positive real roots are the
  dimensionless longitudinal momenta ``lambda_n = p3 * l``;
* its continuation to the imaginary axis, ``K(z) = G(iz)``;
* the split ``K(z) = D(z) * (1 + R(z) exp(-sigma z))`` into a divergent
  growth factor ``D`` (dropped by regularization) and a bounded reflection
  kernel ``R``.

Only ``R``, ``sigma``, ``alpha`` and the mode multiplicity enter the
regularized energy.  The auxiliary contour variable, the transverse momentum
and the individual mode frequencies never appear at runtime: after the change
of variables the finite energy depends on ``z``, ``mu = m l`` and the model
alone.

Lengths are in units of the plate separation ``l``, so ``mu = m l`` (with
hbar = c = 1) and Robin lengths are ``beta / l``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from fractions import Fraction

import numpy as np

__all__ = [
    "BoundaryModel",
    "MITBag",
    "Dirichlet",
    "Neumann",
    "MixedDN",
    "Robin",
    "Periodic",
    "Antiperiodic",
    "Electromagnetic",
    "CATALOG",
    "get_model",
    "eigencondition_mit",
    "g_mit",
    "k_mit",
    "reflection",
    "sinc",
    "sinhc",
]

# below this |z| the ratios sin(z)/z and sinh(z)/z use their Taylor series
SERIES_SWITCH = 1e-3
# above this z, cosh/sinh are never evaluated directly
DIRECT_LIMIT = 300.0


def sinc(z):
    """Unnormalized ``sin(z)/z``, stable at the origin."""
    z = np.asarray(z, dtype=float)
    small = np.abs(z) < SERIES_SWITCH
    z2 = z * z
    series = 1.0 - z2 / 6.0 + z2 * z2 / 120.0 - z2 * z2 * z2 / 5040.0
    safe = np.where(small, 1.0, z)
    out = np.where(small, series, np.sin(safe) / safe)
    return out if out.ndim else float(out)


def sinhc(z):
    """``sinh(z)/z``, stable at the origin."""
    z = np.asarray(z, dtype=float)
    small = np.abs(z) < SERIES_SWITCH
    z2 = z * z
    series = 1.0 + z2 / 6.0 + z2 * z2 / 120.0 + z2 * z2 * z2 / 5040.0
    safe = np.where(small, 1.0, z)
    out = np.where(small, series, np.sinh(safe) / safe)
    return out if out.ndim else float(out)


def _scalar(x):
    x = np.asarray(x)
    return x if x.ndim else float(x)


def _check_mu(mu):
    if not mu >= 0.0:
        raise ValueError(f"mu must be >= 0, got {mu!r}")


@dataclass(frozen=True)
class BoundaryModel:
    """Base class for catalog entries.

    Subclasses override the ``_g``, ``_log_growth``, ``_reflection`` hooks and
    their derivatives.  All public methods broadcast over numpy arrays.

    Attributes
    ----------
    name : str
        Catalog identifier.
    alpha : float
        Internal-degrees factor (fermion -4, real scalar +1, photon +2).
    multiplicity : int
        Physical modes per positive root: 1 between plates, 2 for
        (anti)periodic compactification where ``+n`` and ``-n`` coincide.
    sigma : int
        Decay rate in ``exp(-sigma z)``: 2 for two plates, 1 for a circle of
        circumference ``l``.
    """

    name: str = field(init=False, default="")
    alpha: float = 1.0
    multiplicity: int = field(init=False, default=1)
    sigma: int = field(init=False, default=2)
    # quasi-period of the eigencondition in z; one root per period
    root_spacing: float = field(init=False, default=math.pi, repr=False)
    # offset of the root lattice in units of root_spacing, for count_estimate
    root_offset: float = field(init=False, default=0.0, repr=False)

    def __post_init__(self):
        if self.multiplicity not in (1, 2):
            raise ValueError("multiplicity must be 1 or 2")
        if self.sigma not in (1, 2):
            raise ValueError("sigma must be 1 or 2")

    # -- hooks -------------------------------------------------------------
    def _g(self, z, mu):
        raise NotImplementedError

    def _log_growth(self, z, mu):
        raise NotImplementedError

    def _log_growth_deriv(self, z, mu):
        raise NotImplementedError

    def _reflection(self, z, mu):
        raise NotImplementedError

    def _reflection_deriv(self, z, mu):
        return np.zeros_like(z)

    # -- public surface ----------------------------------------------------
    @property
    def params(self) -> dict:
        return {}

    @property
    def constant_reflection(self) -> float | None:
        """Value of ``R`` if it does not depend on ``z`` or ``mu``, else None."""
        return None

    def massless_reflection(self) -> float | None:
        """Constant value taken by ``R`` at ``mu = 0``, if any."""
        return self.constant_reflection

    def g(self, z, mu=0.0):
        """Eigencondition on the real axis; roots are ``lambda_n``."""
        _check_mu(mu)
        return _scalar(self._g(np.asarray(z, dtype=float), mu))

    def log_growth(self, z, mu=0.0):
        """``ln D(z)``, the divergent prefactor removed by regularization."""
        _check_mu(mu)
        return _scalar(self._log_growth(np.asarray(z, dtype=float), mu))

    def log_growth_deriv(self, z, mu=0.0):
        _check_mu(mu)
        return _scalar(self._log_growth_deriv(np.asarray(z, dtype=float), mu))

    def reflection(self, z, mu=0.0):
        _check_mu(mu)
        z = np.asarray(z, dtype=float)
        return _scalar(np.broadcast_to(self._reflection(z, mu), z.shape) * 1.0)

    def reflection_deriv(self, z, mu=0.0):
        _check_mu(mu)
        z = np.asarray(z, dtype=float)
        return _scalar(np.broadcast_to(self._reflection_deriv(z, mu), z.shape) * 1.0)

    def log_reflection_factor(self, z, mu=0.0):
        """``ln(1 + R(z) exp(-sigma z))``."""
        z = np.asarray(z, dtype=float)
        return _scalar(np.log1p(self.reflection(z, mu) * np.exp(-self.sigma * z)))

    def log_k(self, z, mu=0.0):
        """``ln K(z)`` through the decomposition; safe for any ``z > 0``."""
        return _scalar(
            np.asarray(self.log_growth(z, mu)) + np.asarray(self.log_reflection_factor(z, mu))
        )

    def k(self, z, mu=0.0):
        """``K(z) = G(iz)`` evaluated as ``exp(ln K)``."""
        return _scalar(np.exp(self.log_k(z, mu)))

    def count_estimate(self, cutoff: float) -> int:
        """Asymptotic number of positive roots in ``(0, cutoff]``."""
        return max(0, math.floor(cutoff / self.root_spacing - self.root_offset + 1e-12))

    def scaled(self, factor: float) -> "BoundaryModel":
        """Copy with ``alpha`` multiplied by ``factor``."""
        return replace(self, alpha=self.alpha * factor)


@dataclass(frozen=True)
class MITBag(BoundaryModel):
    """Dirac fermion with bag (no-flux) conditions on both plates."""

    alpha: float = -4.0

    def __post_init__(self):
        object.__setattr__(self, "name", "mit")
        super().__post_init__()

    def massless_reflection(self):
        return 1.0

    def _g(self, z, mu):
        return g_mit(z, mu)

    def _log_growth(self, z, mu):
        # ln[(1/2)(mu/z + 1) e^z]
        return np.log(z + mu) - np.log(z) + z - math.log(2.0)

    def _log_growth_deriv(self, z, mu):
        return 1.0 - mu / (z * (z + mu))

    def _reflection(self, z, mu):
        return _mit_reflection(z, mu)

    def _reflection_deriv(self, z, mu):
        s = z + mu
        with np.errstate(divide="ignore", invalid="ignore"):
            d = 2.0 * mu / (s * s)
        return np.where(s == 0.0, 0.0, d)

    def k(self, z, mu=0.0):
        return k_mit(z, mu)


def _mit_reflection(z, mu):
    s = z + mu
    with np.errstate(divide="ignore", invalid="ignore"):
        r = (z - mu) / s
    # z = mu = 0: the massless kernel has R = 1 for every z > 0
    return np.where(s == 0.0, 1.0, r)


@dataclass(frozen=True)
class Dirichlet(BoundaryModel):
    """Real scalar vanishing on both plates; roots ``n pi``."""

    def __post_init__(self):
        object.__setattr__(self, "name", "dirichlet")
        super().__post_init__()

    @property
    def constant_reflection(self):
        return -1.0

    def _g(self, z, mu):
        return sinc(z)

    def _log_growth(self, z, mu):
        return z - np.log(2.0 * z)

    def _log_growth_deriv(self, z, mu):
        return 1.0 - 1.0 / z

    def _reflection(self, z, mu):
        return -1.0


@dataclass(frozen=True)
class Neumann(Dirichlet):
    """Real scalar with vanishing normal derivative.

    The roots ``n pi`` coincide with Dirichlet.  The ``n = 0`` mode is
    separation independent and is removed together with the bulk term.
    """

    def __post_init__(self):
        super().__post_init__()
        object.__setattr__(self, "name", "neumann")


@dataclass(frozen=True)
class MixedDN(BoundaryModel):
    """Dirichlet on one plate, Neumann on the other; roots ``(n - 1/2) pi``."""

    def __post_init__(self):
        object.__setattr__(self, "name", "mixed-dn")
        object.__setattr__(self, "root_offset", -0.5)
        super().__post_init__()

    @property
    def constant_reflection(self):
        return 1.0

    def _g(self, z, mu):
        return np.cos(z)

    def _log_growth(self, z, mu):
        return z - math.log(2.0)

    def _log_growth_deriv(self, z, mu):
        return np.ones_like(z)

    def _reflection(self, z, mu):
        return 1.0


@dataclass(frozen=True)
class Robin(BoundaryModel):
    """Real scalar with ``(1 + beta d/dn) phi = 0`` on each plate.

    ``n`` is the outward normal.  ``beta = 0`` is Dirichlet and
    ``beta -> inf`` is Neumann.  Only ``beta >= 0`` is accepted; negative
    lengths can move roots off the real axis.
    """

    beta1: float = 0.0
    beta2: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "name", "robin")
        for b in (self.beta1, self.beta2):
            if not (0.0 <= b < math.inf):
                raise ValueError(f"Robin lengths must be finite and >= 0, got {b!r}")
        super().__post_init__()

    @property
    def params(self):
        return {"beta1": self.beta1, "beta2": self.beta2}

    @property
    def constant_reflection(self):
        if self.beta1 == 0.0 and self.beta2 == 0.0:
            return -1.0
        return None

    def _g(self, z, mu):
        b1, b2 = self.beta1, self.beta2
        # [(1 - b1 b2 z^2) sin z + (b1 + b2) z cos z] / z
        return (1.0 - b1 * b2 * z * z) * sinc(z) + (b1 + b2) * np.cos(z)

    def _log_growth(self, z, mu):
        return z + np.log1p(self.beta1 * z) + np.log1p(self.beta2 * z) - np.log(2.0 * z)

    def _log_growth_deriv(self, z, mu):
        b1, b2 = self.beta1, self.beta2
        return 1.0 + b1 / (1.0 + b1 * z) + b2 / (1.0 + b2 * z) - 1.0 / z

    def _reflection(self, z, mu):
        r1 = (1.0 - self.beta1 * z) / (1.0 + self.beta1 * z)
        r2 = (1.0 - self.beta2 * z) / (1.0 + self.beta2 * z)
        return -r1 * r2

    def _reflection_deriv(self, z, mu):
        b1, b2 = self.beta1, self.beta2
        r1 = (1.0 - b1 * z) / (1.0 + b1 * z)
        r2 = (1.0 - b2 * z) / (1.0 + b2 * z)
        d1 = -2.0 * b1 / (1.0 + b1 * z) ** 2
        d2 = -2.0 * b2 / (1.0 + b2 * z) ** 2
        return -(d1 * r2 + r1 * d2)


@dataclass(frozen=True)
class Periodic(BoundaryModel):
    """Real scalar on a circle of circumference ``l``; roots ``2 pi n``.

    The zero mode is dropped by the division by ``z``; each ``n > 0`` counts
    twice (``+n`` and ``-n``).
    """

    def __post_init__(self):
        object.__setattr__(self, "name", "periodic")
        object.__setattr__(self, "multiplicity", 2)
        object.__setattr__(self, "sigma", 1)
        object.__setattr__(self, "root_spacing", 2.0 * math.pi)
        super().__post_init__()

    @property
    def constant_reflection(self):
        return -1.0

    def _g(self, z, mu):
        return sinc(0.5 * z)

    def _log_growth(self, z, mu):
        return 0.5 * z - np.log(z)

    def _log_growth_deriv(self, z, mu):
        return 0.5 - 1.0 / z

    def _reflection(self, z, mu):
        return -1.0


@dataclass(frozen=True)
class Antiperiodic(BoundaryModel):
    """Real scalar with a sign flip around the circle; roots ``(2n - 1) pi``."""

    def __post_init__(self):
        object.__setattr__(self, "name", "antiperiodic")
        object.__setattr__(self, "multiplicity", 2)
        object.__setattr__(self, "sigma", 1)
        object.__setattr__(self, "root_spacing", 2.0 * math.pi)
        object.__setattr__(self, "root_offset", -0.5)
        super().__post_init__()

    @property
    def constant_reflection(self):
        return 1.0

    def _g(self, z, mu):
        return np.cos(0.5 * z)

    def _log_growth(self, z, mu):
        return 0.5 * z - math.log(2.0)

    def _log_growth_deriv(self, z, mu):
        return np.full_like(z, 0.5)

    def _reflection(self, z, mu):
        return 1.0


@dataclass(frozen=True)
class Electromagnetic(Dirichlet):
    """Photon between perfect conductors: two Dirichlet-like polarizations."""

    alpha: float = 2.0

    def __post_init__(self):
        super().__post_init__()
        object.__setattr__(self, "name", "em")


CATALOG = {
    "mit": MITBag,
    "dirichlet": Dirichlet,
    "neumann": Neumann,
    "mixed-dn": MixedDN,
    "robin": Robin,
    "periodic": Periodic,
    "antiperiodic": Antiperiodic,
    "em": Electromagnetic,
}


def get_model(name: str, **params) -> BoundaryModel:
    """Build a catalog model by name.

    >>> get_model("robin", beta1=0.5, beta2=0.0).name
    'robin'
    """
    try:
        cls = CATALOG[name]
    except KeyError:
        raise KeyError(
            f"unknown model {name!r}; choose one of: {', '.join(CATALOG)}"
        ) from None
    return cls(**params)


# -- MIT helpers ------------------------------------------------------------

def eigencondition_mit(x, mu):
    """``mu sin x + x cos x``; its nonzero roots are the MIT momenta."""
    x = np.asarray(x, dtype=float)
    return _scalar(mu * np.sin(x) + x * np.cos(x))


def g_mit(z, mu):
    """MIT eigencondition divided by ``z``: ``mu sin(z)/z + cos(z)``."""
    z = np.asarray(z, dtype=float)
    return _scalar(mu * np.asarray(sinc(z)) + np.cos(z))


def k_mit(z, mu):
    """``mu sinh(z)/z + cosh(z)``.

    Direct hyperbolic evaluation is used only up to ``DIRECT_LIMIT``; beyond
    it the value comes from ``D(z) (1 + R e^{-2z})``.
    """
    _check_mu(mu)
    z = np.asarray(z, dtype=float)
    if np.any(z < 0):
        raise ValueError("k_mit requires z >= 0")
    direct = z <= DIRECT_LIMIT
    zd = np.where(direct, z, 0.0)
    out = mu * np.asarray(sinhc(zd)) + np.cosh(zd)
    if not np.all(direct):
        zl = np.where(direct, 1.0, z)
        with np.errstate(over="ignore"):
            via = np.exp(MITBag()._log_growth(zl, mu) + np.log1p(_mit_reflection(zl, mu) * np.exp(-2.0 * zl)))
        out = np.where(direct, out, via)
    return _scalar(out)


def reflection(model: BoundaryModel, z, mu=0.0):
    """Reflection kernel ``R(z)`` of ``model``."""
    return model.reflection(z, mu)


def massless_zeta_weight(model: BoundaryModel) -> Fraction | None:
    """Rational weight ``w`` with ``e(0) = w * pi^2``, or None if unknown.

    For ``R = -1`` the kernel integral is ``-2 zeta(4) / sigma^3`` and for
    ``R = +1`` it is ``2 eta(4) / sigma^3``, with ``zeta(4) = pi^4/90`` and
    ``eta(4) = 7 pi^4 / 720``.
    """
    r0 = model.massless_reflection()
    if r0 is None:
        return None
    series = Fraction(-1, 90) if r0 < 0 else Fraction(7, 720)
    pref = Fraction(model.alpha).limit_denominator(1000) * model.multiplicity / 4
    return pref * 2 * series / model.sigma**3
