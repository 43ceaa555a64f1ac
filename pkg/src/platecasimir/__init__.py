"""Casimir energies of quantum fields between flat parallel surfaces.

The regularized energy per unit area is an integral of
``ln(1 + R(z) e^{-sigma z})`` over the imaginary-axis variable ``z``; see
:mod:`platecasimir.energy` for the assembled coefficient.
"""

__version__ = "0.1.0"

from .energy import (  # noqa: E402
    EnergyCoefficient,
    PhysicalResult,
    asymptotic_coefficient_mit,
    casimir_coefficient,
    force_per_area,
    massless_closed_form,
    series_coefficient,
    to_physical,
)
from .models import CATALOG, BoundaryModel, get_model  # noqa: E402
from .quadrature import QuadratureSpec, integrate_kernel, tail_bound  # noqa: E402
from .roots import RootList, count_estimate, find_roots  # noqa: E402
from .spectral import log_deriv_k, mittag_leffler_residual, partial_fraction_sum  # noqa: E402

__all__ = [
    "BoundaryModel", "CATALOG", "EnergyCoefficient", "PhysicalResult", "QuadratureSpec",
    "RootList", "asymptotic_coefficient_mit", "casimir_coefficient", "count_estimate",
    "find_roots", "force_per_area", "get_model", "integrate_kernel", "log_deriv_k",
    "massless_closed_form", "mittag_leffler_residual", "partial_fraction_sum",
    "series_coefficient", "tail_bound", "to_physical",
]
