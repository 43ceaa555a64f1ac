"""Self-check suites run by ``platecasimir check``."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .energy import (
    asymptotic_coefficient_mit, casimir_coefficient, closed_form_value, eta4_partial,
    prefactor, series_coefficient, zeta4_partial,
)
from .models import get_model
from .roots import find_roots, first_roots, residual_bounds, residuals
from .spectral import fit_tail, log_deriv_k, mittag_leffler_residual, partial_fraction_sum


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str

    def line(self) -> str:
        return f"{'PASS' if self.passed else 'FAIL'}  {self.name}: {self.detail}"


def _rel(a, b):
    return abs(a - b) / abs(b)


def closed_forms():
    out = []
    for name in ("mit", "dirichlet", "mixed-dn", "em", "periodic", "antiperiodic"):
        model = get_model(name)
        quad = casimir_coefficient(model, 0.0).e
        exact = closed_form_value(model)
        # the partial-sum oracle: zeta(4) or eta(4) summed term by term
        r0 = model.massless_reflection()
        partial = prefactor(model) * 2.0 / model.sigma**3 * (
            -zeta4_partial(200) if r0 < 0 else eta4_partial(200))
        dev = max(_rel(quad, exact), _rel(quad, partial))
        out.append(CheckResult(f"closed-form {name}", dev <= 1e-9,
                               f"e(0)={quad:.12g} exact={exact:.12g} rel={dev:.2e}"))
    return out


def mittag_leffler():
    out = []
    mit = get_model("mit")
    for mu in (0.0, 1.0):
        roots = first_roots(mit, 1000, mu)
        for z in (0.5, 1.0, 2.0, 5.0):
            res = {n: mittag_leffler_residual(mit, z, n, mu, roots) for n in (10, 100, 1000)}
            bound = 2 * z / math.pi**2 / 1000 * 1.2
            table = " ".join(f"N={n}:{r:.3e}" for n, r in res.items())
            out.append(CheckResult(f"sum rule mit mu={mu:g} z={z:g}", res[1000] <= bound,
                                   f"{table} bound={bound:.3e}"))
    roots0 = first_roots(mit, 1000, 0.0)
    tail = fit_tail(roots0)
    for z in (0.5, 1.0, 2.0, 5.0):
        dev = abs(partial_fraction_sum(roots0, z, tail) - math.tanh(z))
        out.append(CheckResult(f"tanh sum z={z:g}", dev <= 1e-6, f"|dev|={dev:.2e}"))
    roots = find_roots(mit, 100 * math.pi, tol=1e-12, mu=1.0)
    n = np.arange(1, len(roots) + 1)
    inside = bool(np.all((roots.roots > (n - 0.5) * math.pi) & (roots.roots < n * math.pi)))
    resid_ok = bool(np.all(residuals(mit, roots, 1.0) <= residual_bounds(mit, roots, 1.0)))
    first_ok = abs(roots[0] - 2.028757838) <= 1e-8
    out.append(CheckResult("mit roots mu=1 below 100 pi", len(roots) == 100 and inside and resid_ok and first_ok,
                           f"count={len(roots)} interlaced={inside} residuals={resid_ok} first={roots[0]:.12g}"))
    for name in ("dirichlet", "periodic", "antiperiodic", "mixed-dn"):
        model = get_model(name)
        ld = log_deriv_k(model, 1.0)
        res = mittag_leffler_residual(model, 1.0, 1000)
        bound = 2 / math.pi**2 / 1000 * 1.2
        out.append(CheckResult(f"sum rule {name} z=1", res <= bound, f"K'/K={ld:.12g} residual={res:.3e}"))
    return out


def oracles():
    out = []
    for name in ("dirichlet", "neumann", "mixed-dn", "periodic", "antiperiodic", "em"):
        model = get_model(name)
        for mu in (0.0, 0.5, 1.0, 2.0):
            q = casimir_coefficient(model, mu).e
            s = series_coefficient(model, mu)
            dev = _rel(q, s)
            out.append(CheckResult(f"dual path {name} mu={mu:g}", dev <= 1e-8, f"quad={q:.12g} series={s:.12g} rel={dev:.2e}"))
    for mu in (0.0, 0.5, 1.0):
        d = casimir_coefficient(get_model("dirichlet"), mu).e
        n = casimir_coefficient(get_model("neumann"), mu).e
        r0 = casimir_coefficient(get_model("robin", beta1=0.0, beta2=0.0), mu).e
        rinf = casimir_coefficient(get_model("robin", beta1=1e6, beta2=1e6), mu).e
        out.append(CheckResult(f"robin(0,0)=dirichlet mu={mu:g}", _rel(r0, d) <= 1e-10, f"rel={_rel(r0, d):.2e}"))
        out.append(CheckResult(f"robin(1e6,1e6)=neumann mu={mu:g}", _rel(rinf, n) <= 1e-4, f"rel={_rel(rinf, n):.2e}"))
    return out


def asymptotics():
    mit = get_model("mit")
    out = []
    ratios = {}
    for mu in (8.0, 12.0):
        ratios[mu] = casimir_coefficient(mit, mu).e / asymptotic_coefficient_mit(mu)
    out.append(CheckResult("asymptotic ratio mu=8", 0.9 <= ratios[8.0] <= 1.1, f"ratio={ratios[8.0]:.6f}"))
    out.append(CheckResult("asymptotic ratio mu=12 closer", abs(ratios[12.0] - 1) < abs(ratios[8.0] - 1),
                           f"ratio={ratios[12.0]:.6f}"))
    grid = np.arange(0, 81) * 0.25
    es = np.array([casimir_coefficient(mit, mu).e for mu in grid])
    mono = bool(np.all(es < 0) and np.all(np.diff(np.abs(es)) < 0))
    out.append(CheckResult("mit e(mu) negative, |e| decreasing on 0..20", mono, f"e(20)/e(0)={es[-1] / es[0]:.3e}"))
    out.append(CheckResult("mit e(20)/e(0) < 1e-15", es[-1] / es[0] < 1e-15, f"{es[-1] / es[0]:.3e}"))
    return out


SUITES = {
    "closed-forms": closed_forms,
    "mittag-leffler": mittag_leffler,
    "oracles": oracles,
    "asymptotics": asymptotics,
}


def run_suite(name: str) -> list[CheckResult]:
    if name == "all":
        return [r for fn in SUITES.values() for r in fn()]
    return SUITES[name]()
