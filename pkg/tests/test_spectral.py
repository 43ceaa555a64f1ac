import math

import numpy as np
import pytest

from platecasimir.models import CATALOG, get_model
from platecasimir.roots import first_roots
from platecasimir.spectral import (
    TailModel, fit_tail, log_deriv_k, mittag_leffler_residual, partial_fraction_sum,
)

MODELS = [get_model(n) for n in CATALOG if n != "robin"] + [
    get_model("robin", beta1=1.0, beta2=1.0), get_model("robin", beta1=0.1, beta2=5.0)]


@pytest.fixture(scope="module")
def mit_roots():
    return {mu: first_roots(get_model("mit"), 1000, mu) for mu in (0.0, 1.0)}


def test_log_deriv_massless_mit_is_tanh():
    m = get_model("mit")
    assert log_deriv_k(m, 1.0) == pytest.approx(0.7615941560, abs=1e-10)
    assert log_deriv_k(m, 40.0) == pytest.approx(1.0, abs=1e-15)
    assert log_deriv_k(m, 0.0) == 0.0


@pytest.mark.parametrize("model", MODELS, ids=lambda m: f"{m.name}{m.params}")
@pytest.mark.parametrize("mu", [0.0, 1.0])
def test_log_deriv_matches_finite_difference(model, mu):
    h = 1e-5
    for z in np.geomspace(0.1, 50.0, 30):
        fd = (model.log_k(z + h, mu) - model.log_k(z - h, mu)) / (2 * h)
        assert abs(log_deriv_k(model, z, mu) - fd) < 1e-8


def test_partial_fraction_tanh(mit_roots):
    roots = mit_roots[0.0]
    plain = partial_fraction_sum(roots, 1.0)
    tailed = partial_fraction_sum(roots, 1.0, fit_tail(roots))
    assert abs(plain - math.tanh(1.0)) < 1e-3
    assert abs(tailed - math.tanh(1.0)) < 1e-6


def test_partial_fraction_trivial_cases(mit_roots):
    roots = mit_roots[1.0]
    assert partial_fraction_sum(roots, 1e-300) == pytest.approx(0.0, abs=1e-290)
    lam = roots[0]
    assert partial_fraction_sum(roots.head(1), lam) == pytest.approx(1.0 / lam, rel=1e-15)


def test_fitted_tail_for_massless_mit(mit_roots):
    tail = fit_tail(mit_roots[0.0])
    assert tail.density == pytest.approx(1.0, rel=1e-12)
    assert tail.offset == pytest.approx(-0.5, abs=1e-8)
    assert tail.start == 1000


def test_tail_sum_against_brute_force():
    tail = TailModel(offset=-0.5, density=1.0, start=50)
    n = np.arange(51, 2_000_001, dtype=float)
    z = 2.0
    brute = np.sum(2 * z / (z * z + ((n - 0.5) * math.pi) ** 2)[::-1])
    # remaining terms beyond the brute-force range ~ 2z / (pi^2 N)
    brute += 2 * z / (math.pi**2 * 2_000_000)
    assert tail.tail_sum(z) == pytest.approx(brute, rel=1e-9)
    assert tail.tail_sum(z) <= tail.bound(z)


def test_residual_decays_like_one_over_n():
    m = get_model("mit")
    ratio = mittag_leffler_residual(m, 1.0, 10) / mittag_leffler_residual(m, 1.0, 100)
    assert 10 / 1.5 <= ratio <= 10 * 1.5


def test_residual_zero_at_origin():
    for m in MODELS:
        assert mittag_leffler_residual(m, 0.0, 5) == 0.0


def test_residual_bound_mu1(mit_roots):
    res = mittag_leffler_residual(get_model("mit"), 2.0, 1000, 1.0, mit_roots[1.0])
    assert res <= 2 * 2 / (math.pi**2 * 1000) * 1.1


@pytest.mark.parametrize("model", MODELS, ids=lambda m: f"{m.name}{m.params}")
def test_residual_bound_all_models(model):
    mu = 1.0 if model.name == "mit" else 0.0
    roots = first_roots(model, 1000, mu)
    for z in (0.5, 1.0, 2.0, 5.0):
        for n in (100, 1000):
            res = mittag_leffler_residual(model, z, n, mu, roots)
            assert res <= 2 * z / math.pi**2 / n * 1.2
