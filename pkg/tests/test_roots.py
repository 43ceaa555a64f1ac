import math

import numpy as np
import pytest

from platecasimir.exceptions import MissedRootSuspicion
from platecasimir.models import get_model
from platecasimir.roots import (
    count_estimate, find_roots, first_roots, residual_bounds, residuals,
)


def bisect(f, lo, hi, tol=1e-13):
    flo = f(lo)
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if (f(mid) < 0) == (flo < 0):
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def test_massless_mit_roots_are_half_integers():
    r = find_roots(get_model("mit"), 10.0)
    np.testing.assert_allclose(r.roots, np.array([0.5, 1.5, 2.5]) * math.pi, atol=1e-12)


def test_mit_first_root_mu1():
    oracle = bisect(lambda x: math.tan(x) + x, math.pi / 2 + 1e-9, math.pi - 1e-9)
    r = find_roots(get_model("mit"), 3.0, tol=1e-9, mu=1.0, check=False)
    assert len(r) == 1
    assert r[0] == pytest.approx(oracle, abs=1e-9)
    assert r[0] == pytest.approx(2.028757838, abs=1e-8)


def test_heavy_mass_first_root_approaches_pi():
    firsts = [find_roots(get_model("mit"), 4.0, mu=mu, check=False)[0] for mu in (10.0, 100.0, 1e4)]
    assert all(f < math.pi for f in firsts)
    assert math.pi - firsts[-1] < 1e-3
    assert np.all(np.diff(firsts) > 0)


@pytest.mark.parametrize("name, cutoff, expected", [
    ("mit", 100 * math.pi, 100),
    ("mit", math.pi / 4, 0),
    ("dirichlet", 10 * math.pi, 10),
    ("mixed-dn", 10 * math.pi, 10),
    ("periodic", 20 * math.pi, 10),
    ("antiperiodic", 20 * math.pi, 10),
])
def test_count_estimate(name, cutoff, expected):
    assert count_estimate(get_model(name), cutoff) == expected


@pytest.mark.parametrize("name", ["mit", "dirichlet", "neumann", "mixed-dn", "periodic", "antiperiodic", "em"])
def test_counts_agree_with_estimate(name):
    m = get_model(name)
    cutoff = 40.3 * math.pi
    assert abs(len(find_roots(m, cutoff)) - count_estimate(m, cutoff)) <= 1


def test_bracket_invariants():
    tol = 1e-10
    r = find_roots(get_model("robin", beta1=1.0, beta2=2.0), 60.0, tol=tol)
    assert np.all(np.diff(r.roots) > 0)
    assert r.roots[0] > 0
    lo, hi = r.brackets[:, 0], r.brackets[:, 1]
    assert np.all((lo <= r.roots) & (r.roots <= hi))
    assert np.all(hi - lo <= tol)
    assert np.all(residuals(get_model("robin", beta1=1.0, beta2=2.0), r) <= residual_bounds(
        get_model("robin", beta1=1.0, beta2=2.0), r))


@pytest.mark.parametrize("n", [1, 5, 20])
def test_mit_interlacing(n):
    for mu in (0.5, 1.0, 2.0, 10.0):
        lam = first_roots(get_model("mit"), 20, mu).roots[n - 1]
        assert (n - 0.5) * math.pi < lam < n * math.pi


def test_mit_roots_increase_with_mu():
    mus = [0.0, 0.5, 1.0, 2.0, 10.0]
    table = np.array([first_roots(get_model("mit"), 20, mu).roots for mu in mus])
    assert np.all(np.diff(table, axis=0) > 0)
    np.testing.assert_allclose(table[0], (np.arange(1, 21) - 0.5) * math.pi, atol=1e-11)


def test_deterministic():
    m = get_model("mit")
    a = find_roots(m, 200.0, mu=0.7)
    b = find_roots(m, 200.0, mu=0.7)
    assert a.roots.tobytes() == b.roots.tobytes()
    assert a.brackets.tobytes() == b.brackets.tobytes()


def test_origin_is_not_a_root():
    for name in ("mit", "dirichlet", "mixed-dn", "periodic", "antiperiodic", "robin"):
        assert get_model(name).g(0.0) != 0.0


def test_coarse_scan_raises_missed_root():
    with pytest.raises(MissedRootSuspicion):
        find_roots(get_model("mit"), 30 * math.pi, step=2.1 * math.pi)


def test_bad_arguments():
    with pytest.raises(ValueError):
        find_roots(get_model("mit"), -1.0)
    with pytest.raises(ValueError):
        find_roots(get_model("mit"), 5.0, tol=0.0)
