import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from scipy.integrate import quad

from hnoma.special import QuadratureSpec, erf, erfcx, gauss_chebyshev_integrate


def maclaurin_erf(x: float) -> float:
    """Alternating Maclaurin series, summed until terms stop mattering."""
    total, n, term = 0.0, 0, x
    while True:
        contrib = term / (2 * n + 1)
        total += contrib
        if abs(contrib) < 1e-18:
            break
        n += 1
        term *= -x * x / n
    return 2.0 / math.sqrt(math.pi) * total


def test_erf_zero():
    assert erf(0.0) == 0.0


def test_erf_one_against_series():
    assert abs(erf(1.0) - maclaurin_erf(1.0)) < 1e-15
    assert erf(1.0) == pytest.approx(0.84270079, abs=1e-8)


@pytest.mark.parametrize("x", [0.1, 0.5, 1.3, 2.0, 2.4999, 2.5, 3.0])
def test_erf_matches_series(x):
    assert erf(x) == pytest.approx(maclaurin_erf(x), abs=1e-13)


def test_erf_dense_against_math():
    xs = np.linspace(-6, 6, 4801)
    assert np.max(np.abs(erf(xs) - np.array([math.erf(x) for x in xs]))) < 1e-8


@given(st.floats(min_value=-50, max_value=50))
def test_erf_odd(x):
    assert erf(-x) == -erf(x)
    assert -1.0 <= erf(x) <= 1.0


def test_erf_saturates():
    assert erf(30.0) == 1.0 and erf(-30.0) == -1.0


@pytest.mark.parametrize("x", [-3.0, -0.5, 0.0, 0.7, 2.0, 2.6, 5.0, 12.0])
def test_erfcx_definition(x):
    direct = math.exp(x * x) * math.erfc(x)
    assert erfcx(x) == pytest.approx(direct, rel=1e-12)


def test_erfcx_large_argument():
    # erfcx(x) ~ 1 / (x sqrt(pi)) (1 - 1/(2x^2))
    x = 1e4
    assert erfcx(x) == pytest.approx(1 / (x * math.sqrt(math.pi)) * (1 - 0.5 / x**2), rel=1e-12)


def test_quadrature_nodes():
    nodes = QuadratureSpec(7).nodes
    assert np.all(np.diff(nodes) < 0)
    assert np.all(np.abs(nodes) < 1)
    assert np.allclose(nodes, -nodes[::-1], atol=1e-15)
    with pytest.raises(ValueError):
        QuadratureSpec(0)


def test_gc_constant_two_nodes():
    assert gauss_chebyshev_integrate(lambda x: 1.0, 0.0, 2.0, 2) == pytest.approx(
        math.pi * math.sqrt(2) / 2, rel=1e-15
    )


def test_gc_constant_converges():
    assert gauss_chebyshev_integrate(lambda x: 1.0, 0.0, 2.0, 200) == pytest.approx(2.0, abs=1e-4)


@pytest.mark.parametrize("n", [1, 2, 5, 64])
def test_gc_odd_function(n):
    assert abs(gauss_chebyshev_integrate(lambda x: x, -1.0, 1.0, n)) < 1e-15


def test_gc_positive_for_positive_integrand():
    assert gauss_chebyshev_integrate(np.exp, 1.0, 3.0, 10) > 0


def test_gc_against_adaptive_quadrature():
    f = lambda x: np.exp(-x) / (1 + x * x)
    ref = quad(f, 0.2, 1.7, epsabs=1e-14)[0]
    errs = [abs(gauss_chebyshev_integrate(f, 0.2, 1.7, n) - ref) for n in (100, 200)]
    assert errs[0] < 1e-4 * ref
    # endpoint compensation makes the rule second order
    assert errs[0] / errs[1] == pytest.approx(4.0, rel=0.01)


def test_gc_rejects_empty_interval():
    with pytest.raises(ValueError):
        gauss_chebyshev_integrate(np.exp, 1.0, 1.0, 5)
