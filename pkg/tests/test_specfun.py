import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.integrate import quad

from hulthen import specfun as sf
from hulthen.errors import DomainError

mpmath.mp.dps = 40


def test_ln_gamma_known_values():
    assert sf.ln_gamma(1.0) == 0.0
    assert sf.ln_gamma(0.5) == pytest.approx(math.log(math.sqrt(math.pi)), rel=1e-15)
    assert sf.ln_gamma(21.0) == pytest.approx(math.log(math.factorial(20)), rel=1e-15)


@pytest.mark.parametrize("bad", [0.0, -2.5, math.inf, math.nan])
def test_ln_gamma_domain(bad):
    with pytest.raises(DomainError):
        sf.ln_gamma(bad)


def test_beta_values():
    assert sf.beta(1, 1) == pytest.approx(1.0, rel=1e-15)
    assert sf.beta(2, 3) == pytest.approx(1.0 / 12.0, rel=1e-15)
    with pytest.raises(DomainError):
        sf.beta(0, 1)


def test_beta_against_quadrature():
    eps, l = 39.5, 0
    a, b = 2 * eps, 2 * l + 3
    ref, _ = quad(lambda s: s ** (a - 1) * (1 - s) ** (b - 1), 0, 1, epsabs=0, epsrel=1e-13, limit=200)
    assert sf.beta(a, b) == pytest.approx(ref, rel=1e-10)


def _jacobi_mp(n, a, b, x):
    # explicit binomial sum at 40 digits; mpmath.jacobi itself stalls at exact zeros
    a, b, x = mpmath.mpf(a), mpmath.mpf(b), mpmath.mpf(x)
    return mpmath.fsum(
        mpmath.binomial(n + a, n - k) * mpmath.binomial(n + b, k) * ((x - 1) / 2) ** k * ((x + 1) / 2) ** (n - k)
        for k in range(n + 1)
    )


def test_jacobi_low_degree():
    x = np.linspace(-1, 1, 7)
    assert np.all(sf.jacobi_eval(sf.JacobiParams(0, 1.3, 2.0), x) == 1.0)
    a, b = 1.7, 0.4
    expected = (a - b) / 2 + (a + b + 2) * x / 2
    np.testing.assert_allclose(sf.jacobi_eval(sf.JacobiParams(1, a, b), x), expected, rtol=1e-15)


def test_jacobi_recurrence_against_sum_and_mpmath():
    p = sf.JacobiParams(3, 2.7, 3.0)
    rec = sf.jacobi_eval(p, 0.3)
    assert rec == pytest.approx(sf.jacobi_sum(p, 0.3), rel=1e-12)
    assert rec == pytest.approx(float(mpmath.jacobi(3, 2.7, 3.0, 0.3)), rel=1e-12)


@settings(max_examples=60, deadline=None)
@given(
    st.integers(min_value=0, max_value=8),
    st.floats(min_value=-0.9, max_value=60.0),
    st.floats(min_value=-0.9, max_value=12.0),
    st.floats(min_value=-1.0, max_value=1.0),
)
def test_jacobi_against_mpmath(n, a, b, x):
    got = sf.jacobi_eval(sf.JacobiParams(n, a, b), x)
    ref = float(_jacobi_mp(n, a, b, x))
    scale = sf.jacobi_at_one(sf.JacobiParams(n, a, b)) + abs(ref)
    assert abs(got - ref) <= 1e-12 * scale


def test_jacobi_symmetry_and_endpoint():
    p, q = sf.JacobiParams(4, 1.5, 3.0), sf.JacobiParams(4, 3.0, 1.5)
    x = np.linspace(-1, 1, 9)
    np.testing.assert_allclose(sf.jacobi_eval(p, -x), sf.jacobi_eval(q, x), rtol=1e-13)
    assert sf.jacobi_eval(p, 1.0) == pytest.approx(sf.jacobi_at_one(p), rel=1e-14)
    ref = math.gamma(4 + 1.5 + 1) / (math.factorial(4) * math.gamma(2.5))
    assert sf.jacobi_at_one(p) == pytest.approx(ref, rel=1e-14)


def test_jacobi_params_validation():
    with pytest.raises(DomainError):
        sf.JacobiParams(-1, 0, 0)
    with pytest.raises(DomainError):
        sf.JacobiParams(1.5, 0, 0)
    with pytest.raises(DomainError):
        sf.JacobiParams(2, -1.0, 0)


def test_hyp2f1_terminating_basics():
    assert sf.hyp2f1_terminating(0, 3.2, 1.1, 0.7) == 1.0
    assert sf.hyp2f1_terminating(3, 3.2, 1.1, 0.0) == 1.0
    assert sf.hyp2f1_terminating(3, 2.5, 1.5, 0.4) == pytest.approx(
        float(mpmath.hyp2f1(-3, 2.5, 1.5, 0.4)), rel=1e-14
    )


def test_hyp2f1_jacobi_identity_with_prefactor():
    n, a, b, x = 2, 1.4, 3.0, 0.25
    lead = math.gamma(a + 1 + n) / (math.gamma(a + 1) * math.factorial(n))
    via_f = lead * sf.hyp2f1_terminating(n, n + a + b + 1, a + 1, x)
    assert via_f == pytest.approx(sf.jacobi_eval(sf.JacobiParams(n, a, b), 1 - 2 * x), rel=1e-13)
    # without the prefactor the identity fails for n > 0
    assert abs(sf.hyp2f1_terminating(n, n + a + b + 1, a + 1, x) - via_f) > 0.1


def test_hyp2f1_pole_and_bad_degree():
    with pytest.raises(DomainError):
        sf.hyp2f1_terminating(3, 1.0, -1.0, 0.5)
    with pytest.raises(DomainError):
        sf.hyp2f1_terminating(-1, 1.0, 1.0, 0.5)


def test_legendre_rule_exactness():
    rule = sf.gauss_rule(2)
    assert rule.integrate(lambda s: s**3) == pytest.approx(0.25, rel=1e-15)


def test_legendre_64_on_beta_defining_integral():
    # Endpoint factor s**1.5 limits Gauss-Legendre to algebraic convergence.
    big = sf.gauss_rule(64)
    ref = sf.beta(2.5, 4.5)
    assert big.integrate(lambda s: s**1.5 * (1 - s) ** 3.5) == pytest.approx(ref, rel=1e-12)


def test_legendre_64_on_beta_trigonometric_form():
    # B(a, b) = 2 int_0^{pi/2} sin^{2a-1} cos^{2b-1}; smooth, so the rule converges fast.
    big = sf.gauss_rule(64)
    h = math.pi / 2
    got = big.integrate(lambda t: 2 * h * np.sin(h * t) ** 4 * np.cos(h * t) ** 8)
    assert got == pytest.approx(sf.beta(2.5, 4.5), rel=1e-14)


def test_jacobi_rule_mass_and_exactness():
    eps, l = 19.0, 1
    rule = sf.gauss_rule(1, sf.RuleKind.JACOBI, 2 * eps - 1, 2 * l + 2)
    assert rule.integrate(lambda s: np.ones_like(s)) == pytest.approx(sf.beta(2 * eps, 2 * l + 3), rel=1e-14)
    # m nodes integrate polynomials up to degree 2m-1 exactly
    rule = sf.gauss_rule(4, "jacobi", 2.5, 1.0)
    got = rule.integrate(lambda s: s**7)
    assert got == pytest.approx(sf.beta(2.5 + 8, 2.0), rel=1e-13)
    assert np.all(np.diff(rule.nodes) > 0)
    assert np.all((rule.nodes > 0) & (rule.nodes < 1))


def test_gauss_rule_validation():
    with pytest.raises(ValueError):
        sf.gauss_rule(0)
    with pytest.raises(DomainError):
        sf.gauss_rule(3, sf.RuleKind.JACOBI, -1.0, 0.0)
