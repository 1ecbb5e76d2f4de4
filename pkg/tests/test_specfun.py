import math

import mpmath
import pytest
from hypothesis import given, settings, strategies as st

from siegelres import specfun
from siegelres.errors import DomainError, PoleError


def test_zeta_values():
    assert specfun.riemann_zeta(2) == pytest.approx(math.pi ** 2 / 6, rel=1e-14)
    assert specfun.riemann_zeta(0) == pytest.approx(-0.5, rel=1e-14)
    assert specfun.riemann_zeta(-2) == 0


def test_zeta_pole():
    with pytest.raises(PoleError):
        specfun.riemann_zeta(1)


def test_zeta_deriv_at_zero():
    assert specfun.riemann_zeta_deriv(0) == pytest.approx(-0.5 * math.log(2 * math.pi), rel=1e-13)


def test_logderiv_consistent():
    s = 2.7
    assert specfun.zeta_logderiv(s) == pytest.approx(
        specfun.riemann_zeta_deriv(s) / specfun.riemann_zeta(s), rel=1e-13)


@pytest.mark.parametrize("s", [0.3, 2.5, -1.5, 0.5 + 3j])
def test_xi_functional_equation(s):
    assert complex(specfun.xi_completed(s)) == pytest.approx(complex(specfun.xi_completed(1 - s)), rel=1e-12)


def test_gamma_m_degree_two():
    s = 2.3
    expected = math.sqrt(math.pi) * math.gamma(s) * math.gamma(s - 0.5)
    assert specfun.gamma_m(2, s) == pytest.approx(expected, rel=1e-14)


def test_gamma_m_pole_names_factor():
    with pytest.raises(PoleError) as exc:
        specfun.gamma_m(2, 0.5)
    assert "Gamma" in str(exc.value)


def test_log_gamma_m_derivative_matches_digamma():
    s = 1.7
    expected = specfun.digamma(s) + specfun.digamma(s - 0.5) + specfun.digamma(s - 1)
    assert specfun.log_gamma_m_derivative(3, s) == pytest.approx(expected, rel=1e-13)


def test_v_constant():
    assert specfun.v_constant(1) == 1.0
    assert specfun.v_constant(2) == pytest.approx(specfun.xi_completed(2), rel=1e-15)
    with pytest.raises(DomainError):
        specfun.v_constant(0)


def test_dedekind_eta_at_i():
    expected = math.gamma(0.25) / (2 * math.pi ** 0.75)
    assert abs(specfun.dedekind_eta(1j)) == pytest.approx(expected, rel=1e-13)


def test_dedekind_eta_modular():
    z = 0.2 + 0.9j
    lhs = specfun.dedekind_eta(-1 / z)
    rhs = complex(mpmath.sqrt(-1j * z)) * specfun.dedekind_eta(z)
    assert complex(lhs) == pytest.approx(rhs, rel=1e-12)


def test_bessel_k0_frozen():
    # DERIVED: mpmath.besselk(0, 1) at 30 digits
    assert specfun.bessel_k(0, 1.0) == pytest.approx(0.42102443824070834, rel=1e-15)


def test_divisors_and_sigma():
    assert specfun.divisors(12) == [1, 2, 3, 4, 6, 12]
    assert specfun.sigma_power(12, 1) == 28
    assert specfun.sigma_power(6, -1) == pytest.approx(1 + 1 / 2 + 1 / 3 + 1 / 6)


@given(st.integers(1, 300), st.integers(1, 300))
def test_sigma_multiplicative(a, b):
    if math.gcd(a, b) != 1:
        return
    assert specfun.sigma_power(a * b, 0) == specfun.sigma_power(a, 0) * specfun.sigma_power(b, 0)


@given(st.integers(-200, 200).filter(lambda d: d % 4 in (0, 1) and d != 0),
       st.integers(1, 60), st.integers(1, 60))
@settings(max_examples=80)
def test_kronecker_multiplicative_in_n(d, a, b):
    assert specfun.kronecker_symbol(d, a * b) == specfun.kronecker_symbol(d, a) * specfun.kronecker_symbol(d, b)


def test_dirichlet_l_minus4():
    # L(1, chi_-4) = pi / 4
    assert specfun.dirichlet_l(1, -4) == pytest.approx(math.pi / 4, rel=1e-12)


def test_dirichlet_l_square_pole():
    with pytest.raises(PoleError):
        specfun.dirichlet_l(1, 1)


def test_precision_roundtrip():
    cfg = specfun.PrecisionConfig(abs_tol=1e-9, rel_tol=1e-7, max_terms=10, quadrature_depth=3)
    assert specfun.PrecisionConfig.from_json(cfg.to_json()) == cfg
    with pytest.raises(ValueError):
        specfun.PrecisionConfig(abs_tol=0)
