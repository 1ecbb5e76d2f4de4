import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from siegelres import residue, specfun
from siegelres.errors import ConvergenceError, DomainError, MissingInputError
from siegelres.symcore import Rank1Form

Y = np.array([[0.8, 0.3], [0.3, 1.1]])


def test_upper_half_point_validation():
    with pytest.raises(DomainError):
        residue.UpperHalfPoint(np.zeros((2, 2)), -np.eye(2))
    assert residue.UpperHalfPoint(np.zeros((2, 2)), np.eye(2)).m == 2


def test_alpha_beta_degree_two():
    d = np.linalg.det(Y)
    assert residue.alpha_m(Y, 1) == pytest.approx(72 / math.pi ** 2 * d, rel=1e-13)
    # closed form of beta'_2(y, 1)
    z2 = specfun.riemann_zeta(2)
    expected = (2 * math.pi ** 2 * math.sqrt(d) / z2 ** 2
                * (2 * math.log(2) + 0.5 * math.log(d) - specfun.EULER_GAMMA
                   + 2 * specfun.riemann_zeta_deriv(0) + 3 * specfun.riemann_zeta_deriv(2) / z2))
    assert residue.beta_m_prime(Y, 1) == pytest.approx(expected, rel=1e-12)


@pytest.mark.parametrize("m", [2, 3, 4])
def test_derivatives_match_differences(m):
    y = np.eye(m) + 0.1 * np.ones((m, m))
    s, h = m / 2, 1e-5
    for f, fp in ((residue.alpha_m, residue.alpha_m_prime), (residue.beta_m, residue.beta_m_prime)):
        num = (f(y, s + h) - f(y, s - h)) / (2 * h)
        assert fp(y, s) == pytest.approx(num, rel=1e-7)


@given(st.integers(2, 5), st.integers(0, 10 ** 6))
@settings(max_examples=20, deadline=None)
def test_double_poles_cancel(m, seed):
    rng = np.random.default_rng(seed)
    a = rng.normal(size=(m, m))
    y = a @ a.T / m + 0.5 * np.eye(m)
    A, B = residue.A_minus2(y), residue.B_minus2(y)
    assert abs(A + B) <= 1e-10 * abs(A)


def test_expanded_products_cancel_each_other():
    y = np.eye(3) * 1.3
    assert residue.explicit_B_minus2(y) == pytest.approx(-residue.explicit_A_minus2(y), rel=1e-12)


def test_constant_term_frozen_and_scaling():
    # DERIVED: Laurent data at y = 1, confirmed by the limit extrapolation
    assert residue.residue_A_constant(np.eye(2)) == pytest.approx(-0.8198993982733094, rel=1e-12)
    # A^(2) equals 18 sqrt(det y)/pi^2 (gamma/2 + log(y11/4pi)/2 - log|eta(W)|^2)
    from siegelres.zetalattice import KroneckerData
    W = KroneckerData.of(Y).W
    eta = abs(specfun.dedekind_eta(W))
    closed = (18 * math.sqrt(np.linalg.det(Y)) / math.pi ** 2
              * (specfun.EULER_GAMMA / 2 + 0.5 * math.log(Y[0, 0] / (4 * math.pi)) - 2 * math.log(eta)))
    assert residue.residue_A_constant(Y) == pytest.approx(closed, rel=1e-12)


def test_laurent_pieces_combine():
    a, b = residue.laurent_A(Y), residue.laurent_B(Y)
    assert a.c_minus1 + b.c_minus1 == pytest.approx(residue.residue_A_constant(Y), rel=1e-12)


def test_B_coefficient():
    assert residue.residue_B_coefficient(np.eye(2)) == pytest.approx(36 / math.pi ** 3, rel=1e-14)
    assert residue.residue_B_coefficient(2 * np.eye(2)) == pytest.approx(4 * 36 / math.pi ** 3, rel=1e-14)


def test_next_point():
    assert residue.residue_at_next_point(2) == pytest.approx(45 / math.pi ** 2, rel=1e-14)


def test_classify():
    assert residue.classify_singularity(2, 1, 0) == "double_pole"
    assert residue.classify_singularity(2, 2, 0) == "double_pole"
    assert residue.classify_singularity(2, 2, 1) == "simple_pole"
    assert residue.classify_singularity(2, 2, 2) == "holomorphic"
    with pytest.raises(DomainError):
        residue.classify_singularity(2, 1, 2)


def test_report_roundtrip_and_symmetry():
    rep = residue.residue_fourier_series(1j * np.eye(2), T=4)
    back = residue.ResidueReport.from_json(rep.to_json())
    assert back.to_json() == rep.to_json()
    coeffs = {(h.t, h.w): c for h, c in rep.fourier_terms}
    for (t, w), c in coeffs.items():
        assert coeffs[(-t, w)] == pytest.approx(c, rel=1e-12)
    assert rep.value_at(np.zeros((2, 2))).imag == pytest.approx(0, abs=1e-14)


def test_report_tolerance_guard():
    with pytest.raises(ConvergenceError):
        residue.residue_fourier_series(1j * np.eye(2) * 0.3, T=1, tol=1e-30)


def test_degree3_needs_constant():
    with pytest.raises(MissingInputError):
        residue.residue_fourier_series(1j * np.eye(3), T=1)


def test_limit_check():
    rep = residue.residue_limit_check()
    assert rep.constant_estimate == pytest.approx(rep.constant_expected, rel=1e-8)
    assert rep.coefficient_estimate == pytest.approx(rep.coefficient_expected, rel=1e-8)
    rep2 = residue.residue_limit_check(h=Rank1Form(-3, (1, 2)))
    assert rep2.coefficient_estimate == pytest.approx(rep2.coefficient_expected, rel=1e-6)


def test_fourier_terms_cheap_parts():
    z = residue.UpperHalfPoint(np.zeros((2, 2)), np.eye(2))
    assert residue.fourier_term_F(0, 0, z, 3.0) == 1.0
    # F_{0,1,0} carries zeta_1(2y, 2s-1) and blows up toward s = 1
    assert residue.fourier_term_F(1, 0, z, 1.05) > residue.fourier_term_F(1, 0, z, 1.2)
    with pytest.raises(DomainError):
        residue.eisenstein_via_fourier(z, 1.5)
