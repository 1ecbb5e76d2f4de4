import math

import numpy as np
import pytest

from siegelres import oracle, specfun, zetalattice
from siegelres.errors import MissingInputError


def test_epstein_identity_frozen():
    # DERIVED: half sum over Z^2 of (a^2+b^2)^-2 = 2 zeta(2) beta(2)
    assert zetalattice.epstein_zeta(np.eye(2), 2.0) == pytest.approx(3.01340601984597, rel=1e-12)
    catalan = 0.915965594177219
    assert zetalattice.epstein_zeta(np.eye(2), 2.0) == pytest.approx(2 * math.pi ** 2 / 6 * catalan, rel=1e-12)


def test_epstein_special_values():
    g = np.array([[1.0, 0.3], [0.3, 1.4]])
    assert zetalattice.epstein_zeta(g, 0) == pytest.approx(-0.5)
    assert zetalattice.epstein_zeta(g, -1) == 0


def test_epstein_theta_vs_direct():
    g = np.array([[1.0, 0.3], [0.3, 1.4]])
    assert zetalattice.epstein_zeta(g, 3.0) == pytest.approx(zetalattice.epstein_zeta(g, 3.0, method="direct"), rel=1e-8)


def test_functional_equation():
    g = np.array([[1.0, 0.3], [0.3, 1.4]])
    s = 0.3
    lhs = zetalattice.epstein_completed(g, s)
    rhs = zetalattice.epstein_completed(np.linalg.inv(g), 1 - s) / math.sqrt(np.linalg.det(g))
    assert lhs == pytest.approx(rhs, rel=1e-10)


def test_kronecker_beta_frozen():
    assert zetalattice.kronecker_beta(np.eye(2)) == pytest.approx(0.7579862151193963, rel=1e-12)


def test_kronecker_limit():
    g = np.array([[1.0, 0.3], [0.3, 1.4]])
    D = np.linalg.det(g)
    res, const = zetalattice.kronecker_limit_check(g)
    assert res == pytest.approx(math.pi / (2 * math.sqrt(D)), rel=1e-8)
    assert const == pytest.approx(0.5 * (4 * D) ** -0.5 * 4 * math.pi * zetalattice.kronecker_beta(g), rel=1e-7)


def test_km_zeta_primitive_direct():
    g = np.array([[1.0, 0.3], [0.3, 1.4]])
    assert zetalattice.km_zeta(1, 2, g, 3.0) == pytest.approx(oracle.km_primitive_direct(g, 3.0), rel=1e-7)
    assert zetalattice.km_zeta(1, 2, np.eye(2), 3) == pytest.approx(
        zetalattice.epstein_zeta(np.eye(2), 3) / specfun.riemann_zeta(6), rel=1e-13)


def test_constant_term_vs_laurent_oracle():
    y = np.array([[0.8, 0.3], [0.3, 1.1]])
    C = zetalattice.km_constant_term_C(2, y)
    assert C == pytest.approx(-0.414466719850659, rel=1e-10)
    lw = zetalattice.km_laurent_limit(y)
    assert lw.c_0 == pytest.approx(C, abs=1e-8)
    assert lw.c_minus1 == pytest.approx(0.5 * np.linalg.det(2 * y) ** -0.5, rel=1e-8)


def test_constant_term_missing_for_m3():
    with pytest.raises(MissingInputError):
        zetalattice.km_constant_term_C(3, np.eye(3))
    assert zetalattice.km_constant_term_C(3, np.eye(3), supplied=0.25) == 0.25


def test_arakawa_residues():
    g = np.array([[1.0, 0.3], [0.3, 1.4]])
    assert zetalattice.arakawa_residue(1, 2, g, 0, at="right") == pytest.approx(0.5 / math.sqrt(np.linalg.det(g)))
    assert zetalattice.arakawa_residue(1, 2, g, 0, at="left") == pytest.approx(-0.5)


def test_laurent_window_pole_order():
    assert zetalattice.LaurentWindow(1.0, 0.2, 0.1, 0.0).pole_order == 2
    assert zetalattice.LaurentWindow(1.0, None, 0.1, 0.0).pole_order == 1
