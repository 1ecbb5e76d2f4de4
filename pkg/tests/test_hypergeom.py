import math

import numpy as np
import pytest

from siegelres import hypergeom, specfun
from siegelres.errors import DomainError
from siegelres.symcore import Rank1Form


def test_kappa():
    assert hypergeom.kappa(1) == 1
    assert hypergeom.kappa(2) == 1.5


def test_eta1_closed_form():
    G, c, a = 1.3, 0.8, 1.2
    ref = math.gamma(a) / math.sqrt(math.pi) * (2 * c / G) ** (a - 0.5) * specfun.bessel_k(a - 0.5, G * c)
    assert hypergeom.eta(np.array([[G]]), np.array([[c]]), a, a) == pytest.approx(ref, rel=1e-9)
    assert hypergeom.eta1_equal_params(G, c, a) == pytest.approx(ref, rel=1e-13)


def test_eta1_swap_symmetry():
    g = np.array([[1.0]])
    lhs = hypergeom.eta(g, np.array([[0.7]]), 0.3, 0.6)
    rhs = hypergeom.eta(g, np.array([[-0.7]]), 0.6, 0.3)
    assert lhs == pytest.approx(rhs, rel=1e-9)


def test_eta2_rank1_at_identity():
    # DERIVED: closed form (pi/2) K_0(2 pi), confirmed by cubature
    val = hypergeom.eta(2 * np.eye(2), math.pi * np.diag([1.0, 0.0]), 1.0, 1.0)
    assert val == pytest.approx(math.pi / 2 * specfun.bessel_k(0, 2 * math.pi), rel=1e-8)


def test_rank1_residue_point_matches_cubature():
    y = np.array([[1.1, 0.2], [0.2, 0.9]])
    h = Rank1Form(1, (1, 1))
    ref = hypergeom.eta(2 * y, math.pi * h.to_array(), 1.0, 1.0)
    assert hypergeom.eta_rank1_residue_point(y, h) == pytest.approx(ref, rel=1e-7)


@pytest.mark.parametrize("m", [1, 2])
def test_xi_zero_chain(m):
    g = np.eye(m) * 1.2
    k = hypergeom.kappa(m)
    a, b = k + 0.3, k + 0.1
    assert hypergeom.xi_from_eta(g, np.zeros((m, m)), a, b) == pytest.approx(
        hypergeom.xi_zero_closed(m, g, a, b), rel=1e-8)


def test_gl_invariance():
    # eta(g[A], h[A^-T]) = |det A|^-(2(alpha+beta)-3) eta(g, h) for m = 2
    g = np.array([[1.0, 0.2], [0.2, 0.8]])
    h = np.array([[0.5, 0.1], [0.1, 0.3]])
    A = np.array([[1.0, 1.0], [0.0, 2.0]])
    a, b = 1.1, 0.9
    lhs = hypergeom.eta(A.T @ g @ A, np.linalg.inv(A) @ h @ np.linalg.inv(A).T, a, b)
    rhs = abs(np.linalg.det(A)) ** (-(2 * (a + b) - 3)) * hypergeom.eta(g, h, a, b)
    assert lhs == pytest.approx(rhs, rel=1e-7)


def test_omega_symmetry_degree_one():
    g = np.array([[1.3]])
    h = np.array([[0.7]])
    assert hypergeom.omega(g, h, 0.3, 0.6) == pytest.approx(hypergeom.omega(g, h, 0.4, 0.7), rel=1e-8)


def test_region_errors():
    with pytest.raises(DomainError):
        hypergeom.eta(np.eye(2), np.eye(2), 0.4, 1.0)
    with pytest.raises(DomainError):
        hypergeom.xi_zero_closed(2, np.eye(2), 0.7, 0.7)


def test_signature():
    sig = hypergeom.signature(np.eye(2), np.diag([2.0, -3.0]))
    assert (sig.p, sig.q, sig.r) == (1, 1, 0)
    assert sig.delta_plus == pytest.approx(2.0)
    assert sig.delta_minus == pytest.approx(3.0)


def test_cone_spec_validation():
    with pytest.raises(DomainError):
        hypergeom.ConeIntegralSpec(np.array([[-1.0]]), np.array([[1.0]]), 1.0, 1.0)
