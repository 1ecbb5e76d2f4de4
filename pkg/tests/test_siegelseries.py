import math

import pytest
from hypothesis import given, settings, strategies as st

from siegelres import oracle, siegelseries, specfun
from siegelres.errors import DomainError, PoleError
from siegelres.symcore import HalfIntegralForm


def test_rank1_closed_form():
    # DERIVED: sigma_{-1}(4) / zeta(2)
    assert siegelseries.siegel_rank1(4, 2) == pytest.approx(1.0638724282445466, rel=1e-14)
    assert siegelseries.siegel_rank1(-4, 2) == siegelseries.siegel_rank1(4, 2)


def test_rank0_values():
    assert siegelseries.siegel_rank0(0, 3) == 1.0
    # DERIVED: zeta(4) zeta(3) / (zeta(5) zeta(8)) at s = 5, nu = 2
    expected = (specfun.riemann_zeta(3) * specfun.riemann_zeta(7)
                / (specfun.riemann_zeta(5) * specfun.riemann_zeta(8)))
    assert siegelseries.siegel_rank0(2, 5) == pytest.approx(expected, rel=1e-14)
    assert siegelseries.siegel_rank0(2, 5) == pytest.approx(1.1641805679744872, rel=1e-14)


def test_reduce_frozen():
    h = HalfIntegralForm(((2,),))
    assert siegelseries.siegel_reduce(h, 2, 4) == pytest.approx(0.941724979343182, rel=1e-13)


def test_reduce_pole_labelled():
    with pytest.raises(PoleError) as exc:
        siegelseries.siegel_rank0(2, 3)
    assert "zeta" in str(exc.value)


def test_discriminant():
    assert siegelseries.discriminant(None) == 1
    assert siegelseries.discriminant(HalfIntegralForm(((2, 1), (1, 2)))) == -3
    assert siegelseries.discriminant(HalfIntegralForm(((4,),))) == 2


def test_divisor_classes_size2():
    h = HalfIntegralForm(((8, 0), (0, 8)))
    classes = siegelseries.divisor_classes(h)
    assert ((1, 0), (0, 1)) in classes
    assert ((2, 0), (0, 2)) in classes
    for (a, b), (_, c) in classes:
        assert 0 <= b < c


def test_zero_block_mod_p_lattice():
    # 2x2 form with doubled off-diagonal even: mod 2 Lambda has zero block of rank 2
    r, hs = siegelseries.zero_block(HalfIntegralForm(((4, 2), (2, 4))), 2)
    assert r == 2 and hs is None


def test_definite_forms_match_local_polynomials():
    forms = [HalfIntegralForm(((2 * a, b), (b, 2 * c)))
             for a in range(1, 6) for c in range(1, 6) for b in range(-a, a + 1)
             if 4 * a * c - b * b > 0]
    for h in forms:
        assert siegelseries.siegel_rank2(h, 5.0) == pytest.approx(oracle.katsurada_rank2(h, 5.0), rel=1e-10)


@given(st.integers(1, 6), st.integers(1, 6), st.integers(-6, 6))
@settings(max_examples=30, deadline=None)
def test_sign_invariance(a, c, b):
    if 4 * a * c - b * b <= 0:
        return
    h = HalfIntegralForm(((2 * a, b), (b, 2 * c)))
    assert siegelseries.siegel_rank2(h.negated(), 4.5) == pytest.approx(siegelseries.siegel_rank2(h, 4.5), rel=1e-12)


def test_indefinite_form_finite():
    h = HalfIntegralForm(((2, 3), (3, -2)))
    v = siegelseries.siegel_rank2(h, 5.0)
    assert math.isfinite(v)


def test_rank_errors():
    with pytest.raises(DomainError):
        siegelseries.siegel_series(HalfIntegralForm(((2, 2), (2, 2))), 5.0)
    with pytest.raises(DomainError):
        siegelseries.siegel_rank1(0, 3)
