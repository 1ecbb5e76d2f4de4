from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from siegelres.errors import DomainError
from siegelres.symcore import (CosetRep, HalfIntegralForm, Rank1Form, content, format_matrix,
                               int_det, int_rank, is_primitive, jacobi_complement, parse_matrix,
                               primitive_vectors, rank1_decompose, rank1_enumerate, sign_normalize)


def test_parse_format_roundtrip():
    a = parse_matrix("1,0.5;0.5,2")
    assert np.array_equal(parse_matrix(format_matrix(a)), a)
    with pytest.raises(DomainError):
        parse_matrix("1,2;3")


def test_half_integral_parse():
    h = HalfIntegralForm.parse("1,1/2;1/2,1")
    assert h.doubled == ((2, 1), (1, 2))
    assert HalfIntegralForm.parse(str(h)) == h
    assert h.det_doubled() == 3
    assert h.trace() == 2
    assert h.entry(0, 1) == Fraction(1, 2)


def test_half_integral_rejects_odd_diagonal():
    with pytest.raises(DomainError):
        HalfIntegralForm(((1, 0), (0, 2)))


def test_content():
    assert content(HalfIntegralForm(((4, 2), (2, 4)))) == 2
    assert content(HalfIntegralForm(((2, 1), (1, 2)))) == 1
    assert content(HalfIntegralForm(((6,),))) == 3


def test_int_helpers():
    assert int_det([[2, 1], [1, 1]]) == 1
    assert int_rank([[1, 2], [2, 4]]) == 1
    assert is_primitive([[1], [2]])
    assert not is_primitive([[2], [4]])
    assert sign_normalize((-1, 2)) == (1, -2)


@given(st.integers(-6, 6).filter(bool), st.integers(-4, 4), st.integers(-4, 4))
def test_rank1_roundtrip(t, a, b):
    if (a, b) == (0, 0) or np.gcd(a, b) != 1:
        return
    f = Rank1Form(t, sign_normalize((a, b)))
    g = rank1_decompose(f.reconstruct())
    assert g == f
    assert g.content() == abs(t)


def test_rank1_enumerate_small():
    forms = rank1_enumerate(2, 1)
    assert {(f.t, f.w) for f in forms} == {(1, (1, 0)), (-1, (1, 0)), (1, (0, 1)), (-1, (0, 1))}


def test_rank1_enumerate_sorted_and_bounded():
    forms = rank1_enumerate(2, 5)
    traces = [abs(f.trace()) for f in forms]
    assert traces == sorted(traces)
    assert max(traces) <= 5


def test_primitive_vectors_respect_y():
    y = np.array([[1.0, 0.3], [0.3, 2.0]])
    vs = primitive_vectors(2, 4.0, y)
    assert all(np.gcd(*v) == 1 for v in vs)
    assert all(np.array(v) @ y @ np.array(v) <= 4.0 + 1e-12 for v in vs)
    assert len(set(vs)) == len(vs)


def test_coset_rep_unimodular():
    rep = CosetRep.from_primitive([[3], [5]])
    assert abs(rep.u_det()) == 1


def test_jacobi_complement_schur():
    y = np.array([[1.0, 0.3], [0.3, 2.0]])
    g = jacobi_complement(y, CosetRep.from_primitive([[1], [0]]))
    assert g[0, 0] == pytest.approx(np.linalg.det(y) / y[0, 0], rel=1e-14)


def test_transform_preserves_det():
    h = HalfIntegralForm(((2, 1), (1, 4)))
    u = [[2, 1], [1, 1]]
    assert h.transform(u).det_doubled() == h.det_doubled()
