import math

import numpy as np
import pytest

from siegelres import oracle, siegelseries, zetalattice, specfun
from siegelres.errors import DomainError
from siegelres.symcore import HalfIntegralForm, content


def test_degree1_classes_small():
    pairs = oracle.coset_enumerate(1, 1)
    assert {(p.c[0][0], p.d[0][0]) for p in pairs} == {(0, 1), (1, 0), (1, 1), (1, -1)}
    assert len(oracle.coset_enumerate(1, 2)) == 8


def test_degree1_farey_count():
    C = 6
    pairs = oracle.coset_enumerate(1, C)
    expected = 1 + sum(1 for c in range(1, C + 1) for d in range(-C, C + 1) if math.gcd(c, d) == 1)
    assert len(pairs) == expected


def test_degree2_classes_unique_and_contain_basics():
    pairs = oracle.coset_enumerate(2, 1)
    assert len(set(pairs)) == len(pairs)
    cs = {p.c for p in pairs}
    assert ((0, 0), (0, 0)) in cs
    assert ((1, 0), (0, 0)) in cs
    for p in pairs:
        c, d = np.array(p.c), np.array(p.d)
        assert np.array_equal(c @ d.T, d @ c.T)


def test_canonical_form_is_invariant():
    c, d = [[1, 0], [0, 0]], [[0, 0], [0, 1]]
    u = [[2, 1], [1, 1]]
    c2 = (np.array(u) @ np.array(c)).tolist()
    d2 = (np.array(u) @ np.array(d)).tolist()
    assert oracle.CosetPair.canonical(c, d) == oracle.CosetPair.canonical(c2, d2)


def test_degree1_direct_matches_epstein():
    v, tail = oracle.eisenstein_direct(np.array([[1j]]), 3.0, H=25, method="shells")
    ref = zetalattice.epstein_zeta(np.eye(2), 3.0) / specfun.riemann_zeta(6)
    assert v == pytest.approx(ref, rel=1e-6)
    assert oracle.degree1_eisenstein(1j, 3.0) == pytest.approx(ref, rel=1e-13)


def test_shell_sums_increase():
    z = 1j * np.eye(2)
    v1, _ = oracle.eisenstein_direct(z, 3.0, H=1, method="shells")
    v2, _ = oracle.eisenstein_direct(z, 3.0, H=2, method="shells")
    v_ranks, _ = oracle.eisenstein_direct(z, 3.0)
    assert v1 < v2 < v_ranks


def test_region_guard():
    with pytest.raises(DomainError):
        oracle.eisenstein_direct(1j * np.eye(2), 1.2)


def test_denominator_counts():
    classes = oracle._residue_classes(7)
    for p in (2, 3, 5, 7):
        assert len(classes[p]) == p * p - 1
    assert oracle.denominator([0, 0, 0]) == 1
    assert oracle.denominator([0.5, 0, 0]) == 2


def test_degree1_residue():
    assert oracle.degree1_residue_check() == pytest.approx(3 / math.pi, abs=1e-6)


def test_brute_rank1_and_content():
    assert oracle.brute_rank1_set(2, 3) == oracle.rank1_in_box(2, 3)
    for d in (((2, 1), (1, 2)), ((4, 2), (2, 4)), ((12, 6), (6, 18))):
        h = HalfIntegralForm(d)
        assert oracle.brute_content(h) == content(h)


@pytest.mark.parametrize("h", [1, 2, 4, 6])
def test_brute_siegel1(h):
    assert oracle.brute_siegel1(h, 3, 200) == pytest.approx(siegelseries.siegel_rank1(h, 3), abs=1e-4)


def test_cost_guard():
    with pytest.raises(DomainError):
        oracle.coset_enumerate(2, 4)
