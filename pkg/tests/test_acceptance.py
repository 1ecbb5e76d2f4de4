"""Acceptance criteria, one printed PASS/FAIL line each.

Clauses known to disagree with the printed closed forms are asserted as
strict expected failures, so a silent change in either direction is caught.
"""
import pytest

from siegelres import verify

_KNOWN = {
    "expanded products agree with the alpha/beta path",
    "A^(2) equals the printed closed form (5 random y)",
}


def _report(n, results):
    ok = all(r.passed for r in results)
    print(f"\ncriterion {n}: {'PASS' if ok else 'FAIL'}")
    for r in results:
        print(f"  {'PASS' if r.passed else 'FAIL'}  {r.name}  err={r.error:.3e} tol={r.tolerance:.0e}")
    return ok


def _split(results):
    return [r for r in results if r.name not in _KNOWN], [r for r in results if r.name in _KNOWN]


CRITERIA = {
    1: verify.check_next_point_residue,
    2: verify.check_laurent_cancellation,
    3: verify.check_degree2_constant,
    4: verify.check_fourier_vs_direct,
    5: verify.check_hypergeometric,
    6: verify.check_residue_limit,
    7: verify.check_degree1,
    8: verify.check_combinatorial,
}
_cache = {}


def _results(n):
    if n not in _cache:
        _cache[n] = CRITERIA[n]()
        _report(n, _cache[n])
    return _cache[n]


@pytest.mark.parametrize("n", sorted(CRITERIA))
def test_criterion(n):
    attainable, _ = _split(_results(n))
    for r in attainable:
        assert r.passed, f"{r.name}: {r.error:.3e} > {r.tolerance:.0e}"


@pytest.mark.xfail(strict=True, reason="printed expanded products carry an extra 2^m pi^(m^2(m-1)/4)")
def test_criterion2_expanded_products():
    _, known = _split(_results(2))
    assert known and all(r.passed for r in known)


@pytest.mark.xfail(strict=True, reason="printed closed form has det(y)^(-1/2) instead of det(y)^(1/2)")
def test_criterion3_printed_closed_form():
    _, known = _split(_results(3))
    assert known and all(r.passed for r in known)
