"""Siegel singular series of half-integral forms of rank at most 2.

Degenerate forms are reduced to their nondegenerate part, rank 0 and
rank 1 have closed forms in zeta values and divisor sums, and rank 2 is
assembled from a finite sum over divisor classes, a Dirichlet L-value
and local factors ``a_p`` at the primes dividing the discriminant.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import specfun
from .errors import DomainError, PoleError
from .symcore import HalfIntegralForm


def _zeta(arg, label):
    try:
        return specfun.riemann_zeta(arg)
    except PoleError:
        raise PoleError(label, arg) from None


def _inv_zeta(arg, label):
    z = _zeta(arg, label)
    if z == 0:
        # trivial zero in a denominator
        raise PoleError(label + "^-1", arg)
    return 1 / z


def _delta(x: Fraction) -> int:
    return 1 if Fraction(x).denominator == 1 else 0


def prime_factors(n: int) -> list[int]:
    n = abs(n)
    out, p = [], 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


@dataclass(frozen=True)
class DiscriminantData:
    """Full-rank form ``h`` of size ``lam`` with ``d(h) = (-1)^[lam/2] 2^-delta((lam-1)/2) det(2h)``."""

    h: HalfIntegralForm
    d: int

    @classmethod
    def of(cls, h: HalfIntegralForm) -> "DiscriminantData":
        lam = h.m
        det2h = h.det_doubled()
        if det2h == 0:
            raise DomainError("discriminant needs a form of full rank")
        num = (-1) ** (lam // 2) * det2h
        if _delta(Fraction(lam - 1, 2)):
            if num % 2:
                raise DomainError("det(2h) is odd for odd size")
            num //= 2
        return cls(h, num)


def discriminant(h: HalfIntegralForm | None) -> int:
    """``d(h)``, with ``d = 1`` for the empty form."""
    if h is None:
        return 1
    return DiscriminantData.of(h).d


# ---------------------------------------------------------------------------
# rank 0 and reduction


def reduction_factor(nu: int, lam: int, s):
    """Prefactor turning ``S_lam(h, s - nu + lam)`` into ``S_nu(diag(h, 0), s)``."""
    if lam > nu or lam < 0:
        raise DomainError("need 0 <= lam <= nu")
    out = _zeta(s + lam - nu, f"zeta(s{lam - nu:+d})") * _inv_zeta(s, "zeta(s)")
    for j in range(1, nu - lam + 1):
        out *= _zeta(2 * s - nu - j, f"zeta(2s-{nu + j})") * _inv_zeta(2 * s - 2 * j, f"zeta(2s-{2 * j})")
    return out


def siegel_rank0(nu: int, s):
    """``S_nu(0_nu, s)``; equals 1 for ``nu = 0``."""
    if nu < 0:
        raise DomainError("nu must be nonnegative")
    if nu == 0:
        return 1.0
    return reduction_factor(nu, 0, s)


def siegel_reduce(h: HalfIntegralForm | None, nu: int, s):
    """``S_nu(diag(h, 0_{nu - lam}), s)`` for a full-rank ``h`` of size ``lam``."""
    if h is None:
        return siegel_rank0(nu, s)
    lam = h.m
    if h.rank() != lam:
        raise DomainError("h must have full rank")
    if lam > 2:
        raise DomainError("unsupported rank: only lam <= 2 is implemented")
    factor = 1.0 if lam == nu else reduction_factor(nu, lam, s)
    return factor * siegel_series(h, s - nu + lam)


# ---------------------------------------------------------------------------
# rank 1


def siegel_rank1(h: int, s):
    """``S_1(h, s) = zeta(s)^-1 sigma_{1-s}(|h|)`` for a nonzero integer ``h``."""
    h = int(h)
    if h == 0:
        raise DomainError("siegel_rank1 needs h != 0")
    return specfun.sigma_power(abs(h), 1 - s) * _inv_zeta(s, "zeta(s)")


# ---------------------------------------------------------------------------
# local factors


def _in_p_lattice(values_diag, values_off, p) -> bool:
    return all(v % p == 0 for v in values_diag) and all(v % p == 0 for v in values_off)


def zero_block(h: HalfIntegralForm, p: int) -> tuple[int, HalfIntegralForm | None]:
    """``r(p)`` and a block ``h*`` with ``h[u] = diag(h*, 0_r) mod p Lambda``.

    Congruence modulo ``p Lambda`` means diagonal entries of the difference
    in ``p Z`` and doubled off-diagonal entries in ``p Z``. Only sizes 1 and
    2 are supported; the search is exhaustive over vectors mod ``p``.
    """
    d = h.doubled
    lam = h.m
    if lam == 1:
        return (1, None) if (d[0][0] // 2) % p == 0 else (0, h)
    if lam != 2:
        raise DomainError("unsupported rank")
    diag = [d[0][0] // 2, d[1][1] // 2]
    if _in_p_lattice(diag, [d[0][1]], p):
        return 2, None
    candidates = [(1, k) for k in range(p)] + [(0, 1)]
    for x in candidates:
        hx = (d[0][0] * x[0] ** 2 + 2 * d[0][1] * x[0] * x[1] + d[1][1] * x[1] ** 2) // 2
        col = [d[0][0] * x[0] + d[0][1] * x[1], d[1][0] * x[0] + d[1][1] * x[1]]
        if hx % p == 0 and all(c % p == 0 for c in col):
            y = (0, 1) if x[0] == 1 else (1, 0)
            hy = (d[0][0] * y[0] ** 2 + 2 * d[0][1] * y[0] * y[1] + d[1][1] * y[1] ** 2) // 2
            return 1, HalfIntegralForm(((2 * hy,),))
    return 0, h


def local_density_ap(h: HalfIntegralForm, p: int, s, r: int | None = None):
    """Local factor ``a_p(h, s)`` for a full-rank form of size 1 or 2."""
    lam = h.m
    if lam not in (1, 2):
        raise DomainError("unsupported rank")
    r_found, hstar = zero_block(h, p)
    if r is None:
        r = r_found
    lam_p = specfun.kronecker_symbol(discriminant(hstar), p)
    out = 1.0
    if lam % 2 == 1 and r % 2 == 0:
        for j in range(1, r // 2 + 1):
            out *= 1 - p ** (2 * j - 1 + lam - 2 * s)
    elif lam % 2 == 1:
        out = 1 + lam_p * p ** ((lam + r) / 2 - s)
        for j in range(1, (r - 1) // 2 + 1):
            out *= 1 - p ** (2 * j - 1 + lam - 2 * s)
    elif r % 2 == 1:
        for j in range(1, (r - 1) // 2 + 1):
            out *= 1 - p ** (2 * j + lam - 2 * s)
    else:
        out = 1 + lam_p * p ** ((lam + r) / 2 - s)
        for j in range(1, r // 2):
            out *= 1 - p ** (2 * j + lam - 2 * s)
    return out


def divisor_classes(h: HalfIntegralForm) -> list[tuple[tuple[int, ...], ...]]:
    """Representatives ``d`` of ``GL(Z) \\ {d : h[d^-1] half-integral}``.

    Size 1: positive ``d`` with ``d^2 | h``. Size 2: row Hermite forms
    ``[[a, b], [0, c]]`` with ``a, c > 0`` and ``0 <= b < c``.
    """
    lam = h.m
    det2h = abs(h.det_doubled())
    out = []
    if lam == 1:
        n = abs(h.doubled[0][0] // 2)
        a = 1
        while a * a <= n:
            if n % (a * a) == 0:
                out.append(((a,),))
            a += 1
        return out
    if lam != 2:
        raise DomainError("unsupported rank")
    bound = 1
    while (bound + 1) ** 2 <= det2h:
        bound += 1
    for a in range(1, bound + 1):
        for c in range(1, bound // a + 1):
            if det2h % (a * c) ** 2:
                continue
            for b in range(c):
                if _transform_inverse(h, a, b, c) is not None:
                    out.append(((a, b), (0, c)))
    return out


def _transform_inverse(h: HalfIntegralForm, a, b, c) -> HalfIntegralForm | None:
    """``h[d^-1]`` for ``d = [[a, b], [0, c]]`` if half-integral, else None."""
    det = a * c
    dinv = [[Fraction(c, det), Fraction(-b, det)], [Fraction(0), Fraction(a, det)]]
    D = h.doubled
    out = [[sum(dinv[k][i] * D[k][l] * dinv[l][j] for k in range(2) for l in range(2))
            for j in range(2)] for i in range(2)]
    if any(x.denominator != 1 for row in out for x in row):
        return None
    if out[0][0] % 2 or out[1][1] % 2:
        return None
    return HalfIntegralForm(tuple(tuple(int(x) for x in row) for row in out))


def _apply_class(h: HalfIntegralForm, d) -> HalfIntegralForm:
    if h.m == 1:
        a = d[0][0]
        return HalfIntegralForm(((h.doubled[0][0] // (a * a),),))
    (a, b), (_, c) = d
    return _transform_inverse(h, a, b, c)


def siegel_hat(h: HalfIntegralForm, s):
    """Primitive part ``S^(h, s)`` of the Siegel series."""
    lam = h.m
    dh = discriminant(h)
    out = _inv_zeta(s, "zeta(s)")
    for j in range(1, lam // 2 + 1):
        out *= _inv_zeta(2 * s - 2 * j, f"zeta(2s-{2 * j})")
    if lam % 2 == 0:
        out *= specfun.dirichlet_l(s - lam / 2, dh)
    for p in prime_factors(dh):
        out *= local_density_ap(h, p, s)
    return out


def siegel_series(h: HalfIntegralForm, s):
    """``S_lam(h, s)`` for a full-rank form of size 1 or 2."""
    lam = h.m
    if lam not in (1, 2):
        raise DomainError("unsupported rank: only sizes 1 and 2")
    if h.rank() != lam:
        raise DomainError("h must have full rank")
    total = 0.0
    for d in divisor_classes(h):
        det = d[0][0] if lam == 1 else d[0][0] * d[1][1]
        total += det ** (lam + 1 - 2 * s) * siegel_hat(_apply_class(h, d), s)
    return total


def siegel_rank2(h: HalfIntegralForm, s):
    """``S_2(h, s)`` for a nondegenerate 2x2 half-integral form."""
    if h.m != 2:
        raise DomainError("siegel_rank2 needs a 2x2 form")
    return siegel_series(h, s)
