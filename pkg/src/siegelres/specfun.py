"""Scalar special functions.

Gamma-type products, the Riemann zeta function and its derivative, the
completed xi function, Dirichlet L-functions of Kronecker characters, the
Dedekind eta function, the modified Bessel function K and divisor sums.

All functions accept Python or numpy scalars (real or complex) and return
Python ``float``/``complex``. Internally mpmath is used at
``WORKING_DPS`` decimal digits; results are rounded to double precision on
return. Poles raise :class:`~siegelres.errors.PoleError` instead of
returning infinities.
"""
from __future__ import annotations

import cmath
import json
import math
from dataclasses import asdict, dataclass
from functools import lru_cache

import mpmath

from .errors import DomainError, PoleError

WORKING_DPS = 30
EULER_GAMMA = float(mpmath.euler)


@dataclass(frozen=True)
class PrecisionConfig:
    """Tolerances and effort limits handed to numerical routines."""

    abs_tol: float = 1e-12
    rel_tol: float = 1e-10
    max_terms: int = 100_000
    quadrature_depth: int = 6

    def __post_init__(self):
        if self.abs_tol <= 0 or self.rel_tol <= 0:
            raise ValueError("tolerances must be positive")
        if self.max_terms < 1:
            raise ValueError("max_terms must be at least 1")

    def to_json(self) -> str:
        return json.dumps(asdict(self), sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "PrecisionConfig":
        return cls(**json.loads(text))


DEFAULT_PRECISION = PrecisionConfig()


def _out(x):
    """Convert an mpmath number to float when real, complex otherwise."""
    z = complex(x)
    if z.imag == 0.0:
        return z.real
    return z


def _is_nonpositive_integer(z, tol=1e-13) -> bool:
    z = complex(z)
    if abs(z.imag) > tol:
        return False
    n = round(z.real)
    return n <= 0 and abs(z.real - n) <= tol


def _is_integer(z, value, tol=1e-13) -> bool:
    z = complex(z)
    return abs(z.imag) <= tol and abs(z.real - value) <= tol


def gamma(s):
    if _is_nonpositive_integer(s):
        raise PoleError("Gamma", s)
    with mpmath.workdps(WORKING_DPS):
        return _out(mpmath.gamma(mpmath.mpmathify(s)))


def digamma(s):
    if _is_nonpositive_integer(s):
        raise PoleError("digamma", s)
    with mpmath.workdps(WORKING_DPS):
        return _out(mpmath.digamma(mpmath.mpmathify(s)))


def gamma_m(m: int, s):
    """Multivariate gamma ``pi^(m(m-1)/4) * prod_{nu<m} Gamma(s - nu/2)``.

    ``gamma_m(0, s) == 1``. A pole in any factor raises ``PoleError`` whose
    ``factor`` names the offending ``Gamma(s - nu/2)``.
    """
    if m < 0:
        raise DomainError("size must be nonnegative")
    with mpmath.workdps(WORKING_DPS):
        s = mpmath.mpmathify(s)
        out = mpmath.pi ** (mpmath.mpf(m * (m - 1)) / 4)
        for nu in range(m):
            arg = s - mpmath.mpf(nu) / 2
            if _is_nonpositive_integer(complex(arg)):
                raise PoleError(f"Gamma(s-{nu}/2)", complex(s))
            out *= mpmath.gamma(arg)
        return _out(out)


def log_gamma_m_derivative(m: int, s):
    """Logarithmic derivative ``sum_{nu<m} psi(s - nu/2)`` of :func:`gamma_m`."""
    with mpmath.workdps(WORKING_DPS):
        s = mpmath.mpmathify(s)
        out = mpmath.mpf(0)
        for nu in range(m):
            arg = s - mpmath.mpf(nu) / 2
            if _is_nonpositive_integer(complex(arg)):
                raise PoleError(f"Gamma(s-{nu}/2)", complex(s))
            out += mpmath.digamma(arg)
        return _out(out)


def riemann_zeta(s):
    if _is_integer(s, 1):
        raise PoleError("zeta", s)
    with mpmath.workdps(WORKING_DPS):
        return _out(mpmath.zeta(mpmath.mpmathify(s)))


def riemann_zeta_deriv(s):
    if _is_integer(s, 1):
        raise PoleError("zeta'", s)
    with mpmath.workdps(WORKING_DPS):
        return _out(mpmath.zeta(mpmath.mpmathify(s), 1, 1))


def zeta_logderiv(s):
    """``zeta'(s)/zeta(s)``; raises ``PoleError`` at a zero of zeta."""
    z = riemann_zeta(s)
    if z == 0:
        raise PoleError("zeta'/zeta", s)
    return riemann_zeta_deriv(s) / z


def xi_completed(s):
    """Completed zeta ``pi^(-s/2) Gamma(s/2) zeta(s)``; poles at 0 and 1."""
    if _is_integer(s, 0) or _is_integer(s, 1):
        raise PoleError("xi", s)
    with mpmath.workdps(WORKING_DPS):
        s = mpmath.mpmathify(s)
        if _is_nonpositive_integer(complex(s / 2)):
            # trivial zeros of zeta cancel the Gamma poles
            return _out(mpmath.pi ** (-s / 2) * mpmath.limit(
                lambda t: mpmath.gamma(t / 2) * mpmath.zeta(t), s))
        return _out(mpmath.pi ** (-s / 2) * mpmath.gamma(s / 2) * mpmath.zeta(s))


@lru_cache(maxsize=None)
def v_constant(nu: int) -> float:
    """``prod_{i=2}^{nu} xi(i)``, with ``v(1) = 1``."""
    if nu < 1:
        raise DomainError("v(nu) needs nu >= 1")
    out = 1.0
    for i in range(2, nu + 1):
        out *= xi_completed(i)
    return out


def _eta_product(z: complex, tol: float) -> complex:
    q = cmath.exp(2j * math.pi * z)
    out = cmath.exp(2j * math.pi * z / 24)
    qn = q
    for _ in range(10_000):
        out *= 1 - qn
        if abs(qn) < tol:
            break
        qn *= q
    return out


def dedekind_eta(z, precision: PrecisionConfig = DEFAULT_PRECISION) -> complex:
    """Dedekind eta ``e(z/24) prod (1 - e(nz))`` for ``Im z > 0``.

    The argument is first moved towards the standard fundamental domain
    with ``z -> z + 1`` and ``z -> -1/z`` so the q-product converges fast.
    """
    z = complex(z)
    if z.imag <= 0:
        raise DomainError("dedekind_eta needs Im z > 0")
    factor = 1.0 + 0.0j
    for _ in range(200):
        n = round(z.real)
        if n:
            # eta(z) = e(n/24) eta(z - n)
            factor *= cmath.exp(2j * math.pi * n / 24)
            z -= n
        if z.imag >= 0.5 or abs(z) >= 1.0:
            break
        # eta(z) = eta(-1/z) / sqrt(-iz)
        factor /= cmath.sqrt(-1j * z)
        z = -1 / z
    return factor * _eta_product(z, precision.abs_tol * 1e-3)


def bessel_k(nu, x):
    """Modified Bessel function of the second kind ``K_nu(x)``, ``x > 0``."""
    if x <= 0:
        raise DomainError("bessel_k needs x > 0")
    with mpmath.workdps(WORKING_DPS):
        return _out(mpmath.besselk(mpmath.mpmathify(nu), mpmath.mpf(x)))


def divisors(a: int) -> list[int]:
    if a < 1:
        raise DomainError("divisors of a positive integer only")
    small, large = [], []
    d = 1
    while d * d <= a:
        if a % d == 0:
            small.append(d)
            if d * d != a:
                large.append(a // d)
        d += 1
    return small + large[::-1]


def sigma_power(a: int, s):
    """Divisor power sum ``sum_{d | a} d^s``."""
    if isinstance(s, int) and s >= 0:
        return sum(d ** s for d in divisors(a))
    s = complex(s)
    total = sum(cmath.exp(s * math.log(d)) for d in divisors(a))
    return total.real if s.imag == 0 else total


def kronecker_symbol(d: int, n: int) -> int:
    """Kronecker extension of the Jacobi symbol ``(d / n)``."""
    if d == 0 and n == 0:
        raise DomainError("kronecker_symbol(0, 0) is undefined")
    if n == 0:
        return 1 if abs(d) == 1 else 0
    result = 1
    if n < 0:
        n = -n
        if d < 0:
            result = -result
    v = 0
    while n % 2 == 0:
        n //= 2
        v += 1
    if v:
        if d % 2 == 0:
            return 0
        if v % 2 == 1 and d % 8 in (3, 5):
            result = -result
    # Jacobi symbol (d / n) for odd n > 0
    a = d % n
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def _character_period(d: int) -> int:
    return abs(d) if d % 4 in (0, 1) else 4 * abs(d)


def dirichlet_l(s, d: int):
    """``L(s, chi_d)`` with ``chi_d(n) = (d / n)``, for ``Re s > 0``."""
    if d == 0:
        raise DomainError("discriminant must be nonzero")
    s = complex(s)
    if s.real <= 0:
        raise DomainError("unimplemented continuation: dirichlet_l needs Re(s) > 0")
    q = _character_period(d)
    chi = [kronecker_symbol(d, n) for n in range(q)]
    if _is_integer(s, 1) and d > 0 and math.isqrt(d) ** 2 == d:
        raise PoleError("L(s, principal character)", s)
    with mpmath.workdps(WORKING_DPS):
        return _out(mpmath.dirichlet(mpmath.mpmathify(s), chi))
