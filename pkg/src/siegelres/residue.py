"""Residue of the Siegel Eisenstein series ``E_0^(m)(z, s)`` at ``s = m/2``.

The residue is ``A(y) + B(y) sum_h sigma_0(cont h) eta_m(2y, pi h; m/2, m/2) e(tr(hx))``
with ``h`` running over rank-one half-integral forms. ``A`` comes from the
two double poles of the constant term (whose leading parts cancel) and
``B`` from the simple pole of the rank-one part of the ``nu = m`` family.

For degree 2 the Fourier terms ``F_{0,nu,lam}`` are implemented in full,
which gives an evaluation of ``E_0^(2)`` for ``Re s > 2`` and the
numerical limit checks of the residue formula.
"""
from __future__ import annotations

import cmath
import json
import math
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from . import hypergeom, siegelseries, specfun, zetalattice
from .errors import ConvergenceError, DomainError
from .specfun import EULER_GAMMA
from .symcore import (CosetRep, HalfIntegralForm, Rank1Form, jacobi_complement,
                      primitive_vectors, rank1_enumerate)

kappa = hypergeom.kappa


@dataclass(frozen=True)
class UpperHalfPoint:
    """``z = x + i y`` in the Siegel upper half space."""

    x: np.ndarray
    y: np.ndarray

    def __post_init__(self):
        x = np.atleast_2d(np.asarray(self.x, dtype=float))
        y = np.atleast_2d(np.asarray(self.y, dtype=float))
        if x.shape != y.shape or x.shape[0] != x.shape[1]:
            raise DomainError("x and y must be square of equal size")
        if not (np.allclose(x, x.T) and np.allclose(y, y.T)):
            raise DomainError("x and y must be symmetric")
        if min(np.linalg.eigvalsh(y)) <= 0:
            raise DomainError("y must be positive definite")
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "y", y)

    @property
    def m(self) -> int:
        return self.x.shape[0]

    @property
    def z(self) -> np.ndarray:
        return self.x + 1j * self.y


def _as_point(z) -> UpperHalfPoint:
    if isinstance(z, UpperHalfPoint):
        return z
    z = np.atleast_2d(np.asarray(z, dtype=complex))
    return UpperHalfPoint(z.real, z.imag)


def _det(y) -> float:
    return float(np.linalg.det(np.atleast_2d(y)))


# ---------------------------------------------------------------------------
# singular factors and their derivatives


def alpha_m(y, s, m: int | None = None):
    """``2^(m-1) pi^(2(m-1)s) det(y)^s Gamma_{m-1}(s)^-2 zeta(2s)^-1 prod_{j<m} zeta(4s-2j)^-1``."""
    y = np.atleast_2d(np.asarray(y, dtype=float))
    m = y.shape[0] if m is None else m
    out = (2 ** (m - 1) * cmath.exp(2 * (m - 1) * s * math.log(math.pi))
           * _det(y) ** s / specfun.gamma_m(m - 1, s) ** 2 / specfun.riemann_zeta(2 * s))
    for j in range(1, m):
        out /= specfun.riemann_zeta(4 * s - 2 * j)
    return _real_if(out, s)


def alpha_m_prime(y, s, m: int | None = None):
    """Derivative of :func:`alpha_m` in ``s`` by logarithmic differentiation."""
    y = np.atleast_2d(np.asarray(y, dtype=float))
    m = y.shape[0] if m is None else m
    dlog = (2 * (m - 1) * math.log(math.pi) + math.log(_det(y))
            - 2 * specfun.log_gamma_m_derivative(m - 1, s)
            - 2 * specfun.zeta_logderiv(2 * s))
    for j in range(1, m):
        dlog -= 4 * specfun.zeta_logderiv(4 * s - 2 * j)
    return _real_if(dlog * alpha_m(y, s, m), s)


def beta_m(y, s, m: int | None = None):
    """Holomorphic factor of ``F_{0,m,0} = Gamma(2s-m) zeta(4s-2m+1) beta_m(y, s)``.

    ``2^(-2ms+m(m+3)/2) pi^((m^2+2m-1)/2) det(y)^(-s+(m+1)/2) Gamma_{m-1}(2s-kappa)
    Gamma_m(s)^-2 zeta(2s-m) zeta(2s)^-1 prod_{j<=m-2} zeta(4s-m-j) prod_{j<m} zeta(4s-2j)^-1``.
    """
    y = np.atleast_2d(np.asarray(y, dtype=float))
    m = y.shape[0] if m is None else m
    k = kappa(m)
    out = (cmath.exp((-2 * m * s + m * (m + 3) / 2) * math.log(2))
           * math.pi ** ((m * m + 2 * m - 1) / 2)
           * cmath.exp((-s + (m + 1) / 2) * math.log(_det(y)))
           * specfun.gamma_m(m - 1, 2 * s - k) / specfun.gamma_m(m, s) ** 2
           * specfun.riemann_zeta(2 * s - m) / specfun.riemann_zeta(2 * s))
    for j in range(1, m - 1):
        out *= specfun.riemann_zeta(4 * s - m - j)
    for j in range(1, m):
        out /= specfun.riemann_zeta(4 * s - 2 * j)
    return _real_if(out, s)


def beta_m_prime(y, s, m: int | None = None):
    """Derivative of :func:`beta_m` in ``s`` by logarithmic differentiation."""
    y = np.atleast_2d(np.asarray(y, dtype=float))
    m = y.shape[0] if m is None else m
    k = kappa(m)
    dlog = (-2 * m * math.log(2) - math.log(_det(y))
            + 2 * specfun.log_gamma_m_derivative(m - 1, 2 * s - k)
            - 2 * specfun.log_gamma_m_derivative(m, s)
            + 2 * specfun.zeta_logderiv(2 * s - m)
            - 2 * specfun.zeta_logderiv(2 * s))
    for j in range(1, m - 1):
        dlog += 4 * specfun.zeta_logderiv(4 * s - m - j)
    for j in range(1, m):
        dlog -= 4 * specfun.zeta_logderiv(4 * s - 2 * j)
    return _real_if(dlog * beta_m(y, s, m), s)


def _real_if(v, s):
    v = complex(v)
    return v.real if complex(s).imag == 0 else v


# ---------------------------------------------------------------------------
# Laurent coefficients at s = m/2


def _pole_weight(y, m):
    """``v(m-1) det(2y)^(-(m-1)/2)``, the residue of ``xi_{m-1}^(m)(2y, s)`` times 2."""
    return specfun.v_constant(m - 1) * _det(2 * y) ** (-(m - 1) / 2)


def _constant_C(y, m, km_constant_term):
    if m == 2 and km_constant_term is None:
        return zetalattice.km_constant_term_C(2, y)
    return zetalattice.km_constant_term_C(m, y, km_constant_term)


def A_minus2(y, m: int | None = None) -> float:
    """Order -2 coefficient of ``F_{0,m-1,0}^(m)`` at ``s = m/2``; needs no constant term."""
    y = np.atleast_2d(np.asarray(y, dtype=float))
    m = y.shape[0] if m is None else m
    return _pole_weight(y, m) * alpha_m(y, m / 2) / 8


def B_minus2(y, m: int | None = None) -> float:
    """Order -2 coefficient of ``F_{0,m,0}^(m)`` at ``s = m/2``."""
    y = np.atleast_2d(np.asarray(y, dtype=float))
    m = y.shape[0] if m is None else m
    return beta_m(y, m / 2) / 8


def laurent_A(y, m: int | None = None, km_constant_term=None) -> zetalattice.LaurentWindow:
    """Orders -2 and -1 of ``F_{0,m-1,0}^(m)`` at ``s = m/2``."""
    y = np.atleast_2d(np.asarray(y, dtype=float))
    m = y.shape[0] if m is None else m
    C = _constant_C(y, m, km_constant_term)
    w = _pole_weight(y, m)
    a = alpha_m(y, m / 2)
    a1 = alpha_m_prime(y, m / 2)
    return zetalattice.LaurentWindow(m / 2, w * a / 8,
                                     a * (C / 2 + EULER_GAMMA / 4 * w) + w * a1 / 8, None)


def laurent_B(y, m: int | None = None) -> zetalattice.LaurentWindow:
    """Orders -2 and -1 of ``F_{0,m,0}^(m)`` at ``s = m/2``."""
    y = np.atleast_2d(np.asarray(y, dtype=float))
    m = y.shape[0] if m is None else m
    b = beta_m(y, m / 2)
    b1 = beta_m_prime(y, m / 2)
    return zetalattice.LaurentWindow(m / 2, b / 8, EULER_GAMMA / 4 * b + b1 / 8, None)


def explicit_A_minus2(y, m: int | None = None) -> float:
    """Fully expanded product for the order -2 coefficient of ``F_{0,m-1,0}``."""
    y = np.atleast_2d(np.asarray(y, dtype=float))
    m = y.shape[0] if m is None else m
    out = (2 ** ((-m * m + 4 * m - 8) / 2) * math.pi ** ((m ** 3 + 3 * m - 2) / 4)
           * _det(2 * y) ** 0.5 / specfun.riemann_zeta(m))
    for i in range(2, m):
        out *= math.gamma(i / 2) * specfun.riemann_zeta(i)
    for j in range(0, m - 1):
        out /= math.gamma((m - j) / 2) ** 2
    for j in range(1, m):
        out /= specfun.riemann_zeta(2 * m - 2 * j)
    return out


def explicit_B_minus2(y, m: int | None = None) -> float:
    """Fully expanded product for the order -2 coefficient of ``F_{0,m,0}``."""
    y = np.atleast_2d(np.asarray(y, dtype=float))
    m = y.shape[0] if m is None else m
    out = -(2 ** ((-m * m + 4 * m - 8) / 2) * math.pi ** ((m ** 3 + 3 * m) / 4)
            * _det(2 * y) ** 0.5 / specfun.riemann_zeta(m))
    for j in range(0, m - 1):
        out *= math.gamma((m - 1 - j) / 2)
    for j in range(0, m):
        out /= math.gamma((m - j) / 2) ** 2
    for j in range(1, m - 1):
        out *= specfun.riemann_zeta(m - j)
    for j in range(1, m):
        out /= specfun.riemann_zeta(2 * m - 2 * j)
    return out


def residue_A_constant(y, m: int | None = None, km_constant_term=None) -> float:
    """``A^(m)(y) = 1/2 alpha C + 1/8 v(m-1) det(2y)^(-(m-1)/2) alpha' + 1/8 beta'`` at ``s = m/2``."""
    y = np.atleast_2d(np.asarray(y, dtype=float))
    m = y.shape[0] if m is None else m
    C = _constant_C(y, m, km_constant_term)
    return (alpha_m(y, m / 2) * C / 2 + _pole_weight(y, m) * alpha_m_prime(y, m / 2) / 8
            + beta_m_prime(y, m / 2) / 8)


def residue_B_coefficient(y, m: int | None = None) -> float:
    """Multiplier of the rank-one series in the residue at ``s = m/2``.

    ``2^(m-2) pi^(m kappa) det(y)^(m/2) Gamma_m(m/2)^-2 zeta(m)^-1
    prod_{j<=m-2} zeta(m-j) prod_{j<m} zeta(2m-2j)^-1``, i.e. the residue
    ``1/4`` of ``zeta(4s-2m+1)`` times the remaining factors of the
    ``F_{0,m,1}`` prefactor ``2^m pi^(m kappa) det(y)^s Gamma_m(s)^-2 ...``.
    """
    y = np.atleast_2d(np.asarray(y, dtype=float))
    m = y.shape[0] if m is None else m
    out = (2 ** (m - 2) * math.pi ** (m * kappa(m)) * _det(y) ** (m / 2)
           / specfun.gamma_m(m, m / 2) ** 2 / specfun.riemann_zeta(m))
    for j in range(1, m - 1):
        out *= specfun.riemann_zeta(m - j)
    for j in range(1, m):
        out /= specfun.riemann_zeta(2 * m - 2 * j)
    return out


# ---------------------------------------------------------------------------
# the residue as a Fourier series


@dataclass
class ResidueReport:
    """Truncated Fourier expansion of the residue at ``s = m/2``."""

    m: int
    A_term: float
    B_coeff: float
    fourier_terms: list = field(default_factory=list)  # (Rank1Form, coefficient)
    trace_bound: float = 0.0
    tail_bound: float = 0.0

    def value_at(self, x) -> complex:
        x = np.atleast_2d(np.asarray(x, dtype=float))
        total = complex(self.A_term)
        for h, c in self.fourier_terms:
            total += c * cmath.exp(2j * math.pi * float(np.sum(h.to_array() * x)))
        return total

    def to_dict(self) -> dict:
        return {"degree": self.m, "A": self.A_term, "B": self.B_coeff,
                "terms": [{"t": h.t, "w": list(h.w), "coeff": c} for h, c in self.fourier_terms],
                "trace_bound": self.trace_bound, "tail_bound": self.tail_bound}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def from_dict(cls, d: dict) -> "ResidueReport":
        terms = [(Rank1Form(int(t["t"]), tuple(int(v) for v in t["w"])), float(t["coeff"]))
                 for t in d["terms"]]
        return cls(int(d["degree"]), float(d["A"]), float(d["B"]), terms,
                   float(d.get("trace_bound", 0.0)), float(d["tail_bound"]))

    @classmethod
    def from_json(cls, text: str) -> "ResidueReport":
        return cls.from_dict(json.loads(text))


def _rank1_tail_bound(y, m, T, B, n_extra=400):
    """Upper bound for the omitted terms with ``|t| |w|^2 > T``."""
    lam = float(min(np.linalg.eigvalsh(y)))
    pref = abs(B) * math.pi ** ((m - 1) / 2) * specfun.gamma_m(m - 1, (m - 1) / 2) * _det(2 * y) ** (-(m - 1) / 2)
    total = 0.0
    start = int(math.floor(T)) + 1
    for n in range(start, start + n_extra):
        # forms with |t| |w|^2 = n: both signs of t, at most (2 sqrt(j) + 1)^m / 2 vectors w with |w|^2 = j
        count = sum(2 * len(specfun.divisors(k)) * (2 * math.sqrt(n // k) + 1) ** m / 2
                    for k in specfun.divisors(n))
        x = 2 * math.pi * lam * n
        total += count * math.sqrt(math.pi / (2 * x)) * math.exp(-x)
    return pref * total


def residue_fourier_series(z, T: float = 6.0, km_constant_term=None, tol: float | None = None) -> ResidueReport:
    """Residue at ``s = m/2`` (``m`` in ``{2, 3}``) truncated to rank-one ``h`` with ``|tr h| <= T``.

    Raises ``ConvergenceError`` when ``tol`` is given and the tail bound exceeds it.
    """
    z = _as_point(z)
    m = z.m
    if m not in (2, 3):
        raise DomainError("residue series implemented for m = 2, 3")
    if T <= 0:
        raise DomainError("trace bound must be positive")
    A = residue_A_constant(z.y, m, km_constant_term)
    B = residue_B_coefficient(z.y, m)
    terms = []
    for h in rank1_enumerate(m, T):
        eta = hypergeom.eta_rank1_residue_point(z.y, h)
        terms.append((h, float(B * len(specfun.divisors(abs(h.t))) * eta)))
    tail = _rank1_tail_bound(z.y, m, T, B)
    if tol is not None and tail > tol:
        raise ConvergenceError(f"tail bound {tail:.3e} exceeds tolerance {tol:.3e}; raise T")
    return ResidueReport(m, A, B, terms, float(T), tail)


def residue_at_next_point(m: int) -> float:
    """Residue at ``s = (m+1)/2`` of ``xi(2s-m)/xi(2s) prod_{j<=[m/2]} xi(4s-2m-1+2j)/xi(4s-2j)``."""
    if m < 2:
        raise DomainError("m must be at least 2")
    s = (m + 1) / 2
    # xi(2s - m) has residue 1 at 2s - m = 1, i.e. 1/2 in s
    out = 0.5 / specfun.xi_completed(2 * s)
    for j in range(1, m // 2 + 1):
        out *= specfun.xi_completed(4 * s - 2 * m - 1 + 2 * j) / specfun.xi_completed(4 * s - 2 * j)
    return out


def classify_singularity(m: int, nu: int, lam: int) -> str:
    """Type of singularity of ``F_{0,nu,lam}^(m)`` at ``s = m/2``."""
    if not 0 <= lam <= nu <= m:
        raise DomainError("need 0 <= lam <= nu <= m")
    if lam == 0 and nu in (m - 1, m):
        return "double_pole"
    if nu == m and lam == 1:
        return "simple_pole"
    return "holomorphic"


# ---------------------------------------------------------------------------
# degree-2 Fourier terms


def _eta1_equal(G, c, a):
    """``eta_1(G, c; a, a)`` for ``c != 0`` through the K-Bessel closed form."""
    return hypergeom.eta1_equal_params(G, c, a)


def _e(v: float) -> complex:
    return cmath.exp(2j * math.pi * v)


def _prim_vectors_by_y(y, bound):
    return primitive_vectors(2, bound, y)


DECAY_CUT = 24.0  # terms below exp(-DECAY_CUT) relative to the leading one are dropped


def _F010(z, s):
    y = z.y
    return (2 * math.pi * specfun.gamma(2 * s - 1) / specfun.gamma(s) ** 2
            * siegelseries.siegel_rank0(1, 2 * s) * _det(y) ** s
            * zetalattice.km_zeta(1, 2, 2 * y, 2 * s - 1))


def _F020(z, s):
    y = z.y
    return (4 * math.pi ** 3 * specfun.gamma_m(2, 2 * s - 1.5) / specfun.gamma_m(2, s) ** 2
            * siegelseries.siegel_rank0(2, 2 * s) * _det(y) ** s
            * _det(2 * y) ** (-(2 * s - 1.5)))


def _rank1_pairs(y, cut):
    """Pairs ``(h, r)`` with ``h >= 1``, ``r`` primitive mod sign and ``h y[r] <= cut``."""
    out = []
    for r in _prim_vectors_by_y(y, cut):
        yr = float(np.array(r) @ y @ np.array(r))
        for h in range(1, int(math.floor(cut / yr)) + 1):
            out.append((h, r, yr))
    return out


def _F011(z, s, cut):
    y, x = z.y, z.x
    pref = 2 * math.pi / specfun.gamma(s) ** 2 * _det(y) ** s / specfun.riemann_zeta(2 * s)
    total = 0.0
    for h, r, yr in _rank1_pairs(y, cut):
        xr = float(np.array(r) @ x @ np.array(r))
        coeff = specfun.sigma_power(h, 1 - 2 * s) * _eta1_equal(2 * yr, math.pi * h, s)
        total += coeff * 2 * cmath.cos(2 * math.pi * h * xr)
    return pref * total


def _F021(z, s, cut):
    y, x = z.y, z.x
    pref = (4 * math.pi ** 3.5 * specfun.gamma(2 * s - 1.5) / specfun.gamma_m(2, s) ** 2
            * _det(y) ** s)
    total = 0.0
    for h, r, yr in _rank1_pairs(y, cut):
        xr = float(np.array(r) @ x @ np.array(r))
        S = siegelseries.siegel_reduce(HalfIntegralForm(((2 * h,),)), 2, 2 * s)
        g = float(jacobi_complement(y, CosetRep.from_primitive([[r[0]], [r[1]]]))[0, 0])
        eta_star = (2 * yr) ** (2 * s - 2) * _eta1_equal(2 * yr, math.pi * h, s - 0.5)
        b = S * (2 * yr) ** (1.5 - 2 * s) * eta_star * (2 * g) ** (-(2 * s - 1.5))
        total += b * 2 * cmath.cos(2 * math.pi * h * xr)
    return pref * total


def rank2_forms(bound: float) -> list[HalfIntegralForm]:
    """Nondegenerate 2x2 half-integral forms with ``tr|h| <= bound``."""
    L = int(math.floor(bound))
    out = []
    for a in range(-L, L + 1):
        for c in range(-L, L + 1):
            for b in range(-L, L + 1):
                if 4 * a * c - b * b == 0:
                    continue
                ev = np.linalg.eigvalsh(np.array([[a, b / 2], [b / 2, c]], dtype=float))
                if np.sum(np.abs(ev)) <= bound + 1e-12:
                    out.append(HalfIntegralForm(((2 * a, b), (b, 2 * c))))
    return out


@lru_cache(maxsize=20000)
def _eta2_cached(ykey, hkey, s):
    y = np.array(ykey).reshape(2, 2)
    h = np.array(hkey, dtype=float).reshape(2, 2) / 2
    return hypergeom.eta(2 * y, math.pi * h, s, s, rel_tol=1e-10)


def _eta2_key(y, h: HalfIntegralForm):
    d = h.doubled
    cands = [(d[0][0], d[0][1], d[1][1]), (-d[0][0], -d[0][1], -d[1][1])]
    if y[0, 1] == 0:
        cands += [(a, -b, c) for a, b, c in cands]
    a, b, c = min(cands)
    return (a, b, b, c)


def _F022(z, s, cut):
    y, x = z.y, z.x
    pref = 4 * math.pi ** 3 / specfun.gamma_m(2, s) ** 2 * _det(y) ** s
    lam = float(min(np.linalg.eigvalsh(y)))
    bound = cut / (2 * math.pi * lam)
    ykey = tuple(float(v) for v in y.ravel())
    total = 0.0
    for h in rank2_forms(bound):
        S = siegelseries.siegel_rank2(h, 2 * s)
        eta = _eta2_cached(ykey, _eta2_key(y, h), complex(s).real if complex(s).imag == 0 else s)
        total += S * eta * _e(float(np.sum(h.to_array() * x)))
    return pref * total


def fourier_term_F(nu: int, lam: int, z, s, T: float | None = None, m: int = 2, k: int = 0):
    """Fourier term ``F_{k,nu,lam}^(m)(z, s)`` for ``m = 2``, ``k = 0``.

    ``T`` is the decay cut: terms whose exponential factor is below
    ``exp(-T)`` are dropped (default ``DECAY_CUT``).
    """
    if m != 2 or k != 0:
        raise DomainError("fourier_term_F is implemented for m = 2, k = 0")
    if not 0 <= lam <= nu <= 2:
        raise DomainError("need 0 <= lam <= nu <= 2")
    z = _as_point(z)
    if z.m != 2:
        raise DomainError("z must be 2x2")
    cut = DECAY_CUT if T is None else float(T)
    pair_cut = cut / (2 * math.pi)
    if (nu, lam) == (0, 0):
        return _det(z.y) ** s
    if (nu, lam) == (1, 0):
        return _F010(z, s)
    if (nu, lam) == (2, 0):
        return _F020(z, s)
    if (nu, lam) == (1, 1):
        return _F011(z, s, pair_cut)
    if (nu, lam) == (2, 1):
        return _F021(z, s, pair_cut)
    return _F022(z, s, cut)


def eisenstein_via_fourier(z, s, T: float | None = None):
    """``E_0^(2)(z, s)`` as the sum of all six Fourier terms; needs ``Re s > 2``."""
    if complex(s).real <= 2:
        raise DomainError("the Fourier expansion is used for Re(s) > 2")
    z = _as_point(z)
    total = sum(fourier_term_F(nu, lam, z, s, T) for nu in range(3) for lam in range(nu + 1))
    return _real_if(total, s) if abs(complex(total).imag) < 1e-13 * abs(total) else complex(total)


# ---------------------------------------------------------------------------
# numerical limit check at s = 1 for degree 2


@dataclass
class LimitCheckReport:
    constant_estimate: float
    constant_error: float
    constant_expected: float
    coefficient_estimate: float
    coefficient_error: float
    coefficient_expected: float
    form: Rank1Form
    ladders: list


def _rank1_coefficient_F021(y, h: Rank1Form, s):
    """Coefficient of ``e(tr(hx))`` in ``F_{0,2,1}^(2)`` for a rank-one ``h = t w w^T``."""
    w = np.array(h.w, dtype=float)
    yr = float(w @ y @ w)
    t = abs(h.t)
    S = siegelseries.siegel_reduce(HalfIntegralForm(((2 * t,),)), 2, 2 * s)
    g = float(jacobi_complement(y, CosetRep.from_primitive([[h.w[0]], [h.w[1]]]))[0, 0])
    eta_star = (2 * yr) ** (2 * s - 2) * _eta1_equal(2 * yr, math.pi * t, s - 0.5)
    pref = (4 * math.pi ** 3.5 * specfun.gamma(2 * s - 1.5) / specfun.gamma_m(2, s) ** 2
            * _det(y) ** s)
    return pref * S * (2 * yr) ** (1.5 - 2 * s) * eta_star * (2 * g) ** (-(2 * s - 1.5))


def _richardson_residue(f, deltas):
    """Residue estimate of ``f`` at 1 from symmetric differences, extrapolated in ``delta^2``."""
    est = [d * (f(1 + d) - f(1 - d)) / 2 for d in deltas]
    d2 = np.array(deltas) ** 2
    # fit est = R + c d^2 + e d^4
    V = np.vstack([np.ones_like(d2), d2, d2 ** 2]).T[:, :min(3, len(deltas))]
    coef, *_ = np.linalg.lstsq(V, np.array(est, dtype=float), rcond=None)
    resid = np.array(est) - V @ coef
    return float(coef[0]), est, float(np.max(np.abs(resid))) if len(deltas) > V.shape[1] else abs(est[-1] - coef[0]) * 1e-3


def residue_limit_check(z=None, deltas_list=None, h: Rank1Form | None = None) -> LimitCheckReport:
    """Extrapolate ``(s - 1) F`` for the singular degree-2 families at ``s = 1``.

    The constant term uses ``F_{0,1,0} + F_{0,2,0}`` and the coefficient of
    ``h`` (default ``E_11``) uses ``F_{0,2,1}``. Each ladder of ``delta``
    values gives one estimate; the spread between ladders is the error.
    """
    z = UpperHalfPoint(np.zeros((2, 2)), np.eye(2)) if z is None else _as_point(z)
    if z.m != 2:
        raise DomainError("limit check implemented for m = 2")
    if deltas_list is None:
        deltas_list = [[1e-2, 7e-3, 5e-3, 3e-3], [3e-3, 2e-3, 1.5e-3, 1e-3]]
    for ladder in deltas_list:
        if any(not 1e-4 < d < 1e-1 for d in ladder):
            raise DomainError("deltas must lie in (1e-4, 1e-1)")
    h = Rank1Form(1, (1, 0)) if h is None else h
    y = z.y

    def const(s):
        return (_F010(z, s) + _F020(z, s)).real

    def coeff(s):
        return complex(_rank1_coefficient_F021(y, h, s)).real

    c_est = [_richardson_residue(const, d)[0] for d in deltas_list]
    b_est = [_richardson_residue(coeff, d)[0] for d in deltas_list]
    expected_c = residue_A_constant(y, 2)
    expected_b = (residue_B_coefficient(y, 2) * len(specfun.divisors(abs(h.t)))
                  * hypergeom.eta_rank1_residue_point(y, h))
    return LimitCheckReport(c_est[-1], float(np.ptp(c_est)), expected_c,
                            b_est[-1], float(np.ptp(b_est)), expected_b, h,
                            [list(d) for d in deltas_list])
