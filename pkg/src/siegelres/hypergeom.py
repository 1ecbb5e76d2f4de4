"""Confluent hypergeometric functions of matrix argument for sizes 1 and 2.

The integral

    eta_m(g, h; a, b) = int_{x +- h > 0} exp(-tr(g x)) det(x + h)^(a - k) det(x - h)^(b - k) dx,

``k = (m + 1) / 2``, is evaluated by double-exponential cubature. For
``m = 2`` the matrix ``h`` is first diagonalised by a rotation (which
changes ``g`` but not the measure), the diagonal entries of ``x`` run over
half-lines (exp-sinh map) and the off-diagonal entry over the chord allowed
by both determinant conditions (tanh-sinh map). The step is halved until
two successive levels agree, which also provides the error estimate.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import specfun
from .errors import ConvergenceError, DomainError
from .symcore import Rank1Form, quadratic_transform


def kappa(nu: int) -> float:
    return (nu + 1) / 2


@dataclass(frozen=True)
class QuadResult:
    value: complex
    error: float
    levels: int


@dataclass(frozen=True)
class ConeIntegralSpec:
    """Arguments of ``eta_m(g, h; alpha, beta)``."""

    g: np.ndarray
    h: np.ndarray
    alpha: complex
    beta: complex

    def __post_init__(self):
        g = np.atleast_2d(np.asarray(self.g, dtype=float))
        h = np.atleast_2d(np.asarray(self.h, dtype=float))
        if g.shape != h.shape or g.shape[0] != g.shape[1]:
            raise DomainError("g and h must be square of the same size")
        if not np.allclose(g, g.T) or not np.allclose(h, h.T):
            raise DomainError("g and h must be symmetric")
        if min(np.linalg.eigvalsh(g)) <= 0:
            raise DomainError("g must be positive definite")
        object.__setattr__(self, "g", g)
        object.__setattr__(self, "h", h)

    @property
    def m(self) -> int:
        return self.g.shape[0]

    @property
    def kappa(self) -> float:
        return kappa(self.m)


@dataclass(frozen=True)
class SignatureData:
    p: int
    q: int
    r: int
    delta_plus: float
    delta_minus: float


# ---------------------------------------------------------------------------
# double-exponential node sets


@lru_cache(maxsize=32)
def _exp_sinh(h: float, t_lo: float = -5.0, t_hi: float = 3.2):
    t = np.arange(t_lo, t_hi + 0.5 * h, h)
    u = np.exp(0.5 * np.pi * np.sinh(t))
    w = h * 0.5 * np.pi * np.cosh(t) * u
    return u, w


@lru_cache(maxsize=32)
def _tanh_sinh(h: float, t_max: float = 3.6):
    t = np.arange(-t_max, t_max + 0.5 * h, h)
    arg = 0.5 * np.pi * np.sinh(t)
    tau = np.tanh(arg)
    one_minus_tau2 = 1.0 / np.cosh(arg) ** 2
    w = h * 0.5 * np.pi * np.cosh(t) * one_minus_tau2
    return tau, one_minus_tau2, w


def _refine(level_fn, rel_tol, abs_tol, h0, max_levels):
    prev = level_fn(h0)
    h = h0
    for level in range(1, max_levels + 1):
        h /= 2
        cur = level_fn(h)
        err = abs(cur - prev)
        if err <= max(abs_tol, rel_tol * abs(cur)):
            return QuadResult(complex(cur), float(err), level)
        prev = cur
    raise ConvergenceError(f"cubature did not converge (last difference {err:.3e})")


# ---------------------------------------------------------------------------
# eta_m


def _check_region(m, h, alpha, beta):
    k = kappa(m)
    if np.allclose(h, 0):
        if (complex(alpha) + complex(beta)).real <= 2 * k - 1:
            raise DomainError("divergent parameters: need Re(alpha+beta) > 2 kappa - 1 for h = 0")
    elif complex(alpha).real <= k - 1 or complex(beta).real <= k - 1:
        raise DomainError("divergent parameters: need Re(alpha), Re(beta) > kappa - 1")


def _eta1_level(g, c, A, B):
    def level(step):
        u, w = _exp_sinh(step)
        scale = 1.0 / g
        x_minus_c = scale * u if c >= 0 else 2 * abs(c) + scale * u
        x_plus_c = 2 * abs(c) + scale * u if c >= 0 else scale * u
        x = abs(c) + scale * u
        with np.errstate(divide="ignore", invalid="ignore", under="ignore", over="ignore"):
            logf = -g * x + A * np.log(x_plus_c) + B * np.log(x_minus_c)
            f = np.where(np.isfinite(logf), np.exp(logf), 0.0)
        return complex(np.sum(w * f) * scale)
    return level


def _eta2_integrand(g, lam, A, B, a_off, b_off, W, tau, omt, wt):
    """Sum of the cubature for given outer nodes.

    ``a_off = a - |l1|`` has shape ``(na, 1)``, ``b_off = b - |l2|`` and the
    outer weights ``W`` have shape ``(na, nb)``.
    """
    l1, l2 = lam
    g11, g22, g12 = g[0, 0], g[1, 1], g[0, 1]
    a = abs(l1) + a_off
    b = abs(l2) + b_off
    am = a_off if l1 >= 0 else 2 * abs(l1) + a_off  # a - l1
    ap = 2 * abs(l1) + a_off if l1 >= 0 else a_off  # a + l1
    bm = b_off if l2 >= 0 else 2 * abs(l2) + b_off
    bp = 2 * abs(l2) + b_off if l2 >= 0 else b_off
    P = (ap * bp)[..., None]  # det(x + h) at x12 = 0
    Q = (am * bm)[..., None]  # det(x - h) at x12 = 0
    diff = (2 * (l1 * b + l2 * a))[..., None]  # P - Q, without cancellation
    p_small = P <= Q
    pm = np.where(p_small, P, Q)
    pM = np.where(p_small, Q, P)
    e_m = np.where(p_small, A, B)
    e_M = np.where(p_small, B, A)
    rho = pm / pM
    one_minus_rho = np.abs(diff) / pM
    T = tau[None, None, :]
    OMT = omt[None, None, :]
    with np.errstate(divide="ignore", invalid="ignore", under="ignore", over="ignore"):
        root = np.sqrt(pm)
        logf = (-(g11 * a + g22 * b)[..., None] - 2 * g12 * root * T
                + e_m * np.log(pm * OMT)
                + e_M * np.log(pM * (one_minus_rho + rho * OMT))
                + np.log(root))
        f = np.where(np.isfinite(logf), np.exp(logf), 0.0)
    return np.sum(W[..., None] * wt[None, None, :] * f)


def _eta2_level(g, lam, A, B, chunk=64):
    l1, l2 = lam
    s = 1.0 / min(np.linalg.eigvalsh(g))
    indefinite = l1 * l2 < 0
    if indefinite and l1 < 0:
        # put the positive eigenvalue first
        lam = (l2, l1)
        g = g[::-1, ::-1]
        l1, l2 = lam

    def level(step):
        u, wu = _exp_sinh(step)
        tau, omt, wt = _tanh_sinh(step)
        a_all, wa_all = s * u, s * wu
        total = 0.0
        for i in range(0, len(a_all), chunk):
            a_off = a_all[i:i + chunk, None]
            wa = wa_all[i:i + chunk, None]
            if not indefinite:
                b_off = np.broadcast_to(s * u[None, :], (a_off.shape[0], len(u)))
                W = wa * (s * wu)[None, :]
                total += _eta2_integrand(g, lam, A, B, a_off, b_off, W, tau, omt, wt)
                continue
            # P = Q on b - |l2| = (|l2| / l1) (a - l1); split the b range there
            width = (abs(l2) / l1) * a_off
            one_plus = 2.0 / (1.0 + np.exp(-np.pi * np.sinh(_ts_t(step))))
            b1 = width * 0.5 * one_plus[None, :]
            W1 = wa * width * 0.5 * wt[None, :]
            total += _eta2_integrand(g, lam, A, B, a_off, b1, W1, tau, omt, wt)
            b2 = width + s * u[None, :]
            W2 = wa * (s * wu)[None, :]
            total += _eta2_integrand(g, lam, A, B, a_off, b2, W2, tau, omt, wt)
        return complex(total)
    return level


@lru_cache(maxsize=32)
def _ts_t(h: float, t_max: float = 3.6):
    return np.arange(-t_max, t_max + 0.5 * h, h)


def eta_quadrature(g, h=None, alpha=None, beta=None, rel_tol=1e-9, abs_tol=1e-15,
                   max_levels=5) -> QuadResult:
    """Cubature of ``eta_m(g, h; alpha, beta)`` for ``m`` in ``{1, 2}``.

    The first argument may also be a :class:`ConeIntegralSpec`, in which
    case the other three are taken from it.

    Returns a :class:`QuadResult` holding the value and the difference
    between the last two refinement levels as error estimate.
    """
    if isinstance(g, ConeIntegralSpec):
        g, h, alpha, beta = g.g, g.h, g.alpha, g.beta
    g = np.atleast_2d(np.asarray(g, dtype=float))
    h = np.atleast_2d(np.asarray(h, dtype=float))
    m = g.shape[0]
    if h.shape != g.shape:
        raise DomainError("g and h must have the same size")
    if m not in (1, 2):
        raise DomainError("eta_quadrature supports m = 1, 2 only")
    if min(np.linalg.eigvalsh(g)) <= 0:
        raise DomainError("g must be positive definite")
    _check_region(m, h, alpha, beta)
    k = kappa(m)
    A = complex(alpha) - k
    B = complex(beta) - k
    if A.imag == 0 and B.imag == 0:
        A, B = A.real, B.real
    if m == 1:
        fn = _eta1_level(float(g[0, 0]), float(h[0, 0]), A, B)
        res = _refine(fn, rel_tol, abs_tol, 0.5, max_levels + 2)
    else:
        lam, O = np.linalg.eigh(h)
        lam = np.where(np.abs(lam) <= 1e-14 * max(1.0, np.max(np.abs(lam))), 0.0, lam)
        gr = O.T @ g @ O
        fn = _eta2_level(gr, tuple(lam), A, B)
        res = _refine(fn, rel_tol, abs_tol, 0.25, max_levels)
    if isinstance(A, float) and isinstance(B, float):
        return QuadResult(complex(res.value.real, 0.0), res.error, res.levels)
    return res


def eta(g, h, alpha, beta, **kw):
    """Value of ``eta_m`` by cubature (real when the parameters are real)."""
    v = eta_quadrature(g, h, alpha, beta, **kw).value
    return v.real if v.imag == 0 else v


def eta_star(g, h, alpha, beta, **kw):
    """``det(g)^(alpha + beta - kappa) * eta_m(g, h; alpha, beta)``."""
    g = np.atleast_2d(np.asarray(g, dtype=float))
    m = g.shape[0]
    scale = np.linalg.det(g) ** (complex(alpha) + complex(beta) - kappa(m))
    v = scale * eta_quadrature(g, h, alpha, beta, **kw).value
    return v.real if abs(v.imag) <= 1e-300 and complex(alpha).imag == 0 and complex(beta).imag == 0 else v


def xi_from_eta(g, h, alpha, beta, **kw):
    """``xi_m`` through its expression by ``eta_m(2g, pi h; alpha, beta)``."""
    g = np.atleast_2d(np.asarray(g, dtype=float))
    h = np.atleast_2d(np.asarray(h, dtype=float))
    m = g.shape[0]
    k = kappa(m)
    a, b = complex(alpha), complex(beta)
    pre = (cmath.exp(0.5j * math.pi * m * (b - a)) * 2 ** m * math.pi ** (m * k)
           / (specfun.gamma_m(m, a) * specfun.gamma_m(m, b)))
    v = pre * eta_quadrature(2 * g, math.pi * h, alpha, beta, **kw).value
    return v.real if abs(v.imag) < 1e-14 * abs(v) else v


def xi_zero_closed(m: int, g, alpha, beta):
    """Closed form of ``xi_m(g, 0; alpha, beta)`` for ``Re(alpha + beta) > 2 kappa - 1``."""
    g = np.atleast_2d(np.asarray(g, dtype=float))
    k = kappa(m)
    a, b = complex(alpha), complex(beta)
    if (a + b).real <= 2 * k - 1:
        raise DomainError("xi_zero_closed needs Re(alpha + beta) > 2 kappa - 1")
    val = (cmath.exp(0.5j * math.pi * m * (b - a)) * 2 ** (m * (1 - k)) * (2 * math.pi) ** (m * k)
           * specfun.gamma_m(m, a + b - k) / (specfun.gamma_m(m, a) * specfun.gamma_m(m, b))
           * np.linalg.det(2 * g) ** (k - a - b))
    return val.real if abs(val.imag) < 1e-14 * abs(val) else val


def signature(g, h, rel_tol=1e-9) -> SignatureData:
    """Signature of ``g^(1/2) h g^(1/2)`` and the products of its +/- eigenvalues."""
    g = np.atleast_2d(np.asarray(g, dtype=float))
    h = np.atleast_2d(np.asarray(h, dtype=float))
    w, v = np.linalg.eigh(g)
    root = v @ np.diag(np.sqrt(w)) @ v.T
    ev = np.linalg.eigvalsh(root @ h @ root)
    top = float(np.max(np.abs(ev))) if ev.size else 0.0
    tol = rel_tol * top
    if top > 0 and np.any((np.abs(ev) > tol) & (np.abs(ev) < 10 * tol)):
        raise DomainError("eigenvalue too close to the signature tolerance")
    pos = ev[ev > tol]
    neg = ev[ev < -tol]
    return SignatureData(len(pos), len(neg), len(ev) - len(pos) - len(neg),
                         float(np.prod(pos)) if len(pos) else 1.0,
                         float(np.prod(-neg)) if len(neg) else 1.0)


def omega(g, h, alpha, beta, **kw):
    """Normalised function ``omega_m``; evaluated only where the cubature converges."""
    g = np.atleast_2d(np.asarray(g, dtype=float))
    m = g.shape[0]
    k = kappa(m)
    a, b = complex(alpha), complex(beta)
    sig = signature(g, h)
    p, q, r = sig.p, sig.q, sig.r
    val = (2 ** (-p * a - q * b)
           / specfun.gamma_m(p, b - (m - p) / 2)
           / specfun.gamma_m(q, a - (m - q) / 2)
           / specfun.gamma_m(r, a + b - k)
           * sig.delta_plus ** (k - a - q / 4)
           * sig.delta_minus ** (k - b - p / 4)
           * eta_star(g, h, alpha, beta, **kw))
    return val.real if abs(val.imag) < 1e-14 * abs(val) else val


def eta1_equal_params(G: float, c: float, a):
    """Closed form of ``eta_1(G, c; a, a)`` for ``c != 0`` and ``Re a > 0``.

    ``Gamma(a) / sqrt(pi) * (2|c|/G)^(a - 1/2) * K_{a - 1/2}(G |c|)``.
    """
    if c == 0:
        raise DomainError("eta1_equal_params needs c != 0")
    c = abs(c)
    nu = complex(a) - 0.5
    val = (specfun.gamma(a) / math.sqrt(math.pi) * (2 * c / G) ** nu
           * specfun.bessel_k(nu.real if nu.imag == 0 else nu, G * c))
    return val.real if isinstance(val, complex) and val.imag == 0 else val


def eta_rank1_residue_point(y, h1: Rank1Form) -> float:
    """``eta_m(2y, pi t w w^T; m/2, m/2)`` in closed form.

    Equals ``pi^((m-1)/2) Gamma_{m-1}((m-1)/2) det(2y)^(-(m-1)/2) K_0(2 pi y[w] |t|)``.
    """
    y = np.atleast_2d(np.asarray(y, dtype=float))
    m = y.shape[0]
    if h1.m != m:
        raise DomainError("size mismatch between y and h")
    yw = quadratic_transform(y, np.array(h1.w, dtype=float))
    return (math.pi ** ((m - 1) / 2) * specfun.gamma_m(m - 1, (m - 1) / 2)
            * np.linalg.det(2 * y) ** (-(m - 1) / 2)
            * specfun.bessel_k(0, 2 * math.pi * yw * abs(h1.t)))
