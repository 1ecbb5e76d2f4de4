"""Epstein and Koecher-Maass zeta functions of positive definite matrices.

Epstein zeta functions are continued to the whole plane through the theta
(incomplete gamma) splitting at ``t = 1``; the Kronecker limit formula gives
the Laurent data at ``s = 1`` in size 2. Koecher-Maass zeta functions are
supported for ``nu`` in ``{0, 1, m}``.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import mpmath
import numpy as np

from . import specfun
from .errors import DomainError, MissingInputError, PoleError
from .specfun import DEFAULT_PRECISION, PrecisionConfig


def _posdef(g, m=None) -> np.ndarray:
    g = np.atleast_2d(np.asarray(g, dtype=float))
    if g.shape[0] != g.shape[1] or not np.allclose(g, g.T):
        raise DomainError("matrix must be symmetric")
    if m is not None and g.shape[0] != m:
        raise DomainError(f"matrix must have size {m}")
    if min(np.linalg.eigvalsh(g)) <= 0:
        raise DomainError("matrix must be positive definite")
    return g


@dataclass(frozen=True)
class KroneckerData:
    """``v' = g_11``, ``w = g_12`` and ``W = (w + i sqrt(det g)) / v'`` for a 2x2 ``g``."""

    g: np.ndarray
    v_prime: float
    w: float
    W: complex

    @classmethod
    def of(cls, g) -> "KroneckerData":
        g = _posdef(g, 2)
        v, w = float(g[0, 0]), float(g[0, 1])
        return cls(g, v, w, complex(w, math.sqrt(np.linalg.det(g))) / v)


@dataclass(frozen=True)
class LaurentWindow:
    """Laurent coefficients of orders -2, -1, 0 at ``center``; ``None`` marks an absent entry."""

    center: complex
    c_minus2: complex | None = None
    c_minus1: complex | None = None
    c_0: complex | None = None

    def __post_init__(self):
        for c in (self.c_minus2, self.c_minus1, self.c_0):
            if c is not None and not cmath.isfinite(complex(c)):
                raise DomainError("Laurent coefficients must be finite")

    @property
    def pole_order(self) -> int:
        if self.c_minus2 not in (None, 0):
            return 2
        if self.c_minus1 not in (None, 0):
            return 1
        return 0


# ---------------------------------------------------------------------------
# Epstein zeta


def _lattice_points(g: np.ndarray, bound: float) -> np.ndarray:
    """Nonzero integer vectors ``a`` with ``g[a] <= bound``, one of each pair ``+-a``."""
    m = g.shape[0]
    ginv = np.linalg.inv(g)
    radii = [int(math.floor(math.sqrt(bound * ginv[i, i]))) for i in range(m)]
    axes = [np.arange(-r, r + 1) for r in radii]
    pts = np.array(np.meshgrid(*axes, indexing="ij")).reshape(m, -1).T
    # first nonzero coordinate positive
    nz = pts != 0
    first = np.argmax(nz, axis=1)
    keep = nz.any(axis=1) & (pts[np.arange(len(pts)), first] > 0)
    pts = pts[keep]
    q = np.einsum("ni,ij,nj->n", pts, g, pts)
    return q[q <= bound]


def _theta_sum(qs: np.ndarray, a, tol_exp: float):
    """``sum (pi q)^-a Gamma(a, pi q)`` over the half-lattice values ``qs``."""
    total = mpmath.mpf(0)
    vals, counts = np.unique(np.round(qs, 12), return_counts=True)
    for q, c in zip(vals, counts):
        x = mpmath.pi * mpmath.mpf(float(q))
        if x > tol_exp:
            break
        total += int(c) * x ** (-a) * mpmath.gammainc(a, x)
    return total


def epstein_completed(g, s, precision: PrecisionConfig = DEFAULT_PRECISION):
    """``pi^-s Gamma(s) sum_{a != 0} g[a]^-s`` (full sum over nonzero ``a``), continued.

    Poles at ``s = 0`` and ``s = m/2`` raise ``PoleError``.
    """
    g = _posdef(g)
    m = g.shape[0]
    s = complex(s)
    if abs(s) < 1e-13:
        raise PoleError("Epstein zeta (completed)", s)
    if abs(s - m / 2) < 1e-13:
        raise PoleError("Epstein zeta (completed)", s)
    det = float(np.linalg.det(g))
    # cut where the incomplete gamma factors drop below abs_tol * 1e-3
    cut = -math.log(precision.abs_tol * 1e-3) + abs(s) + m
    with mpmath.workdps(specfun.WORKING_DPS):
        ss = mpmath.mpc(s.real, s.imag)
        direct = _theta_sum(_lattice_points(g, cut / math.pi), ss, cut)
        dual = _theta_sum(_lattice_points(np.linalg.inv(g), cut / math.pi), m / 2 - ss, cut)
        val = 2 * direct + 2 * dual / mpmath.sqrt(det) + 1 / (mpmath.sqrt(det) * (ss - m / 2)) - 1 / ss
        return specfun._out(val)


def epstein_zeta(g, s, method: str = "theta", precision: PrecisionConfig = DEFAULT_PRECISION):
    """``zeta_g(s) = sum_{0 != a in Z^2 / +-1} g[a]^-s`` for a positive definite 2x2 ``g``.

    ``method="theta"`` uses the continued representation (all ``s != 1``);
    ``method="direct"`` sums the lattice with an integral tail correction
    and requires ``Re s > 1.2``.
    """
    g = _posdef(g, 2)
    s = complex(s)
    if abs(s - 1) < 1e-13:
        raise PoleError("zeta_g", s)
    if method == "direct":
        return epstein_direct(g, s, precision=precision)
    if method != "theta":
        raise DomainError(f"unknown method {method!r}")
    if _near_nonpositive_int(s):
        # Gamma(s) has a pole; zeta_g(-n) = 0 for n >= 1 and zeta_g(0) = -1/2
        return -0.5 if abs(s) < 1e-13 else 0.0
    with mpmath.workdps(specfun.WORKING_DPS):
        lam = epstein_completed(g, s, precision)
        val = complex(lam) * complex(mpmath.pi ** s / mpmath.gamma(s)) / 2
    return val.real if s.imag == 0 else val


def _near_nonpositive_int(s: complex) -> bool:
    return abs(s.imag) < 1e-13 and s.real < 0.5 and abs(s.real - round(s.real)) < 1e-13


def epstein_direct(g, s, radius2: float | None = None, precision: PrecisionConfig = DEFAULT_PRECISION):
    """Direct half-lattice sum of ``g[a]^-s`` over ``g[a] <= R`` plus the integral tail.

    The tail ``pi / (2 sqrt(det g)) R^(1-s) / (s-1)`` replaces the sum over
    ``g[a] > R``; the remaining error is of lattice-point-discrepancy size.
    """
    g = _posdef(g, 2)
    s = complex(s)
    if s.real <= 1.2:
        raise DomainError("direct lattice sum needs Re(s) > 1.2")
    if radius2 is None:
        radius2 = 4.0e4 * max(np.linalg.eigvalsh(g))
    qs = _lattice_points(g, radius2)
    total = np.sum(np.exp(-s * np.log(qs)))
    total += math.pi / (2 * math.sqrt(np.linalg.det(g))) * radius2 ** (1 - s) / (s - 1)
    return total.real if s.imag == 0 else complex(total)


def kronecker_beta(g) -> float:
    """``gamma + 1/2 log(v' / (2 sqrt(det g))) - log|eta(W)|^2``."""
    k = KroneckerData.of(g)
    det = float(np.linalg.det(k.g))
    eta = specfun.dedekind_eta(k.W)
    return (specfun.EULER_GAMMA + 0.5 * math.log(k.v_prime / (2 * math.sqrt(det)))
            - 2 * math.log(abs(eta)))


def kronecker_limit_check(g, delta: float = 1e-3):
    """Residue and constant term of ``zeta_g`` at ``s = 1`` by symmetric extrapolation.

    The constant term is that of ``(4 det g)^((s-1)/2) zeta_g(s)``, so that it
    is comparable with ``1/2 (4 det g)^(-1/2) 4 pi beta(g)``; the residue is
    that of ``zeta_g`` itself.

    Returns
    -------
    (residue_est, const_est) : tuple of float
    """
    if not 1e-6 < delta < 0.1:
        raise DomainError("delta must lie in (1e-6, 0.1)")
    g = _posdef(g, 2)
    det4 = 4 * float(np.linalg.det(g))

    def f(s):
        return det4 ** ((s - 1) / 2) * epstein_zeta(g, s)

    def parts(d):
        fp, fm = f(1 + d), f(1 - d)
        return d * (fp - fm) / 2, (fp + fm) / 2

    r1, c1 = parts(delta)
    r2, c2 = parts(2 * delta)
    return (4 * r1 - r2) / 3, (4 * c1 - c2) / 3


# ---------------------------------------------------------------------------
# Koecher-Maass zeta


def km_zeta(nu: int, m: int, g, s):
    """``zeta_nu^(m)(g, s)`` for ``nu`` in ``{0, m}`` (any ``m``) and ``nu = 1`` (``m <= 4``).

    For ``nu = 1`` the primitive sum is the continued Epstein zeta divided by ``zeta(2s)``.
    """
    g = _posdef(g, m)
    s = complex(s)
    if nu == 0:
        return 1.0
    if nu == m:
        val = np.linalg.det(g) ** (-s)
        return val.real if s.imag == 0 else complex(val)
    if nu == 1 and m <= 4:
        if _near_nonpositive_int(s):
            raise DomainError("km_zeta(1, m) is not implemented at nonpositive integers")
        with mpmath.workdps(specfun.WORKING_DPS):
            lam = complex(epstein_completed(g, s))
            full = lam * complex(mpmath.pi ** s / mpmath.gamma(s)) / 2
        val = full / specfun.riemann_zeta(2 * s)
        return val.real if s.imag == 0 else val
    raise DomainError(f"unsupported (nu, m) = ({nu}, {m})")


def km_xi_completed(nu: int, m: int, g, s):
    """``prod_{i < nu} xi(2s - i) * zeta_nu^(m)(g, s)``, with ``xi_0 = 1``."""
    if nu == 0:
        return 1.0
    s = complex(s)
    if nu == 1 and m <= 4:
        g = _posdef(g, m)
        if abs(s) < 1e-13 or abs(s - m / 2) < 1e-13:
            raise PoleError(f"xi_1^({m})", s)
        # xi(2s) zeta_1 = pi^-s Gamma(s) (1/2) sum_{a != 0}
        val = complex(epstein_completed(g, s)) / 2
        return val.real if s.imag == 0 else val
    out = km_zeta(nu, m, g, s)
    for i in range(nu):
        out *= specfun.xi_completed(2 * s - i)
    return out


def arakawa_residue(nu: int, m: int, g, mu: int, at: str = "right"):
    """Residue of ``xi_nu^(m)(g, s)`` at ``s = mu/2`` (``at="left"``) or ``s = (m - mu)/2``.

    ``mu`` must lie in ``[0, nu - 1]`` when ``m >= 2 nu - 1`` and in
    ``[0, m - nu]`` otherwise.
    """
    if not 1 <= nu <= m:
        raise DomainError("need 1 <= nu <= m")
    top = nu - 1 if m >= 2 * nu - 1 else m - nu
    if not 0 <= mu <= top:
        raise DomainError(f"mu must lie in [0, {top}]")
    g = _posdef(g, m)
    v = specfun.v_constant(nu - mu)
    if at == "left":
        return -0.5 * v * km_xi_completed(mu, m, g, nu / 2)
    if at == "right":
        return (0.5 * v * np.linalg.det(g) ** (-nu / 2)
                * km_xi_completed(mu, m, np.linalg.inv(g), nu / 2))
    raise DomainError("at must be 'left' or 'right'")


def km_constant_term_C(m: int, y, supplied: float | None = None) -> float:
    """Constant term ``C_{m-1}^(m)(y)`` of ``xi_{m-1}^(m)(2y, s)`` at ``s = m/2``.

    For ``m = 2``::

        C = 1/2 (4 det y)^(-1/2) (gamma + log(y_11 / (8 pi)) - log det y - 2 log|eta(W)|^2)

    with ``W`` the Kronecker point of ``y`` (equivalently of ``2y``). For
    ``m >= 3`` the value must be supplied.
    """
    if m == 2:
        y = _posdef(y, 2)
        det = float(np.linalg.det(y))
        W = KroneckerData.of(y).W
        eta = specfun.dedekind_eta(W)
        return (0.5 * (4 * det) ** -0.5
                * (specfun.EULER_GAMMA + math.log(y[0, 0] / (8 * math.pi)) - math.log(det)
                   - 4 * math.log(abs(eta))))
    if m < 2:
        raise DomainError("constant term defined for m >= 2")
    if supplied is None:
        raise MissingInputError(f"C_{m - 1}^({m})(y) must be supplied for m = {m}")
    return float(supplied)


def km_laurent_limit(y, delta: float = 1e-3) -> LaurentWindow:
    """Residue and constant term of ``xi_1^(2)(2y, s)`` at ``s = 1`` by extrapolation.

    Independent of the closed form in :func:`km_constant_term_C`.
    """
    y = _posdef(y, 2)
    g = 2 * y

    def parts(d):
        fp = km_xi_completed(1, 2, g, 1 + d)
        fm = km_xi_completed(1, 2, g, 1 - d)
        return d * (fp - fm) / 2, (fp + fm) / 2

    r1, c1 = parts(delta)
    r2, c2 = parts(2 * delta)
    return LaurentWindow(1.0, None, (4 * r1 - r2) / 3, (4 * c1 - c2) / 3)
