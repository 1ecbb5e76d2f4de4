"""Independent checks: coset sums for ``E_0`` in degrees 1 and 2 and brute-force oracles.

None of these paths use the Fourier expansion. The degree-2 Eisenstein
series is evaluated either as a raw sum over coprime symmetric pairs
``(c, d)`` with bounded entries, or (much faster) by splitting the
classes by the rank of ``c``:

* rank 0 is the single class ``(0, 1)``;
* rank 1 classes are degree-1 series in ``tau = z[v]`` for primitive ``v``;
* rank 2 classes are indexed by rational symmetric ``R = c^-1 d`` and are
  summed over ``R mod 1`` and a box of integral translates, with the far
  field replaced by an integral.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce

import numpy as np

from . import hypergeom, siegelseries, specfun, zetalattice
from .errors import ConvergenceError, DomainError
from .symcore import HalfIntegralForm, content, primitive_vectors, rank1_enumerate

MAX_PAIRS = 10 ** 7


# ---------------------------------------------------------------------------
# coset enumeration


def _hermite_rows(a: list[list[int]]) -> tuple[tuple[int, ...], ...]:
    """Row Hermite normal form of a full-row-rank integer matrix (left unimodular action)."""
    a = [list(r) for r in a]
    rows, cols = len(a), len(a[0])
    piv_row = 0
    for j in range(cols):
        if piv_row == rows:
            break
        # Euclid on column j below piv_row
        while True:
            nz = [i for i in range(piv_row, rows) if a[i][j] != 0]
            if not nz:
                break
            i0 = min(nz, key=lambda i: abs(a[i][j]))
            a[piv_row], a[i0] = a[i0], a[piv_row]
            done = True
            for i in range(piv_row + 1, rows):
                q = a[i][j] // a[piv_row][j]
                if q:
                    a[i] = [x - q * y for x, y in zip(a[i], a[piv_row])]
                if a[i][j] != 0:
                    done = False
            if done:
                break
        if all(a[i][j] == 0 for i in range(piv_row, rows)):
            continue
        if a[piv_row][j] < 0:
            a[piv_row] = [-x for x in a[piv_row]]
        for i in range(piv_row):
            q = a[i][j] // a[piv_row][j]
            if q:
                a[i] = [x - q * y for x, y in zip(a[i], a[piv_row])]
        piv_row += 1
    return tuple(tuple(r) for r in a)


@dataclass(frozen=True)
class CosetPair:
    """A coprime symmetric pair ``(c, d)`` in row Hermite form."""

    c: tuple
    d: tuple

    @property
    def m(self) -> int:
        return len(self.c)

    @classmethod
    def canonical(cls, c, d) -> "CosetPair":
        m = len(c)
        stacked = [list(c[i]) + list(d[i]) for i in range(m)]
        h = _hermite_rows(stacked)
        return cls(tuple(r[:m] for r in h), tuple(r[m:] for r in h))

    def factor(self, z) -> complex:
        """``det(c z + d)``."""
        return complex(np.linalg.det(np.array(self.c) @ np.atleast_2d(z) + np.array(self.d)))


def _is_coprime_symmetric(c: np.ndarray, d: np.ndarray) -> bool:
    if not np.array_equal(c @ d.T, d @ c.T):
        return False
    m = c.shape[0]
    full = np.hstack([c, d])
    if m == 1:
        return math.gcd(int(full[0, 0]), int(full[0, 1])) == 1
    minors = [int(round(np.linalg.det(full[:, list(cols)])))
              for cols in itertools.combinations(range(2 * m), m)]
    return reduce(math.gcd, minors) == 1


def coset_enumerate(m: int, H: int) -> list[CosetPair]:
    """All classes of coprime symmetric pairs with entries bounded by ``H``, once each.

    The list is sorted by the largest entry of the canonical representative
    of the generating pair, so prefixes are shells.
    """
    if m not in (1, 2):
        raise DomainError("coset_enumerate supports m in {1, 2}")
    if H < 1:
        raise DomainError("H must be at least 1")
    if (2 * H + 1) ** (2 * m * m) > MAX_PAIRS:
        raise DomainError(f"enumeration of {(2 * H + 1) ** (2 * m * m)} pairs exceeds the cost guard")
    seen: dict[CosetPair, int] = {}
    rng = range(-H, H + 1)
    if m == 1:
        for c, d in itertools.product(rng, rng):
            if math.gcd(c, d) == 1:
                p = CosetPair.canonical(((c,),), ((d,),))
                seen.setdefault(p, max(abs(c), abs(d)))
    else:
        # d c^T symmetric filter is vectorised over d for each c
        ds = np.array(list(itertools.product(rng, repeat=4)), dtype=np.int64).reshape(-1, 2, 2)
        for cflat in itertools.product(rng, repeat=4):
            c = np.array(cflat, dtype=np.int64).reshape(2, 2)
            cdT = np.einsum("ij,nkj->nik", c, ds)
            ok = cdT[:, 0, 1] == cdT[:, 1, 0]
            for d in ds[ok]:
                if _is_coprime_symmetric(c, d):
                    p = CosetPair.canonical(c.tolist(), d.tolist())
                    height = int(max(np.abs(c).max(), np.abs(d).max()))
                    if p not in seen or seen[p] > height:
                        seen[p] = height
    return sorted(seen, key=lambda p: (seen[p], p.c, p.d))


def eisenstein_direct(z, s, H: int = 2, method: str = "ranks", N: int = 16, L: int = 8):
    """``E_0^(m)(z, s) = det(y)^s sum |det(cz+d)|^-2s`` for ``m`` in ``{1, 2}``.

    ``method="shells"`` sums over ``coset_enumerate(m, H)`` and returns
    ``(value, tail)`` with ``tail`` the last shell difference.
    ``method="ranks"`` (degree 2 only) splits the classes by the rank of
    ``c`` and returns ``(value, error)``; ``N`` bounds the denominators
    of ``R = c^-1 d`` summed exactly and ``L`` the box of translates.
    """
    z = np.atleast_2d(np.asarray(z, dtype=complex))
    m = z.shape[0]
    if complex(s).real <= (m + 1) / 2 + 0.5:
        raise DomainError(f"direct sum needs Re(s) > {(m + 1) / 2 + 0.5}")
    y = z.imag
    pref = np.linalg.det(y) ** s
    if method == "shells":
        pairs = coset_enumerate(m, H)
        total = inner = 0.0
        for p in pairs:
            term = abs(p.factor(z)) ** (-2 * s)
            total += term
            if max(max(map(abs, r)) for r in p.c + p.d) < H:
                inner += term
        return pref * total, abs(pref * (total - inner))
    if method != "ranks" or m != 2:
        raise DomainError("method 'ranks' is implemented for m = 2")
    r1 = _rank1_part(z, s)
    r2, err2 = _rank2_part(z, s, N, L)
    return pref * (1 + r1 + r2), abs(pref) * err2


def _degree1_nonconstant(tau: complex, s) -> float:
    """``sum_{coprime (c,d)/+-, c != 0} |c tau + d|^-2s`` via the Epstein zeta of the form ``|c tau + d|^2``."""
    g = np.array([[abs(tau) ** 2, tau.real], [tau.real, 1.0]])
    return zetalattice.epstein_zeta(g, s) / specfun.riemann_zeta(2 * s) - 1


def _rank1_part(z: np.ndarray, s, decay: float = 30.0) -> float:
    """Sum over classes with ``rank c = 1``.

    Each degree-1 sum is split as ``A_s Im(tau)^(1-2s)`` plus a remainder
    of size ``exp(-2 pi y[v])``. The first parts sum to ``A_s`` times the
    primitive lattice zeta of ``y``; remainders are kept for ``y[v]`` up to
    the decay cut.
    """
    y, x = z.imag, z.real
    A_s = (math.sqrt(math.pi) * specfun.gamma(s - 0.5) * specfun.riemann_zeta(2 * s - 1)
           / (specfun.gamma(s) * specfun.riemann_zeta(2 * s)))
    bound = decay / (2 * math.pi)
    total = 0.0
    for v in primitive_vectors(2, bound, y):
        v = np.array(v, dtype=float)
        yv = float(v @ y @ v)
        tau = complex(v @ x @ v, yv)
        total += _degree1_nonconstant(tau, s) - A_s * yv ** (1 - 2 * s)
    zeta_y = zetalattice.km_zeta(1, 2, y, 2 * s - 1)
    return total + A_s * zeta_y


def denominator(R: list[Fraction]) -> int:
    """``nu(R) = |det c|`` for ``R = c^-1 d`` given as ``(r11, r12, r22)``."""
    q = reduce(lambda a, b: a * b // math.gcd(a, b), (Fraction(r).denominator for r in R), 1)
    M = [int(Fraction(r) * q) for r in R]
    G = math.gcd(math.gcd(M[0], M[1]), M[2])
    det = M[0] * M[2] - M[1] * M[1]
    e1 = q // math.gcd(G, q)
    e2 = q * G // math.gcd(det, q * G) if G else q
    return e1 * e2


def _residue_classes(N: int) -> dict[int, list[tuple[Fraction, Fraction, Fraction]]]:
    """Symmetric ``R mod 1`` grouped by ``nu(R) <= N``."""
    out: dict[int, list] = {}
    for q in range(1, N + 1):
        for M in itertools.product(range(q), repeat=3):
            if math.gcd(math.gcd(math.gcd(*M[:2]), M[2]), q) != 1:
                continue
            R = tuple(Fraction(a, q) for a in M)
            n = denominator(R)
            if n <= N:
                out.setdefault(n, []).append(R)
    return out


def _gauss_cube(f, L: float, n_per_cell: int = 10):
    """Tensor Gauss-Legendre over ``[-L, L]^3`` with unit panels."""
    t, w = np.polynomial.legendre.leggauss(n_per_cell)
    edges = np.arange(-L, L, 1.0)
    nodes = (edges[:, None] + 0.5 + 0.5 * t[None, :]).ravel()
    weights = np.tile(0.5 * w, edges.size)
    X, Y, Z = np.meshgrid(nodes, nodes, nodes, indexing="ij")
    W = weights[:, None, None] * weights[None, :, None] * weights[None, None, :]
    return float(np.sum(W * f(X, Y, Z)))


def _det_abs(z: np.ndarray, a, b, c, s):
    """``|det(z + [[a, b], [b, c]])|^-2s`` vectorised."""
    d = (z[0, 0] + a) * (z[1, 1] + c) - (z[0, 1] + b) ** 2
    return np.abs(d) ** (-2 * s)


def _rank2_part(z: np.ndarray, s, N: int, L: int):
    y = z.imag
    I_full = hypergeom.xi_zero_closed(2, y, s, s)
    I_out = I_full - _gauss_cube(lambda a, b, c: _det_abs(z, a, b, c, s), L + 0.5)
    ks = np.arange(-L, L + 1)
    KA, KB, KC = (k.ravel() for k in np.meshgrid(ks, ks, ks, indexing="ij"))
    x0 = z.real
    classes = _residue_classes(N)
    S0 = siegelseries.siegel_rank0(2, 2 * s)
    total = counted = 0.0
    coarse = None
    n_coarse = (3 * N) // 4
    for n in sorted(classes):
        group = 0.0
        for R in classes[n]:
            # representative of R mod 1 with R + x0 centred in the unit cube
            shift = [float(R[k]) - round(float(R[k]) + x0[i, j]) for k, (i, j) in enumerate(((0, 0), (0, 1), (1, 1)))]
            vals = _det_abs(z, KA + shift[0], KB + shift[1], KC + shift[2], s)
            group += float(np.sum(vals)) + I_out
        total += n ** (-2 * s) * group
        counted += len(classes[n]) * n ** (-2 * s)
        if n == n_coarse:
            coarse = total + I_full * (S0 - counted)
    value = total + I_full * (S0 - counted)
    # the omitted denominators are replaced by their mean I; the change from 3N/4 to N sizes the error
    err = abs(value - coarse) if coarse is not None else abs(I_full * (S0 - counted))
    return value, err


# ---------------------------------------------------------------------------
# degree 1


def degree1_eisenstein(z: complex, s) -> float:
    """``E_0^(1)(z, s) = y^s zeta_Q(s) / zeta(2s)`` with ``Q(c, d) = |cz + d|^2``."""
    z = complex(z)
    g = np.array([[abs(z) ** 2, z.real], [z.real, 1.0]])
    return z.imag ** s * zetalattice.epstein_zeta(g, s) / specfun.riemann_zeta(2 * s)


def degree1_residue_check(points=(1j, 0.25 + 2j), deltas=(1e-2, 5e-3, 2.5e-3)) -> float:
    """Extrapolated ``(s - 1) E_0^(1)(z, s)`` as ``s -> 1+`` at several ``z``; returns the common value."""
    vals = []
    for z in points:
        est = [d * degree1_eisenstein(z, 1 + d) for d in deltas]
        # Richardson in delta: (s-1)E = R + c delta + O(delta^2)
        r1 = [2 * est[i + 1] - est[i] for i in range(len(est) - 1)]
        r2 = [(4 * r1[i + 1] - r1[i]) / 3 for i in range(len(r1) - 1)]
        vals.append(r2[-1])
    if max(vals) - min(vals) > 1e-6:
        raise ConvergenceError(f"residue estimates disagree: {vals}")
    return float(np.mean(vals))


# ---------------------------------------------------------------------------
# brute-force arithmetic oracles


def brute_rank1_set(m: int, B: int) -> set[HalfIntegralForm]:
    """Nonzero rank-one 2x2 half-integral forms with all entries bounded by ``B`` in absolute value."""
    if m != 2:
        raise DomainError("brute_rank1_set supports m = 2")
    if B > 10:
        raise DomainError("bound too large")
    out = set()
    for a in range(-B, B + 1):
        for c in range(-B, B + 1):
            for b in range(-2 * B, 2 * B + 1):
                if (a, b, c) != (0, 0, 0) and 4 * a * c == b * b:
                    out.add(HalfIntegralForm(((2 * a, b), (b, 2 * c))))
    return out


def rank1_in_box(m: int, B: int) -> set[HalfIntegralForm]:
    """``rank1_enumerate`` restricted to entries bounded by ``B``."""
    out = set()
    for f in rank1_enumerate(m, m * B):
        h = f.reconstruct()
        if all(abs(h.entry(i, j)) <= B for i in range(m) for j in range(m)):
            out.add(h)
    return out


def brute_content(h: HalfIntegralForm) -> int:
    """Largest ``l`` with ``h / l`` half-integral, by scanning divisors."""
    d = h.doubled
    if h.is_zero():
        raise DomainError("content of the zero form")
    top = max(abs(v) for r in d for v in r)
    for l in range(top, 0, -1):
        if all(v % l == 0 for r in d for v in r) and all((d[i][i] // l) % 2 == 0 for i in range(h.m)):
            return l
    return 1


def brute_siegel1(h: int, s, N: int = 200) -> float:
    """Defining sum ``sum_{r in Q/Z} n(r)^-s e(hr)`` over denominators ``n <= N``.

    The inner sums are Ramanujan sums; the partial sums are averaged over
    the last half of the range, which damps the oscillating tail.
    """
    if N > 2000:
        raise DomainError("N too large")
    partial = []
    total = 0.0
    for n in range(1, N + 1):
        c_n = sum(math.cos(2 * math.pi * h * a / n) for a in range(1, n + 1) if math.gcd(a, n) == 1)
        total += c_n * n ** (-s)
        partial.append(total)
    return float(np.mean(partial[N // 2:]))


def _squarefree_kernel(n: int) -> int:
    sign = 1 if n > 0 else -1
    n = abs(n)
    out, p = 1, 2
    while p * p <= n:
        while n % (p * p) == 0:
            n //= p * p
        if n % p == 0:
            out *= p
            n //= p
        p += 1
    return sign * out * n


def katsurada_rank2(h: HalfIntegralForm, s) -> float:
    """``S_2(h, s)`` for positive or negative definite ``h`` from the explicit local polynomials.

    With ``-det(2h) = d_K f^2`` (``d_K`` fundamental) and ``e`` the content,
    ``S = L(s-1, d_K) / (zeta(s) zeta(2s-2)) prod_{p | f} F_p(p^-s)`` where
    ``F_p(X) = sum_{i <= m_p} (p^2 X)^i [sum_{j <= f_p - i} (p^3 X^2)^j
    - chi(p) p X sum_{j < f_p - i} (p^3 X^2)^j]``.
    """
    if h.m != 2 or h.det_doubled() <= 0:
        raise DomainError("katsurada_rank2 needs a definite 2x2 form")
    D = -h.det_doubled()
    d0 = _squarefree_kernel(D)
    dK = d0 if d0 % 4 == 1 else 4 * d0
    f = math.isqrt(D // dK)
    e = content(h)
    val = specfun.dirichlet_l(s - 1, dK) / specfun.riemann_zeta(s) / specfun.riemann_zeta(2 * s - 2)
    for p in siegelseries.prime_factors(f):
        fp = mp = 0
        t = f
        while t % p == 0:
            t //= p
            fp += 1
        t = e
        while t % p == 0:
            t //= p
            mp += 1
        X = p ** (-s)
        chi = specfun.kronecker_symbol(dK, p)
        F = 0.0
        for i in range(mp + 1):
            a = sum((p ** 3 * X * X) ** j for j in range(fp - i + 1))
            b = sum((p ** 3 * X * X) ** j for j in range(fp - i))
            F += (p * p * X) ** i * (a - chi * p * X * b)
        val *= F
    return val


def km_primitive_direct(g, s, bound: float = 400.0) -> float:
    """``zeta_1^(2)(g, s)`` as a primitive-vector sum with an integral tail; needs ``Re s > 1``."""
    g = np.atleast_2d(np.asarray(g, dtype=float))
    if complex(s).real <= 1:
        raise DomainError("direct primitive sum needs Re(s) > 1")
    total = 0.0
    for v in primitive_vectors(2, bound, g):
        v = np.array(v, dtype=float)
        total += float(v @ g @ v) ** (-s)
    # primitive vectors mod sign have density 3 / (pi^2 sqrt(det g)) per unit area of g-norm^2
    dens = 3 / (math.pi ** 2 * math.sqrt(np.linalg.det(g)))
    tail = dens * math.pi * bound ** (1 - s) / (s - 1)
    return total + tail
