"""Symmetric, positive definite and half-integral matrices.

Floating-point matrices are plain ``numpy`` arrays wrapped by
:class:`SymMatrix` / :class:`PosDefMatrix`. Half-integral forms are kept
exactly as the integer matrix ``2h`` (even diagonal), so content, rank and
discriminant computations never round.

Enumeration order for rank-one forms is by trace magnitude, then ``t``,
then ``w`` lexicographically.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce

import numpy as np

from .errors import DomainError, SiegelResError


# ---------------------------------------------------------------------------
# floating point matrices


class SymMatrix:
    """Real symmetric ``m x m`` matrix.

    Only the upper triangle of the input is read, so the stored matrix is
    symmetric by construction.
    """

    __slots__ = ("_a",)

    def __init__(self, entries):
        a = np.array(entries, dtype=float)
        if a.ndim == 0:
            a = a.reshape(1, 1)
        if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] < 1:
            raise DomainError(f"expected a square matrix, got shape {a.shape}")
        upper = np.triu(a)
        self._a = upper + np.triu(a, 1).T
        self._a.setflags(write=False)

    @property
    def m(self) -> int:
        return self._a.shape[0]

    @property
    def array(self) -> np.ndarray:
        return self._a

    def __array__(self, dtype=None, copy=None):
        return self._a if dtype is None else self._a.astype(dtype)

    def __getitem__(self, idx):
        return self._a[idx]

    def trace(self) -> float:
        return float(np.trace(self._a))

    def __repr__(self):
        return f"{type(self).__name__}({self._a.tolist()!r})"

    def __eq__(self, other):
        return isinstance(other, SymMatrix) and np.array_equal(self._a, other._a)

    def __hash__(self):
        return hash(self._a.tobytes())


class PosDefMatrix(SymMatrix):
    """Symmetric positive definite matrix; validated by Cholesky."""

    __slots__ = ()

    def __init__(self, entries):
        super().__init__(entries)
        try:
            np.linalg.cholesky(self._a)
        except np.linalg.LinAlgError:
            raise DomainError("matrix is not positive definite") from None


def _as_array(a) -> np.ndarray:
    return np.asarray(a, dtype=float)


def determinant(a) -> float:
    """Determinant through an LU (``slogdet``) factorisation."""
    sign, logdet = np.linalg.slogdet(_as_array(a))
    return float(sign * math.exp(logdet)) if sign != 0 else 0.0


def quadratic_transform(g, a) -> SymMatrix | float:
    """Bracket ``g[a] = a^T g a``.

    A column vector ``a`` (1-d array or ``m x 1``) yields a float.
    """
    g = _as_array(g)
    a = np.asarray(a, dtype=float)
    if a.ndim == 1:
        if a.shape[0] != g.shape[0]:
            raise DomainError("dimension mismatch in quadratic_transform")
        return float(a @ g @ a)
    if a.shape[0] != g.shape[0]:
        raise DomainError("dimension mismatch in quadratic_transform")
    out = a.T @ g @ a
    if out.shape == (1, 1):
        return float(out[0, 0])
    return SymMatrix(out)


def parse_matrix(text: str) -> np.ndarray:
    """Parse the row-major ``"a,b;c,d"`` format into a float array."""
    rows = [r for r in text.strip().split(";")]
    try:
        data = [[float(x) for x in row.split(",")] for row in rows]
    except ValueError:
        raise DomainError(f"cannot parse matrix {text!r}") from None
    if len({len(r) for r in data}) != 1:
        raise DomainError(f"ragged matrix {text!r}")
    return np.array(data)


def format_matrix(a) -> str:
    a = np.atleast_2d(np.asarray(a))
    return ";".join(",".join(repr(float(x)) if not float(x).is_integer() else str(int(x))
                             for x in row) for row in a)


# ---------------------------------------------------------------------------
# exact integer helpers


def int_det(a) -> int:
    """Exact determinant of a small integer matrix (Bareiss)."""
    m = [list(map(int, row)) for row in a]
    n = len(m)
    if n == 0:
        return 1
    sign, prev = 1, 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def int_rank(a) -> int:
    """Exact rank of an integer matrix via fraction-free elimination."""
    rows = [[Fraction(int(x)) for x in row] for row in a]
    if not rows:
        return 0
    ncol = len(rows[0])
    rank = 0
    for col in range(ncol):
        piv = next((i for i in range(rank, len(rows)) if rows[i][col] != 0), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        for i in range(len(rows)):
            if i != rank and rows[i][col] != 0:
                f = rows[i][col] / rows[rank][col]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[rank])]
        rank += 1
    return rank


def _minors_gcd(a: list[list[int]], k: int) -> int:
    n = len(a)
    ncol = len(a[0])
    g = 0
    for rows in itertools.combinations(range(n), k):
        for cols in itertools.combinations(range(ncol), k):
            g = math.gcd(g, int_det([[a[i][j] for j in cols] for i in rows]))
            if g == 1:
                return 1
    return g


def is_primitive(a) -> bool:
    """Integer ``m x nu`` matrix whose maximal minors are coprime."""
    a = [list(map(int, row)) for row in np.atleast_2d(np.asarray(a, dtype=object))]
    if len(a) < len(a[0]):
        raise DomainError("primitive matrices need at least as many rows as columns")
    return _minors_gcd(a, len(a[0])) == 1


def sign_normalize(w):
    """Flip sign so that the first nonzero entry is positive."""
    w = tuple(int(x) for x in w)
    for x in w:
        if x:
            return w if x > 0 else tuple(-y for y in w)
    return w


# ---------------------------------------------------------------------------
# half-integral forms


@dataclass(frozen=True)
class HalfIntegralForm:
    """Symmetric half-integral matrix ``h`` stored as the integer matrix ``2h``."""

    doubled: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        d = tuple(tuple(int(x) for x in row) for row in self.doubled)
        m = len(d)
        if m == 0 or any(len(row) != m for row in d):
            raise DomainError("doubled form must be a nonempty square matrix")
        for i in range(m):
            if d[i][i] % 2:
                raise DomainError("diagonal of 2h must be even")
            for j in range(i):
                if d[i][j] != d[j][i]:
                    raise DomainError("doubled form must be symmetric")
        object.__setattr__(self, "doubled", d)

    @classmethod
    def from_matrix(cls, h) -> "HalfIntegralForm":
        """Build from the (possibly fractional) matrix ``h`` itself."""
        rows = []
        for row in np.atleast_2d(np.asarray(h, dtype=object)):
            out = []
            for x in row:
                v = 2 * Fraction(x)
                if v.denominator != 1:
                    raise DomainError(f"entry {x} is not half-integral")
                out.append(int(v))
            rows.append(out)
        return cls(tuple(tuple(r) for r in rows))

    @classmethod
    def parse(cls, text: str) -> "HalfIntegralForm":
        """Parse ``"2h:a,b;c,d"`` (doubled entries) or ``"a,b;c,d"`` (entries of h)."""
        text = text.strip()
        if text.startswith("2h:"):
            rows = [[int(x) for x in r.split(",")] for r in text[3:].split(";")]
            return cls(tuple(tuple(r) for r in rows))
        rows = [[Fraction(x) for x in r.split(",")] for r in text.split(";")]
        return cls.from_matrix(rows)

    @property
    def m(self) -> int:
        return len(self.doubled)

    def to_array(self) -> np.ndarray:
        return np.array(self.doubled, dtype=float) / 2.0

    def entry(self, i, j) -> Fraction:
        return Fraction(self.doubled[i][j], 2)

    def is_zero(self) -> bool:
        return all(x == 0 for row in self.doubled for x in row)

    def rank(self) -> int:
        return int_rank(self.doubled)

    def det_doubled(self) -> int:
        """Exact ``det(2h)``."""
        return int_det(self.doubled)

    def scaled(self, k: int) -> "HalfIntegralForm":
        return HalfIntegralForm(tuple(tuple(k * x for x in row) for row in self.doubled))

    def negated(self) -> "HalfIntegralForm":
        return self.scaled(-1)

    def transform(self, u) -> "HalfIntegralForm":
        """``h[u] = u^T h u`` for an integer matrix ``u``."""
        u = [[int(x) for x in row] for row in np.atleast_2d(np.asarray(u, dtype=object))]
        d = self.doubled
        m = len(d)
        k = len(u[0])
        out = [[sum(u[a][i] * d[a][b] * u[b][j] for a in range(m) for b in range(m))
                for j in range(k)] for i in range(k)]
        return HalfIntegralForm(tuple(tuple(r) for r in out))

    def trace(self) -> Fraction:
        return Fraction(sum(self.doubled[i][i] for i in range(self.m)), 2)

    def __str__(self):
        return "2h:" + ";".join(",".join(str(x) for x in row) for row in self.doubled)


def content(h: HalfIntegralForm) -> int:
    """Largest ``l`` with ``h / l`` still half-integral."""
    if h.is_zero():
        raise DomainError("content of the zero form is undefined")
    d = h.doubled
    m = h.m
    # h/l half-integral <=> l | h_ii and l | 2 h_ij (i != j)
    vals = [d[i][i] // 2 for i in range(m)] + [d[i][j] for i in range(m) for j in range(i + 1, m)]
    return reduce(math.gcd, (abs(v) for v in vals))


@dataclass(frozen=True)
class Rank1Form:
    """``h = t * w w^T`` with ``t != 0`` and ``w`` primitive, first nonzero entry positive."""

    t: int
    w: tuple[int, ...]

    def __post_init__(self):
        w = tuple(int(x) for x in self.w)
        if self.t == 0:
            raise DomainError("t must be nonzero")
        if reduce(math.gcd, (abs(x) for x in w), 0) != 1:
            raise DomainError(f"w = {w} is not primitive")
        if sign_normalize(w) != w:
            raise DomainError(f"w = {w} is not sign-normalised")
        object.__setattr__(self, "t", int(self.t))
        object.__setattr__(self, "w", w)

    @property
    def m(self) -> int:
        return len(self.w)

    def reconstruct(self) -> HalfIntegralForm:
        w = self.w
        return HalfIntegralForm(tuple(tuple(2 * self.t * a * b for b in w) for a in w))

    def trace(self) -> int:
        return self.t * sum(x * x for x in self.w)

    def content(self) -> int:
        return abs(self.t)

    def to_array(self) -> np.ndarray:
        w = np.array(self.w, dtype=float)
        return self.t * np.outer(w, w)


def rank1_decompose(h: HalfIntegralForm) -> Rank1Form:
    """Write a rank-one form as ``t * w w^T`` with ``w`` primitive."""
    if h.rank() != 1:
        raise DomainError("rank1_decompose needs a rank-one form")
    d = h.doubled
    m = h.m
    i = next(k for k in range(m) if d[k][k] != 0)
    # row i of 2h equals 2 t w_i w, so w is the primitive part of that row
    row = d[i]
    g = reduce(math.gcd, (abs(x) for x in row))
    w = sign_normalize(x // g for x in row)
    # h_ii = t w_i^2
    t = Fraction(d[i][i], 2) / (w[i] * w[i])
    if t.denominator != 1:
        raise SiegelResError("rank-one form with non-integral scalar")
    out = Rank1Form(int(t), w)
    if out.reconstruct() != h:
        raise SiegelResError("rank-one decomposition failed to reconstruct")
    return out


def _box_vectors(m: int, bounds):
    ranges = [range(-b, b + 1) for b in bounds]
    for w in itertools.product(*ranges):
        if any(w) and sign_normalize(w) == w and reduce(math.gcd, (abs(x) for x in w)) == 1:
            yield w


def primitive_vectors(m: int, B: float, y=None) -> list[tuple[int, ...]]:
    """Primitive integer columns ``w`` (mod sign) with ``y[w] <= B``.

    ``y`` defaults to the identity (Euclidean bound). Output is sorted by
    ``y[w]`` then lexicographically.
    """
    if B <= 0:
        raise DomainError("bound must be positive")
    y = np.eye(m) if y is None else _as_array(y)
    yinv = np.linalg.inv(y)
    bounds = [int(math.floor(math.sqrt(B * yinv[i, i]) + 1e-9)) for i in range(m)]
    out = []
    for w in _box_vectors(m, bounds):
        v = np.array(w, dtype=float)
        q = float(v @ y @ v)
        if q <= B * (1 + 1e-12):
            out.append((q, w))
    out.sort(key=lambda p: (round(p[0], 9), p[1]))
    return [w for _, w in out]


def rank1_enumerate(m: int, T: float) -> list[Rank1Form]:
    """All rank-one half-integral forms with ``|trace| <= T``, each once."""
    if T <= 0:
        raise DomainError("trace bound must be positive")
    out = []
    for w in primitive_vectors(m, T):
        n = sum(x * x for x in w)
        for k in range(1, int(math.floor(T / n + 1e-9)) + 1):
            out.append(Rank1Form(k, w))
            out.append(Rank1Form(-k, w))
    out.sort(key=lambda f: (abs(f.trace()), f.t, f.w))
    return out


# ---------------------------------------------------------------------------
# unimodular completion and the Jacobi complement


def _unimodular_completion(r: list[list[int]]) -> list[list[int]]:
    """Unimodular ``u`` whose first ``lambda`` columns equal the primitive ``r``."""
    m, lam = len(r), len(r[0])
    # row-reduce r with unimodular U: U r = [D; 0]; track U^{-1}
    a = [row[:] for row in r]
    uinv = [[int(i == j) for j in range(m)] for i in range(m)]

    def row_op(i, j, k):  # row_i += k row_j ; U^{-1}: col_j -= k col_i
        for c in range(lam):
            a[i][c] += k * a[j][c]
        for rr in range(m):
            uinv[rr][j] -= k * uinv[rr][i]

    def swap(i, j):
        a[i], a[j] = a[j], a[i]
        for rr in range(m):
            uinv[rr][i], uinv[rr][j] = uinv[rr][j], uinv[rr][i]

    for c in range(lam):
        while True:
            nz = [i for i in range(c, m) if a[i][c] != 0]
            if not nz:
                raise DomainError("matrix is not primitive")
            p = min(nz, key=lambda i: abs(a[i][c]))
            if p != c:
                swap(p, c)
            done = True
            for i in range(c + 1, m):
                if a[i][c]:
                    row_op(i, c, -(a[i][c] // a[c][c]))
                    if a[i][c]:
                        done = False
            if done:
                break
    d = [a[i][:] for i in range(lam)]
    if abs(int_det(d)) != 1:
        raise DomainError("matrix is not primitive")
    # U^{-1} [D;0] = r, so U^{-1} diag(D, 1) has first columns r
    dinv_free = [[sum(uinv[i][k] * d[k][j] for k in range(lam)) for j in range(lam)]
                 for i in range(m)]
    return [dinv_free[i] + uinv[i][lam:] for i in range(m)]


@dataclass(frozen=True)
class CosetRep:
    """Primitive ``r`` (``m x lambda``) with a unimodular completion ``u_r = (r r1)``."""

    r: tuple[tuple[int, ...], ...]
    r1: tuple[tuple[int, ...], ...]

    @classmethod
    def from_primitive(cls, r) -> "CosetRep":
        rr = [[int(x) for x in row] for row in np.atleast_2d(np.asarray(r, dtype=object))]
        if len(rr[0]) > len(rr):
            rr = [list(col) for col in zip(*rr)]
        u = _unimodular_completion(rr)
        lam = len(rr[0])
        return cls(tuple(tuple(row[:lam]) for row in u), tuple(tuple(row[lam:]) for row in u))

    @property
    def u(self) -> np.ndarray:
        return np.hstack([np.array(self.r, dtype=float), np.array(self.r1, dtype=float)])

    def u_det(self) -> int:
        return int_det([list(a) + list(b) for a, b in zip(self.r, self.r1)])


def jacobi_complement(y, rep: CosetRep) -> np.ndarray:
    """``g(y, u_r) = y[r1] - (y[r])^{-1}[r^T y r1]``."""
    y = _as_array(y)
    r = np.array(rep.r, dtype=float)
    r1 = np.array(rep.r1, dtype=float)
    if r1.shape[1] == 0:
        raise DomainError("jacobi_complement needs lambda < m")
    yr = r.T @ y @ r
    b = r.T @ y @ r1
    try:
        corr = b.T @ np.linalg.solve(yr, b)
    except np.linalg.LinAlgError:
        raise SiegelResError("singular y[r]; y must be positive definite") from None
    return r1.T @ y @ r1 - corr
