"""Named numerical checks grouped into suites.

Each check returns a :class:`CheckResult` with the measured error and the
tolerance it is held to. The command-line ``verify`` command and the
acceptance tests both draw from this registry.
"""
from __future__ import annotations

import math
import time
from dataclasses import asdict, dataclass

import numpy as np

from . import hypergeom, oracle, residue, siegelseries, specfun, zetalattice
from .symcore import HalfIntegralForm, Rank1Form, rank1_enumerate


@dataclass
class CheckResult:
    name: str
    error: float
    tolerance: float
    seconds: float = 0.0
    detail: str = ""

    @property
    def passed(self) -> bool:
        return bool(self.error <= self.tolerance)

    def to_dict(self) -> dict:
        d = asdict(self)
        d["passed"] = self.passed
        return d


def _rel(a, b) -> float:
    return abs(a - b) / max(abs(b), 1e-300)


def random_spd(m: int, rng: np.random.Generator) -> np.ndarray:
    a = rng.normal(size=(m, m))
    return a @ a.T / m + 0.5 * np.eye(m)


def _timed(name, tol, fn, detail=""):
    t0 = time.perf_counter()
    err = float(fn())
    return CheckResult(name, err, tol, time.perf_counter() - t0, detail)


# ---------------------------------------------------------------------------
# acceptance checks


def check_next_point_residue() -> list[CheckResult]:
    out = [_timed("residue_at_next_point(2) = 45/pi^2", 1e-12,
                  lambda: _rel(residue.residue_at_next_point(2), 45 / math.pi ** 2))]
    # the reparametrisation s -> 2s - 3/2 of the normalised series doubles the residue
    out.append(_timed("reparametrised residue = 90/pi^2", 1e-12,
                      lambda: _rel(2 * residue.residue_at_next_point(2), 90 / math.pi ** 2)))
    return out


def check_laurent_cancellation(seed: int = 1) -> list[CheckResult]:
    rng = np.random.default_rng(seed)
    worst_cancel = worst_path = 0.0
    t0 = time.perf_counter()
    for m in (2, 3, 4, 5):
        for _ in range(10):
            y = random_spd(m, rng)
            a, b = residue.A_minus2(y), residue.B_minus2(y)
            worst_cancel = max(worst_cancel, abs(a + b) / abs(a))
            worst_path = max(worst_path, _rel(residue.explicit_A_minus2(y), a),
                             _rel(residue.explicit_B_minus2(y), b))
    dt = time.perf_counter() - t0
    return [CheckResult("A_-2 + B_-2 = 0 (m = 2..5)", worst_cancel, 1e-10, dt),
            CheckResult("expanded products agree with the alpha/beta path", worst_path, 1e-10, dt,
                        "the expanded products differ by 2^m pi^(m^2(m-1)/4)")]


def corollary_A(y) -> float:
    """Printed closed form of the degree-2 constant term, with ``v'`` the (1,1) entry of ``y``."""
    W = zetalattice.KroneckerData.of(y).W
    eta = abs(specfun.dedekind_eta(W))
    return (18 / (math.pi ** 2 * math.sqrt(np.linalg.det(y)))
            * (specfun.EULER_GAMMA / 2 + 0.5 * math.log(y[0, 0] / (4 * math.pi)) - 2 * math.log(eta)))


def check_degree2_constant(seed: int = 2) -> list[CheckResult]:
    rng = np.random.default_rng(seed)
    ys = [random_spd(2, rng) for _ in range(5)]
    closed = _timed("A^(2) equals the printed closed form (5 random y)", 1e-9,
                    lambda: max(_rel(residue.residue_A_constant(y), corollary_A(y)) for y in ys),
                    "the printed form carries det(y)^(-1/2) where the Laurent data give det(y)^(1/2)")
    limit = _timed("A^(2) equals the Laurent-limit extrapolation", 1e-5,
                   lambda: max(_rel(residue.residue_A_constant(y),
                                    residue.residue_limit_check(1j * y).constant_estimate) for y in ys[:2]))
    return [closed, limit]


FOURIER_POINTS = [(s, name) for s in (2.5, 3.0) for name in ("i", "x0+i", "i diag(1,2)")]
X0 = np.array([[0.1, 0.2], [0.2, -0.3]])


def _point(name):
    return {"i": 1j * np.eye(2), "x0+i": X0 + 1j * np.eye(2),
            "i diag(1,2)": 1j * np.diag([1.0, 2.0])}[name]


def check_fourier_vs_direct(points=None) -> list[CheckResult]:
    out = []
    for s, name in points or FOURIER_POINTS:
        z = _point(name)

        def err(z=z, s=s):
            direct, _ = oracle.eisenstein_direct(z, s)
            return _rel(residue.eisenstein_via_fourier(z, s), direct)
        out.append(_timed(f"Fourier vs direct at s={s}, z={name}", 1e-5, err))
    return out


def check_hypergeometric(seed: int = 3, n_xi: int = 20, n_eta: int = 10) -> list[CheckResult]:
    rng = np.random.default_rng(seed)

    def xi_err():
        worst = 0.0
        for k in range(n_xi):
            m = 1 + k % 2
            g = random_spd(m, rng)
            k_m = hypergeom.kappa(m)
            # stay inside Re(alpha + beta) > 2 kappa - 1 with a margin
            a = rng.uniform(k_m - 0.2, k_m + 0.6)
            b = rng.uniform(k_m - 0.2, k_m + 0.6)
            worst = max(worst, _rel(hypergeom.xi_from_eta(g, np.zeros((m, m)), a, b),
                                    hypergeom.xi_zero_closed(m, g, a, b)))
        return worst

    def omega_err():
        g1 = np.array([[1.3]])
        g2 = np.array([[1.0, 0.2], [0.2, 0.8]])
        h2 = np.array([[0.5, 0.1], [0.1, 0.3]])
        cases = [(g1, np.array([[0.7]]), 0.3, 0.6), (g1, np.array([[-0.9]]), 0.35, 0.55),
                 (g2, h2, 0.72, 0.85)]
        worst = 0.0
        for g, h, a, b in cases:
            m = g.shape[0]
            k = hypergeom.kappa(m)
            lhs = hypergeom.omega(g, h, a, b, rel_tol=1e-7, max_levels=7)
            rhs = hypergeom.omega(g, h, k - b, k - a, rel_tol=1e-7, max_levels=7)
            worst = max(worst, _rel(lhs, rhs))
        return worst

    def rank1_err():
        worst = 0.0
        forms = rank1_enumerate_small()
        for k in range(n_eta):
            y = random_spd(2, rng)
            h = forms[k % len(forms)]
            ref = hypergeom.eta(2 * y, math.pi * h.to_array(), 1.0, 1.0, rel_tol=1e-9)
            worst = max(worst, _rel(hypergeom.eta_rank1_residue_point(y, h), ref))
        return worst

    return [_timed("xi from quadrature = closed form (20 points)", 1e-6, xi_err),
            _timed("omega symmetry", 1e-5, omega_err),
            _timed("rank-one eta closed form vs cubature (10 cases)", 1e-5, rank1_err)]


def rank1_enumerate_small():
    return list(rank1_enumerate(2, 3))


def check_residue_limit() -> list[CheckResult]:
    rep = residue.residue_limit_check()
    rep2 = residue.residue_limit_check(h=Rank1Form(2, (1, 1)))
    return [CheckResult("limit of (s-1)(F_010 + F_020) = A", _rel(rep.constant_estimate, rep.constant_expected), 1e-4),
            CheckResult("limit of (s-1) F_021 coefficient at E_11", _rel(rep.coefficient_estimate, rep.coefficient_expected), 1e-4),
            CheckResult("limit of (s-1) F_021 coefficient at 2(1,1)(1,1)^T",
                        _rel(rep2.coefficient_estimate, rep2.coefficient_expected), 1e-4)]


def check_degree1() -> list[CheckResult]:
    def err():
        a = oracle.degree1_residue_check((1j, 0.25 + 2j))
        b = oracle.degree1_residue_check((1.25 + 2j, -0.4 + 0.7j))
        return max(abs(a - b), abs(a - 3 / math.pi))
    return [_timed("degree-1 residue is 3/pi at unrelated z", 1e-6, err)]


def check_combinatorial() -> list[CheckResult]:
    sets = _timed("rank1_enumerate = brute force (entries <= 3)", 0.0,
                  lambda: len(oracle.brute_rank1_set(2, 3) ^ oracle.rank1_in_box(2, 3)))
    s1 = _timed("defining sum of S_1(h, 3), h in {1,2,4,6}", 1e-4,
                lambda: max(abs(oracle.brute_siegel1(h, 3, 200) - siegelseries.siegel_rank1(h, 3))
                            for h in (1, 2, 4, 6)))
    return [sets, s1]


# ---------------------------------------------------------------------------
# module suites


def suite_specfun() -> list[CheckResult]:
    return [
        _timed("zeta(2) = pi^2/6", 1e-13, lambda: _rel(specfun.riemann_zeta(2), math.pi ** 2 / 6)),
        _timed("zeta'(0) = -log(2 pi)/2", 1e-12,
               lambda: _rel(specfun.riemann_zeta_deriv(0), -0.5 * math.log(2 * math.pi))),
        _timed("xi(s) = xi(1-s)", 1e-12, lambda: _rel(specfun.xi_completed(0.3), specfun.xi_completed(0.7))),
        _timed("|eta(i)| = Gamma(1/4)/(2 pi^(3/4))", 1e-12,
               lambda: _rel(abs(specfun.dedekind_eta(1j)), math.gamma(0.25) / (2 * math.pi ** 0.75))),
    ]


def suite_hypergeom() -> list[CheckResult]:
    return check_hypergeometric(n_xi=6, n_eta=3)


def suite_siegel() -> list[CheckResult]:
    forms = [HalfIntegralForm(((2, 1), (1, 2))), HalfIntegralForm(((2, 0), (0, 4))),
             HalfIntegralForm(((6, 3), (3, 8)))]
    out = [_timed("rank-2 series = explicit local polynomials", 1e-10,
                  lambda: max(_rel(siegelseries.siegel_rank2(h, 5.0), oracle.katsurada_rank2(h, 5.0))
                              for h in forms))]
    out += check_combinatorial()
    return out


def suite_zeta() -> list[CheckResult]:
    g = np.array([[1.0, 0.3], [0.3, 1.4]])
    D = float(np.linalg.det(g))

    def kronecker_err():
        res, const = zetalattice.kronecker_limit_check(g)
        expected = 0.5 * (4 * D) ** -0.5 * 4 * math.pi * zetalattice.kronecker_beta(g)
        return max(_rel(res, math.pi / (2 * math.sqrt(D))), _rel(const, expected))
    out = [_timed("Kronecker limit residue and constant", 1e-7, kronecker_err)]
    out.append(_timed("theta and direct Epstein sums agree at s = 3", 1e-8,
                      lambda: _rel(zetalattice.epstein_zeta(g, 3.0), zetalattice.epstein_zeta(g, 3.0, method="direct"))))
    out.append(_timed("primitive lattice zeta: continuation vs direct sum", 1e-6,
                      lambda: _rel(zetalattice.km_zeta(1, 2, g, 3.0), oracle.km_primitive_direct(g, 3.0))))
    return out


def suite_residue() -> list[CheckResult]:
    return (check_next_point_residue() + check_laurent_cancellation() + check_residue_limit()
            + check_degree1())


SUITES = {
    "specfun": suite_specfun,
    "hypergeom": suite_hypergeom,
    "siegel": suite_siegel,
    "zeta": suite_zeta,
    "residue": suite_residue,
}


def run_suite(name: str) -> list[CheckResult]:
    if name == "all":
        out = []
        for fn in SUITES.values():
            out += fn()
        return out
    return SUITES[name]()
