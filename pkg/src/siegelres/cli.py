"""Command-line front end: ``siegelres residue | eval | verify``.

Exit codes: 0 ok, 1 internal error or failed checks, 2 domain or region
error, 3 missing input.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .errors import ConvergenceError, DomainError, MissingInputError
from .symcore import parse_matrix

EXIT_OK, EXIT_INTERNAL, EXIT_DOMAIN, EXIT_MISSING = 0, 1, 2, 3


def parse_complex(text: str) -> complex:
    """``"2.5"``, ``"2.5+0.1i"`` or ``"2.5-0.1j"``."""
    try:
        return complex(text.strip().replace("i", "j").replace(" ", ""))
    except ValueError:
        raise DomainError(f"cannot parse complex number {text!r}") from None


def thread_cap() -> int:
    try:
        return max(1, int(os.environ.get("RESIDUE_THREADS", "1")))
    except ValueError:
        return 1


@dataclass
class RunConfig:
    command: str
    degree: int
    y: np.ndarray | None
    x: np.ndarray | None
    s: complex | None
    trace_bound: float
    height_bound: int
    km_constant_term: float | None
    fmt: str

    @classmethod
    def from_args(cls, a) -> "RunConfig":
        m = a.degree
        y = parse_matrix(a.y) if getattr(a, "y", None) else None
        if y is None and getattr(a, "z_im", None) is not None:
            y = a.z_im * np.eye(m)
        if y is None:
            y = np.eye(m)
        y = np.atleast_2d(y)
        x = parse_matrix(a.x) if getattr(a, "x", None) else np.zeros_like(y)
        x = np.atleast_2d(x)
        if y.shape != (m, m) or x.shape != (m, m):
            raise DomainError(f"--y and --x must be {m}x{m}")
        s = parse_complex(a.s) if getattr(a, "s", None) else None
        return cls(a.command, m, y, x, s, getattr(a, "trace_bound", 6.0),
                   getattr(a, "height_bound", 2), getattr(a, "km_constant_term", None), a.format)


def _num(v):
    v = complex(v)
    return v.real if v.imag == 0 else {"re": v.real, "im": v.imag}


# ---------------------------------------------------------------------------
# commands


def cmd_residue(cfg: RunConfig, plot_dir: str | None = None, tol: float | None = None):
    from . import residue
    if cfg.degree not in (2, 3):
        raise DomainError("residue supports degree 2 or 3")
    if cfg.degree == 3 and cfg.km_constant_term is None:
        raise MissingInputError("degree 3 needs --km-constant-term: the constant term of "
                                "xi_2^(3)(2y, s) at s = 3/2 has no closed form here")
    z = residue.UpperHalfPoint(cfg.x, cfg.y)
    rep = residue.residue_fourier_series(z, cfg.trace_bound, cfg.km_constant_term, tol)
    value = rep.value_at(cfg.x)
    figures = []
    if plot_dir:
        from . import plotting
        figures = plotting.render_report(rep, plot_dir)
    d = rep.to_dict()
    d["value_at_x"] = _num(value)
    d["value_error"] = rep.tail_bound
    d["figures"] = figures
    return d, rep


def _eval_fourier(cfg):
    from . import oracle, residue
    z = cfg.x + 1j * cfg.y
    if cfg.degree == 1:
        return oracle.degree1_eisenstein(complex(z[0, 0]), cfg.s), 1e-12
    v = residue.eisenstein_via_fourier(z, cfg.s)
    coarse = residue.eisenstein_via_fourier(z, cfg.s, T=residue.DECAY_CUT - 4)
    return v, abs(v - coarse)


def _eval_direct(cfg):
    from . import oracle
    z = cfg.x + 1j * cfg.y
    if cfg.degree == 1:
        return oracle.eisenstein_direct(z, cfg.s, cfg.height_bound, method="shells")
    return oracle.eisenstein_direct(z, cfg.s)


def cmd_eval(cfg: RunConfig, path: str = "fourier"):
    if cfg.degree not in (1, 2):
        raise DomainError("eval supports degree 1 or 2")
    if cfg.s is None:
        raise MissingInputError("--s is required")
    value, err = (_eval_fourier if path == "fourier" else _eval_direct)(cfg)
    return {"degree": cfg.degree, "s": _num(cfg.s), "path": path,
            "value": _num(value), "error_estimate": float(err)}


def cmd_verify(suite: str):
    from . import verify
    names = list(verify.SUITES) if suite == "all" else [suite]
    with ThreadPoolExecutor(max_workers=thread_cap()) as pool:
        results = [r for chunk in pool.map(verify.run_suite, names) for r in chunk]
    return {"suite": suite, "passed": all(r.passed for r in results),
            "checks": [r.to_dict() for r in results]}


# ---------------------------------------------------------------------------
# output


def _flatten(d: dict, prefix="") -> list[tuple[str, object]]:
    rows = []
    for k, v in d.items():
        key = f"{prefix}{k}"
        if isinstance(v, dict):
            rows += _flatten(v, key + ".")
        elif isinstance(v, list):
            rows.append((key, json.dumps(v)))
        else:
            rows.append((key, v))
    return rows


def render(d: dict, fmt: str, command: str) -> str:
    if fmt == "json":
        return json.dumps(d, indent=2, sort_keys=True)
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        if command == "residue":
            w.writerow(["t", "w", "coeff"])
            for t in d["terms"]:
                w.writerow([t["t"], " ".join(map(str, t["w"])), repr(t["coeff"])])
            w.writerow([])
            w.writerow(["key", "value"])
            for k, v in _flatten({k: v for k, v in d.items() if k != "terms"}):
                w.writerow([k, v])
        elif command == "verify":
            w.writerow(["name", "error", "tolerance", "passed", "seconds"])
            for c in d["checks"]:
                w.writerow([c["name"], repr(c["error"]), c["tolerance"], c["passed"], f"{c['seconds']:.3f}"])
        else:
            w.writerow(["key", "value"])
            for k, v in _flatten(d):
                w.writerow([k, v])
        return buf.getvalue().rstrip("\n")
    # text
    if command == "residue":
        lines = [f"degree {d['degree']}", f"A = {d['A']!r}", f"B = {d['B']!r}",
                 f"terms with |tr h| <= {d['trace_bound']}: {len(d['terms'])}"]
        lines += [f"  t={t['t']:+d} w={tuple(t['w'])} coeff={t['coeff']:.12e}" for t in d["terms"]]
        lines += [f"tail bound = {d['tail_bound']:.3e}", f"value at x = {d['value_at_x']}"]
        return "\n".join(lines)
    if command == "verify":
        return "\n".join(f"{'PASS' if c['passed'] else 'FAIL'}  {c['name']}  "
                         f"err={c['error']:.3e} tol={c['tolerance']:.0e}" for c in d["checks"])
    return "\n".join(f"{k}: {v}" for k, v in _flatten(d))


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="siegelres", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)
    fmt = dict(choices=["json", "csv", "text"], default="text")

    r = sub.add_parser("residue", help="Fourier expansion of the residue at s = m/2")
    r.add_argument("--degree", type=int, default=2)
    r.add_argument("--y", help='imaginary part, "a,b;c,d"')
    r.add_argument("--x", help='real part, "a,b;c,d"')
    r.add_argument("--trace-bound", type=float, default=6.0)
    r.add_argument("--km-constant-term", type=float)
    r.add_argument("--tol", type=float, help="fail if the tail bound exceeds this")
    r.add_argument("--plot-dir", default=".", help="directory for figures")
    r.add_argument("--no-plots", action="store_true")
    r.add_argument("--format", **fmt)

    e = sub.add_parser("eval", help="evaluate E_0^(m)(z, s) for m <= 2")
    e.add_argument("--degree", type=int, default=2)
    e.add_argument("--y")
    e.add_argument("--x")
    e.add_argument("--z-im", type=float, help="y = z_im times the identity")
    e.add_argument("--s", required=True)
    e.add_argument("--path", choices=["fourier", "direct"], default="fourier")
    e.add_argument("--height-bound", type=int, default=2)
    e.add_argument("--format", **fmt)

    v = sub.add_parser("verify", help="run verification suites")
    v.add_argument("--suite", choices=["specfun", "hypergeom", "siegel", "zeta", "residue", "all"],
                   default="all")
    v.add_argument("--format", choices=["json", "csv", "text"], default="json")
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "verify":
            d = cmd_verify(args.suite)
            print(render(d, args.format, "verify"))
            return EXIT_OK if d["passed"] else EXIT_INTERNAL
        cfg = RunConfig.from_args(args)
        if args.command == "residue":
            d, _ = cmd_residue(cfg, None if args.no_plots else args.plot_dir, args.tol)
        else:
            d = cmd_eval(cfg, args.path)
        print(render(d, cfg.fmt, args.command))
        return EXIT_OK
    except MissingInputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_MISSING
    except (DomainError, ConvergenceError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except Exception as exc:  # pragma: no cover
        print(f"internal error: {exc!r}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
