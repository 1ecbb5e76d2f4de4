"""Figures for residue reports, rendered to files with the Agg backend."""
from __future__ import annotations

import os

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402


def plot_coefficients(report, path: str) -> str:
    """Semilog plot of ``|coefficient|`` against ``|tr h|``."""
    tr = [abs(h.trace()) for h, _ in report.fourier_terms]
    c = [abs(v) for _, v in report.fourier_terms]
    fig, ax = plt.subplots(figsize=(5, 3.5))
    ax.semilogy(tr, c, "o", ms=4)
    if report.tail_bound > 0:
        ax.axhline(report.tail_bound, ls="--", lw=0.8, color="gray", label="tail bound")
        ax.legend(frameon=False)
    ax.set_xlabel("|tr h|")
    ax.set_ylabel("|coefficient|")
    ax.set_title(f"rank-one coefficients, degree {report.m}")
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path


def plot_x_profile(report, path: str, n: int = 101) -> str:
    """Residue along ``x = t E_11``, ``0 <= t <= 1``."""
    t = np.linspace(0.0, 1.0, n)
    vals = []
    for ti in t:
        x = np.zeros((report.m, report.m))
        x[0, 0] = ti
        vals.append(report.value_at(x).real)
    fig, ax = plt.subplots(figsize=(5, 3.5))
    ax.plot(t, vals)
    ax.set_xlabel("t  (x = t E_11)")
    ax.set_ylabel("residue")
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path


def render_report(report, directory: str, stem: str = "residue") -> list[str]:
    os.makedirs(directory, exist_ok=True)
    return [plot_coefficients(report, os.path.join(directory, f"{stem}_coefficients.png")),
            plot_x_profile(report, os.path.join(directory, f"{stem}_x_profile.png"))]
