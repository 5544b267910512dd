"""Figure rendering for profiles and experiment reports.

Figures are written to files (the backend is forced to Agg); every function
returns the path it wrote. Plots are a presentation of report data, never an
input to any verdict.
"""

from __future__ import annotations

import math

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402  (backend must be set first)

from .complexity import ComplexityProfile  # noqa: E402
from .experiments import ExperimentReport  # noqa: E402


def save_profile_figure(profile: ComplexityProfile, path: str) -> str:
    """Staircase of E_N (and E*_N when present) against the degree bound."""
    ns = [e.n for e in profile.entries]
    values = [e.value for e in profile.entries]
    fig, ax = plt.subplots(figsize=(7, 4.2))
    ax.step(ns, values, where="post", label="$E_N$", lw=1.8)
    if profile.istar_entries:
        ax.step(
            [e.n for e in profile.istar_entries],
            [e.value for e in profile.istar_entries],
            where="post",
            label="$E^*_N$",
            lw=1.4,
            ls="--",
        )
    xs = list(range(1, ns[-1] + 1))
    ax.plot(xs, [math.sqrt(2 * n) for n in xs], color="gray", lw=1, ls=":",
            label=r"$\sqrt{2N}$")
    ax.set_xlabel("N")
    ax.set_ylabel("complexity")
    ax.set_title(f"expansion complexity profile over F_{profile.sequence.field.p}")
    ax.legend(loc="upper left")
    ax.grid(alpha=0.3)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path


def save_shifts_figure(report: ExperimentReport, path: str) -> str:
    """Per-shift E_N values with exceptional shifts highlighted."""
    ms = [c["m"] for c in report.cases]
    vals = [c["e_n"] for c in report.cases]
    exceptional = [c["m"] for c in report.cases if c["exceptional"]]
    d = report.params["d"]
    fig, ax = plt.subplots(figsize=(8, 4))
    ax.scatter(ms, vals, s=12, label="$E_N(S')$")
    if exceptional:
        ax.scatter(
            exceptional,
            [vals[ms.index(m)] for m in exceptional],
            s=26,
            color="crimson",
            label="exceptional",
        )
    ax.axhline(d, color="gray", lw=1, ls=":", label=f"d = {d}")
    ax.set_xlabel("shift m")
    ax.set_ylabel(f"E at N = {report.params['n']}")
    ax.set_title(f"shifted inversive generator, p = {report.params['p']}")
    ax.legend(loc="lower right")
    ax.grid(alpha=0.3)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path


def save_montecarlo_figure(report: ExperimentReport, path: str) -> str:
    """Histogram of sampled E*_n values against the threshold b_n."""
    values = [c["value"] for c in report.cases]
    b_n = report.params["b_n"]
    fig, ax = plt.subplots(figsize=(7, 4.2))
    lo, hi = min(values), max(values)
    bins = [v - 0.5 for v in range(lo, hi + 2)]
    ax.hist(values, bins=bins, rwidth=0.85)
    ax.axvline(b_n + 0.5, color="crimson", lw=1.5, ls="--",
               label=f"threshold $b_n$ = {b_n}")
    ax.set_xlabel(f"$E^*_n$, n = {report.params['n']}")
    ax.set_ylabel("trials")
    ax.set_title(
        f"q = {report.params['q']}, {report.params['trials']} trials, "
        f"fraction at or below threshold: {report.params['empirical_fraction']:.4f}"
    )
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path


def save_carlitz_figure(report: ExperimentReport, path: str) -> str:
    """Exact irreducible counts against the main term, log scale."""
    ds = [c["d"] for c in report.cases]
    exact = [c["exact"] for c in report.cases]
    main = [c["main_term_float"] for c in report.cases]
    fig, ax = plt.subplots(figsize=(7, 4.2))
    ax.semilogy(ds, exact, "o-", label="exact count")
    ax.semilogy(ds, main, "s--", label="main term")
    ax.set_xticks(ds)
    ax.set_xlabel("total degree d")
    ax.set_ylabel("normalized irreducible polynomials")
    ax.set_title(f"irreducible counts over F_{report.params['q']}")
    ax.legend()
    ax.grid(alpha=0.3, which="both")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path


def save_report_figure(report: ExperimentReport, path: str) -> str:
    """Dispatch to the figure matching the experiment type."""
    kind = report.experiment
    if kind == "exceptional_shifts":
        return save_shifts_figure(report, path)
    if kind == "montecarlo_theorem2":
        return save_montecarlo_figure(report, path)
    if kind == "carlitz_counts":
        return save_carlitz_figure(report, path)
    raise ValueError(f"no figure defined for experiment {kind!r}")
