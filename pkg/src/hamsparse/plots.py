"""Figure rendering for the report paths (PNG files next to the CSV output)."""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402  (backend must be set first)


def _hist_range(values) -> tuple[float, float]:
    lo, hi = float(min(values)), float(max(values))
    if hi - lo <= 1e-9 * max(1.0, abs(hi), abs(lo)):
        pad = 0.5 * max(abs(hi), 1.0)
        return lo - pad, hi + pad
    return lo, hi


def resistance_histogram(tbl, path: str | Path) -> None:
    fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(9, 3.5))
    ax1.hist(tbl.resistances, bins=40, range=_hist_range(tbl.resistances),
             color="tab:blue", alpha=0.8)
    ax1.set_xlabel("effective resistance")
    ax1.set_ylabel("edges")
    ax2.hist(tbl.vertex_marginal, bins=40, range=_hist_range(tbl.vertex_marginal),
             color="tab:orange", alpha=0.8)
    ax2.set_xlabel("vertex selection marginal")
    ax2.set_ylabel("vertices")
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)


def occupancy_histogram(occupancy, r_threshold: float, path: str | Path) -> None:
    fig, ax = plt.subplots(figsize=(6, 3.5))
    ax.hist(occupancy.max_occupancy_per_seed, bins=30,
            range=_hist_range(occupancy.max_occupancy_per_seed),
            color="tab:green", alpha=0.8)
    ax.axvline(r_threshold, color="tab:red", linestyle="--",
               label=f"tail threshold R = {r_threshold:.1f}")
    ax.set_xlabel("max row occupancy over seeds")
    ax.set_ylabel("seeds")
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)


def hamsim_sweep_plot(reports, title: str, path: str | Path) -> None:
    ts = [r.t for r in reports]
    fig, ax = plt.subplots(figsize=(6, 3.5))
    ax.plot(ts, [r.diff_norm**2 for r in reports], "o-", label="diff_norm^2")
    ax.plot(ts, [r.sq_bound_first_order for r in reports], "s--",
            label="first-order bound")
    ax.set_xlabel("t")
    ax.set_yscale("log")
    ax.set_title(title)
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)


def ledger_scaling_plot(sizes, oracle_totals, slope: float, path: str | Path) -> None:
    fig, ax = plt.subplots(figsize=(5, 3.5))
    ax.loglog(sizes, oracle_totals, "o-", label=f"measured (slope {slope:.2f})")
    ref = [oracle_totals[0] * (s / sizes[0]) ** 1.5 for s in sizes]
    ax.loglog(sizes, ref, "--", label="n^1.5 reference")
    ax.set_xlabel("n")
    ax.set_ylabel("oracle calls")
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
