"""Matplotlib renderers for run and bench reports.

Figures are written next to the delimited report file.  matplotlib is
imported lazily with the Agg backend so library users without a display
never pay for it.
"""

from __future__ import annotations

from typing import Sequence


def _pyplot():
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    return plt


def render_run_figure(rows: Sequence[dict], path: str) -> None:
    """Per-trial query counts, failures highlighted."""
    plt = _pyplot()
    trials = [r["trial"] for r in rows]
    queries = [r["queries"] for r in rows]
    colors = ["tab:blue" if r["success"] else "tab:red" for r in rows]
    fig, ax = plt.subplots(figsize=(8, 4.5))
    ax.bar(trials, queries, color=colors, width=0.8)
    ax.set_xlabel("trial")
    ax.set_ylabel("oracle queries")
    n = rows[0]["n"] if rows else "?"
    ok = sum(1 for r in rows if r["success"])
    ax.set_title(f"hidden-involution recovery, n={n} ({ok}/{len(rows)} succeeded)")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def render_bench_figure(
    ns: Sequence[int], mean_queries: Sequence[float], slope: float, path: str
) -> None:
    """Log-log query scaling with the fitted power law."""
    plt = _pyplot()
    fig, ax = plt.subplots(figsize=(6.5, 4.5))
    ax.loglog(ns, mean_queries, "o", label="measured mean")
    if len(ns) >= 2:
        anchor = mean_queries[0] / (ns[0] ** slope)
        fit = [anchor * n**slope for n in ns]
        ax.loglog(ns, fit, "--", label=f"fit: n^{slope:.2f}")
    ax.set_xlabel("n")
    ax.set_ylabel("mean oracle queries")
    ax.set_title("query scaling")
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
