"""Report rendering: delimited tables, plain-text summaries, and figures.

The metrics module produces numbers; this module turns them into the
artifacts a run leaves behind: TSV files, a text table in the per-task by
per-method layout, a p-value-vs-benchmark-count curve, and a critical
difference diagram.
"""

from __future__ import annotations

from pathlib import Path
from typing import Iterable, Mapping, Sequence

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from motifbench.metrics import RankReport


def write_tsv(path, header: Sequence, rows: Iterable) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    lines = ["\t".join(str(h) for h in header)]
    for row in rows:
        lines.append("\t".join("" if v is None else str(v) for v in row))
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")


def plausibility_rows(reports: Mapping) -> list:
    """Flatten {(bench_label, method) -> PlausibilityReport} into TSV rows.

    Row format: benchmark, class, method, mean, std, n_evaluated,
    n_skipped. Rows are sorted for stable output.
    """
    rows = []
    for (label, method), report in sorted(reports.items()):
        for cls, stats in sorted(report.rows.items()):
            mean = None if stats.mean is None else f"{stats.mean:.6f}"
            std = None if stats.std is None else f"{stats.std:.6f}"
            rows.append((label, cls, method, mean, std,
                         stats.n_evaluated, stats.n_skipped))
    return rows


def plausibility_table_text(reports: Mapping, methods: Sequence) -> str:
    """Text table: one row per (benchmark, class), one column per method,
    cells as mean +/- std."""
    cells = {}
    for (label, method), report in reports.items():
        for cls, stats in report.rows.items():
            if stats.mean is not None:
                cells[(label, cls, method)] = f"{stats.mean:.3f} ± {stats.std:.3f}"
            else:
                cells[(label, cls, method)] = "n/a"
    row_keys = sorted({(label, cls) for (label, cls, _) in cells})
    name_width = max([len(f"{label} class {cls}") for label, cls in row_keys] + [4])
    col_width = max([len(m) for m in methods] + [13])
    header = "task".ljust(name_width) + "".join(
        f"  {m:>{col_width}}" for m in methods
    )
    lines = [header, "-" * len(header)]
    for label, cls in row_keys:
        line = f"{label} class {cls}".ljust(name_width)
        for m in methods:
            line += f"  {cells.get((label, cls, m), ''):>{col_width}}"
        lines.append(line)
    return "\n".join(lines) + "\n"


def curve_rows(points: Sequence) -> list:
    rows = []
    for pt in points:
        rows.append((pt.n, f"{pt.p_prefix:.6e}",
                     None if pt.p_min is None else f"{pt.p_min:.6e}",
                     None if pt.p_median is None else f"{pt.p_median:.6e}",
                     None if pt.p_max is None else f"{pt.p_max:.6e}"))
    return rows


def rank_report_dict(report: RankReport) -> dict:
    return {
        "methods": list(report.methods),
        "row_labels": list(report.row_labels),
        "avg_ranks": {m: report.avg_ranks[m] for m in report.methods},
        "friedman_chi2": report.chi2,
        "friedman_p": report.p_value,
        "iman_davenport_f": report.iman_davenport_f,
        "iman_davenport_p": report.iman_davenport_p,
        "alpha": report.alpha,
        "critical_difference": report.cd,
        "cliques": [list(c) for c in report.cliques],
        "n_rows": report.n_rows,
    }


def fig_friedman_curve(points: Sequence, path,
                       threshold: float = 0.01) -> None:
    """Plot the Friedman p-value against the number of benchmark rows."""
    ns = [pt.n for pt in points]
    fig, ax = plt.subplots(figsize=(6.0, 3.6))
    if points and points[0].p_median is not None:
        ax.fill_between(ns, [pt.p_min for pt in points],
                        [pt.p_max for pt in points],
                        alpha=0.25, color="tab:blue", linewidth=0,
                        label="min-max over orderings")
        ax.plot(ns, [pt.p_median for pt in points], color="tab:blue",
                label="median over orderings")
    ax.plot(ns, [pt.p_prefix for pt in points], color="tab:orange",
            marker="o", markersize=3, label="canonical order")
    ax.axhline(threshold, color="tab:red", linestyle="--", linewidth=1,
               label=f"p = {threshold:g}")
    ax.set_yscale("log")
    ax.set_xlabel("number of benchmark rows")
    ax.set_ylabel("Friedman p-value")
    ax.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def fig_cd_diagram(report: RankReport, path) -> None:
    """Critical difference diagram: average ranks on a shared axis, with
    bars joining cliques of statistically compatible methods."""
    items = sorted(report.avg_ranks.items(), key=lambda kv: (kv[1], kv[0]))
    k = len(items)
    lo = 1.0
    hi = float(k)
    fig, ax = plt.subplots(figsize=(6.5, 1.6 + 0.45 * k))
    ax.set_xlim(lo - 0.2, hi + 0.2)
    half = (k + 1) // 2
    label_rows = max(half, k - half)
    clique_rows = max(1, len([c for c in report.cliques if len(c) > 1]))
    ax.set_ylim(-(label_rows + 1.0), 1.6 + 0.4 * clique_rows)
    ax.axhline(0, color="black", linewidth=1.2)
    for tick in range(1, k + 1):
        ax.plot([tick, tick], [0, 0.15], color="black", linewidth=1)
        ax.text(tick, 0.3, str(tick), ha="center", va="bottom", fontsize=9)

    for pos, (name, rank) in enumerate(items):
        onleft = pos < half
        row = (pos if onleft else pos - half) + 1
        x_label = lo - 0.15 if onleft else hi + 0.15
        align = "right" if onleft else "left"
        y = -row
        ax.plot([rank, rank, x_label], [0, y, y], color="black", linewidth=0.9)
        ax.text(x_label, y, f" {name} ({rank:.2f}) " if not onleft
                else f" {name} ({rank:.2f}) ",
                ha=align, va="center", fontsize=9)

    bar_y = 0.9
    for clique in report.cliques:
        if len(clique) < 2:
            continue
        ranks = [report.avg_ranks[m] for m in clique]
        ax.plot([min(ranks) - 0.05, max(ranks) + 0.05], [bar_y, bar_y],
                color="black", linewidth=3, solid_capstyle="round")
        bar_y += 0.4

    cd_left = lo
    ax.plot([cd_left, cd_left + report.cd], [bar_y + 0.3, bar_y + 0.3],
            color="black", linewidth=1)
    for x in (cd_left, cd_left + report.cd):
        ax.plot([x, x], [bar_y + 0.2, bar_y + 0.4], color="black", linewidth=1)
    ax.text(cd_left + report.cd / 2, bar_y + 0.45,
            f"CD = {report.cd:.3f} (alpha = {report.alpha:g})",
            ha="center", va="bottom", fontsize=8)
    ax.axis("off")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def summary_rows(entries: Iterable) -> list:
    """Rows for the generation summary: per benchmark, the motif
    iterations per class, per-class counts, total, and balance."""
    rows = []
    for entry in entries:
        bench = entry["benchmark"]
        iters = {m.class_role: m.iteration for m in bench.motifs}
        n0, n1 = bench.class_counts
        rows.append((
            entry["file"],
            bench.mode,
            iters.get(0, ""),
            iters.get(1, ""),
            n0,
            n1,
            n0 + n1,
            f"{bench.balance:.2f}",
        ))
    return rows
