"""Figure rendering for evaluation and benchmark reports.

Figures are drawn straight onto `matplotlib.figure.Figure` objects (no
pyplot, no global backend state), so rendering works headless and writes
wherever the suffix points: .png, .svg, .pdf.
"""

from __future__ import annotations

from pathlib import Path
from typing import Union

from matplotlib.figure import Figure

from .bench import BenchReport
from .evaluate import EvalReport

__all__ = ["save_rate_figure", "save_bench_figure"]


def save_rate_figure(report: EvalReport, path: Union[str, Path]) -> Path:
    """Per-text recognition rates as a bar chart with the micro-average line."""
    path = Path(path)
    rows = report.rows
    fig = Figure(figsize=(max(6.0, 0.35 * len(rows) + 2.0), 4.0))
    ax = fig.subplots()
    labels = [row.id for row in rows]
    rates = [row.correct / row.expected if row.expected else 1.0 for row in rows]
    ax.bar(range(len(rows)), rates, color="#4878a8", label="per-text rate")
    ax.axhline(
        report.micro_recall,
        color="#c44e52",
        linestyle="--",
        label=f"average rate = {report.micro_recall:.3f}",
    )
    ax.set_xticks(range(len(rows)))
    ax.set_xticklabels(labels, rotation=90 if len(rows) > 30 else 0, fontsize=8)
    ax.set_ylim(0.0, 1.05)
    ax.set_xlabel("text")
    ax.set_ylabel("detected / expected")
    ax.set_title("Location recognition rate per text")
    ax.legend(loc="lower left")
    fig.tight_layout()
    fig.savefig(path)
    return path


def save_bench_figure(report: BenchReport, path: Union[str, Path]) -> Path:
    """Median extraction time per lookup mode, annotated with the speedup."""
    path = Path(path)
    fig = Figure(figsize=(5.0, 4.0))
    ax = fig.subplots()
    modes = [t.mode for t in report.timings]
    seconds = [t.median_seconds for t in report.timings]
    bars = ax.bar(modes, seconds, color=["#c44e52", "#55a868"][: len(modes)])
    for bar, secs in zip(bars, seconds):
        ax.annotate(
            f"{secs:.2f}s",
            (bar.get_x() + bar.get_width() / 2, bar.get_height()),
            ha="center",
            va="bottom",
            fontsize=9,
        )
    title = f"Extraction time, {report.doc_count} docs / {report.token_count} tokens"
    if report.speedup is not None:
        title += f"\nindexed speedup: {report.speedup:.1f}x"
    ax.set_title(title)
    ax.set_ylabel("median seconds")
    fig.tight_layout()
    fig.savefig(path)
    return path
