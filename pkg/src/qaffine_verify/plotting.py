"""Summary figure for a verification report."""
from __future__ import annotations

from collections import Counter
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .report import FAIL, INCONCLUSIVE, PASS, VerificationReport  # noqa: E402

COLORS = {PASS: "#4c9a5a", FAIL: "#c0392b", INCONCLUSIVE: "#d4a017"}


def group_counts(report: VerificationReport) -> dict:
    """{group: Counter(status)} where the group is the check-name prefix."""
    out: dict = {}
    for c in report.checks:
        group = c.name.split(".", 1)[0]
        out.setdefault(group, Counter())[c.status] += 1
    return out


def summary_figure(report: VerificationReport, directory) -> Path:
    """Write a stacked bar chart of check outcomes per group; return its path."""
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    counts = group_counts(report)
    groups = list(counts)
    fig, ax = plt.subplots(figsize=(max(4.0, 1.1 * len(groups) + 2), 3.6))
    bottom = [0] * len(groups)
    for status in (PASS, FAIL, INCONCLUSIVE):
        vals = [counts[g][status] for g in groups]
        if any(vals):
            ax.bar(groups, vals, bottom=bottom, color=COLORS[status], label=status)
            bottom = [b + v for b, v in zip(bottom, vals)]
    ax.set_ylabel("checks")
    p = report.params
    ax.set_title(f"{report.suite}: {report.status}  (W={p.get('weight')}, "
                 f"z in [{p.get('zmin')}, {p.get('zmax')}])", fontsize=10)
    ax.legend(fontsize=8)
    plt.setp(ax.get_xticklabels(), rotation=30, ha="right", fontsize=8)
    fig.tight_layout()
    path = directory / f"summary-{report.suite}.png"
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path
