import logging
import os

import matplotlib

matplotlib.use("Agg")
import matplotlib.dates as mdates
import matplotlib.pyplot as plt
import numpy as np

logger = logging.getLogger(__name__)


def plot_series_timeline(view, assessment, output_file="outputs/series.png"):
    """
    Draws the anchored members of a series on a time axis, with the gap in
    days written above each step and the estimated band shaded behind the
    gap chart.
    """
    anchored = [(m, view.anchors[m]) for m in view.members if m in view.anchors]
    if not anchored:
        logger.warning("No anchored members in %s, nothing to plot", view.series.value)
        return None

    names = [m.local_name for m, _ in anchored]
    dates = [d for _, d in anchored]
    gaps = np.array(assessment.gaps if assessment else (), dtype=np.float64)

    fig, (ax1, ax2) = plt.subplots(2, 1, figsize=(11, 7), gridspec_kw={"height_ratios": [1, 1.3]})
    fig.suptitle(f"Recurrent Situation Series: {view.series.local_name}", fontsize=14)

    # 1. Timeline of members
    ax1.plot(dates, np.zeros(len(dates)), color="#1f77b4", linewidth=2, marker="o", markersize=8)
    for name, d in zip(names, dates):
        ax1.annotate(name, (d, 0), xytext=(0, 10), textcoords="offset points", ha="center", fontsize=9)
    if view.last_flagged is not None and view.last_flagged in view.anchors:
        ax1.scatter(view.anchors[view.last_flagged], 0, color="magenta", s=150, marker="*",
                    edgecolors="black", label="Last situation", zorder=10)
        ax1.legend(loc="upper right")
    ax1.xaxis.set_major_formatter(mdates.DateFormatter("%Y-%m-%d"))
    ax1.set_yticks([])
    ax1.grid(axis="x", linestyle="--", alpha=0.5)
    ax1.set_title("Members by start date")

    # 2. Gaps against the estimated period
    if len(gaps):
        labels = [f"{a}→{b}" for a, b in zip(names, names[1:])]
        inside = assessment.band is None or assessment.within_band
        colors = ["#2ca02c" if _in_band(g, assessment.band) else "#d62728" for g in gaps]
        bars = ax2.bar(labels, gaps, color=colors, alpha=0.8)
        for bar in bars:
            height = bar.get_height()
            ax2.text(bar.get_x() + bar.get_width() / 2., height, f"{int(height)}",
                     ha="center", va="bottom", fontsize=9)
        ax2.axhline(assessment.measured_days, color="black", linestyle="--",
                    label=f"Mean gap ({assessment.measured_days:.0f} days)")
        if assessment.band is not None:
            low, high = assessment.band
            ax2.axhspan(low, high, color="lime" if inside else "orange", alpha=0.2,
                        label=f"Estimated {assessment.estimated} [{low}, {high}]")
        ax2.legend(loc="upper left")
        plt.setp(ax2.xaxis.get_majorticklabels(), rotation=30, ha="right")
    else:
        ax2.text(0.5, 0.5, "Fewer than two anchored members", ha="center", va="center",
                 transform=ax2.transAxes)
    ax2.set_ylabel("Days")
    ax2.grid(axis="y", linestyle="--", alpha=0.5)
    ax2.set_title("Days between consecutive members")

    plt.tight_layout(rect=[0, 0.03, 1, 0.95])
    directory = os.path.dirname(output_file)
    if directory:
        os.makedirs(directory, exist_ok=True)
    plt.savefig(output_file)
    plt.close(fig)
    logger.info("Timeline saved to: %s", output_file)
    return output_file


def _in_band(gap, band):
    return band is None or band[0] <= gap <= band[1]
