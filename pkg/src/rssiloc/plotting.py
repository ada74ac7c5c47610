"""Figure rendering for the report paths.

Each function draws one figure and writes it to the given path (PNG, PDF,
or anything matplotlib's Agg backend can save), so a run can keep a plot
next to its CSV output.
"""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .metrics import LocalizationReport
from .simulator import ComparisonReport


def plot_curve(distances_m: list[float], rssi_dbm: list[float], path: str) -> str:
    """RSSI against distance for a calibrated channel model."""
    fig, ax = plt.subplots(figsize=(6.0, 4.0))
    ax.plot(distances_m, rssi_dbm, marker="o", markersize=3, linewidth=1.2, color="tab:blue")
    ax.set_xlabel("Distance (m)")
    ax.set_ylabel("RSSI (dBm)")
    ax.set_title("Average RSSI vs distance")
    ax.grid(alpha=0.3)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path


def plot_report(report: LocalizationReport, path: str) -> str:
    """Per-placement position error with the run's GER as a reference line."""
    indices = range(1, len(report.placements) + 1)
    errors = [p.er_m for p in report.placements]
    fig, ax = plt.subplots(figsize=(7.0, 4.0))
    ax.bar(indices, errors, color="tab:blue", alpha=0.8, label="ER per placement")
    ax.axhline(report.ger_m, color="tab:red", linewidth=1.2, linestyle="--",
               label=f"GER = {report.ger_m:.2f} m")
    ax.set_xlabel("Placement")
    ax.set_ylabel("Error (m)")
    ax.set_title(f"Localization error ({report.method})")
    ax.legend()
    ax.grid(axis="y", alpha=0.3)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path


def plot_comparison(report: ComparisonReport, path: str) -> str:
    """Per-replication GER of both methods, with their means."""
    reps = range(1, report.replications + 1)
    fig, ax = plt.subplots(figsize=(7.0, 4.0))
    ax.plot(reps, report.ger_tri_m, linewidth=1.0, alpha=0.8, color="tab:orange",
            label=f"trilateration (mean {report.mean_ger_tri_m:.2f} m)")
    ax.plot(reps, report.ger_multi_m, linewidth=1.0, alpha=0.8, color="tab:blue",
            label=f"multilateration (mean {report.mean_ger_multi_m:.2f} m)")
    ax.axhline(report.mean_ger_tri_m, color="tab:orange", linestyle="--", linewidth=1.0)
    ax.axhline(report.mean_ger_multi_m, color="tab:blue", linestyle="--", linewidth=1.0)
    ax.set_xlabel("Replication")
    ax.set_ylabel("GER (m)")
    ax.set_title(f"Method comparison (multilateration wins {report.multi_win_rate:.0%})")
    ax.legend()
    ax.grid(alpha=0.3)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path
