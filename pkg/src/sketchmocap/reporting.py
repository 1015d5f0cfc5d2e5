"""Report rendering for the CLI: CSV tables plus matplotlib figures.

Each write_* function fills a report directory with one delimited file and
one PNG covering the same data, so results can be consumed by scripts and
eyeballs alike.
"""

from __future__ import annotations

import csv
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .evaluate import EvalReport
from .retrieval import Candidate
from .stroke import Stroke2D


def _ensure_dir(outdir: str | Path) -> Path:
    outdir = Path(outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    return outdir


def write_query_report(
    outdir: str | Path, stroke: Stroke2D, candidates: list[Candidate]
) -> list[Path]:
    """candidates.csv plus an overlay figure of the stroke and the top hits."""
    outdir = _ensure_dir(outdir)
    csv_path = outdir / "candidates.csv"
    with csv_path.open("w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["rank", "motion_id", "joint_role", "similarity"])
        for c in candidates:
            writer.writerow([c.rank, c.motion_id, c.joint_role, f"{c.similarity:.6f}"])

    fig, ax = plt.subplots(figsize=(8, 6))
    for c in reversed(candidates):
        pts = c.polyline.points
        ax.plot(
            pts[:, 0], pts[:, 1],
            linestyle="--", alpha=0.45, linewidth=1.5,
            label=f"#{c.rank} {c.motion_id} ({c.similarity:.1f}px)",
        )
    ax.plot(
        stroke.points[:, 0], stroke.points[:, 1],
        color="black", linewidth=2.5, label="stroke",
    )
    ax.invert_yaxis()  # canvas y grows downward
    ax.set_aspect("equal")
    ax.set_xlabel("canvas x (px)")
    ax.set_ylabel("canvas y (px)")
    ax.set_title("Query stroke vs. shadow guidance")
    ax.legend(loc="best", fontsize=8)
    fig_path = outdir / "query_overlay.png"
    fig.savefig(fig_path, dpi=120, bbox_inches="tight")
    plt.close(fig)
    return [csv_path, fig_path]


def write_eval_report(outdir: str | Path, report: EvalReport) -> list[Path]:
    """per_joint_mse.csv plus a bar chart of the worst joints."""
    outdir = _ensure_dir(outdir)
    csv_path = outdir / "per_joint_mse.csv"
    with csv_path.open("w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["joint", "mse_deg2"])
        for joint, value in sorted(report.per_joint.items()):
            writer.writerow([joint, f"{value:.9f}"])
        writer.writerow(["TOTAL", f"{report.mse:.9f}"])

    offenders = report.top_offenders(12)
    fig, ax = plt.subplots(figsize=(8, 4.5))
    names = [name for name, _ in offenders][::-1]
    values = [value for _, value in offenders][::-1]
    ax.barh(names, values, color="#c0504d")
    ax.axvline(report.mse, linestyle="--", color="black", label=f"mean = {report.mse:.3f}")
    ax.set_xlabel("MSE (degrees$^2$)")
    ax.set_title("Per-joint rotation error, worst first")
    ax.legend()
    fig_path = outdir / "per_joint_mse.png"
    fig.savefig(fig_path, dpi=120, bbox_inches="tight")
    plt.close(fig)
    return [csv_path, fig_path]


def write_bench_report(outdir: str | Path, latencies: list[float]) -> list[Path]:
    """latencies.csv plus a latency histogram with mean/p95 markers."""
    outdir = _ensure_dir(outdir)
    csv_path = outdir / "latencies.csv"
    with csv_path.open("w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["query", "seconds"])
        for i, value in enumerate(latencies):
            writer.writerow([i, f"{value:.6f}"])

    values = np.asarray(latencies) * 1000.0
    fig, ax = plt.subplots(figsize=(7, 4.5))
    ax.hist(values, bins=min(30, max(5, len(values) // 4)), color="#4f81bd", alpha=0.85)
    ax.axvline(values.mean(), color="black", linestyle="--",
               label=f"mean = {values.mean():.2f} ms")
    ax.axvline(np.percentile(values, 95), color="#c0504d", linestyle=":",
               label=f"p95 = {np.percentile(values, 95):.2f} ms")
    ax.set_xlabel("query latency (ms)")
    ax.set_ylabel("count")
    ax.set_title(f"Retrieval latency over {len(values)} queries")
    ax.legend()
    fig_path = outdir / "latency_hist.png"
    fig.savefig(fig_path, dpi=120, bbox_inches="tight")
    plt.close(fig)
    return [csv_path, fig_path]
