"""CSV and SVG export of sampled flexes, plus a PNG overview figure."""
from __future__ import annotations

import csv
import io
from pathlib import Path
from typing import Optional

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

from .colourings import BLUE, GOLD, RED  # noqa: E402
from .documents import fmt  # noqa: E402
from .flexes import FlexReport, ParametricFlex, sample_times  # noqa: E402

EDGE_COLOURS = {RED: "#c0392b", BLUE: "#2e5fa8", GOLD: "#d4a017", None: "#555555"}

matplotlib.rcParams["svg.hashsalt"] = "symflex"
matplotlib.rcParams["svg.fonttype"] = "none"


def frames_of(flex: ParametricFlex, frames: int) -> tuple[np.ndarray, np.ndarray]:
    if frames < 1:
        raise ValueError("frames must be at least 1")
    ts = sample_times(flex, frames)
    return ts, flex.positions(ts)


def csv_text(flex: ParametricFlex, frames: int) -> str:
    ts, pos = frames_of(flex, frames)
    buf = io.StringIO()
    out = csv.writer(buf, lineterminator="\n")
    out.writerow(["t", "vertex", "x", "y"])
    for k, t in enumerate(ts):
        for i, v in enumerate(flex.graph.vertices):
            out.writerow([fmt(t), v, fmt(pos[k, i, 0]), fmt(pos[k, i, 1])])
    return buf.getvalue()


def bounding_box(pos: np.ndarray, pad: float = 0.08) -> tuple[float, float, float, float]:
    """Box around the whole motion, symmetric about the mirror axis."""
    pts = pos.reshape(-1, 2)
    half = float(np.abs(pts[:, 0]).max())
    y0, y1 = float(pts[:, 1].min()), float(pts[:, 1].max())
    span = max(2 * half, y1 - y0, 1e-9)
    m = pad * span
    return -half - m, half + m, y0 - m, y1 + m


def _draw(ax, flex: ParametricFlex, frame: np.ndarray, box) -> None:
    g = flex.graph
    idx = {v: i for i, v in enumerate(g.vertices)}
    x0, x1, y0, y1 = box
    ax.axvline(0.0, color="#999999", lw=0.8, ls="--", zorder=0)
    for e in g.edges:
        colour = flex.colouring.get(e) if flex.colouring else None
        p, q = frame[idx[e[0]]], frame[idx[e[1]]]
        ax.plot([p[0], q[0]], [p[1], q[1]], color=EDGE_COLOURS[colour], lw=1.6, zorder=1)
    ax.scatter(frame[:, 0], frame[:, 1], s=14, color="black", zorder=2)
    ax.set_xlim(x0, x1)
    ax.set_ylim(y0, y1)
    ax.set_aspect("equal")
    ax.set_xticks([])
    ax.set_yticks([])


def write_svg_frames(flex: ParametricFlex, frames: int, outdir: Path, stem: str = "frame") -> list[Path]:
    ts, pos = frames_of(flex, frames)
    box = bounding_box(pos)
    outdir = Path(outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    width = len(str(frames - 1))
    paths = []
    for k in range(frames):
        fig, ax = plt.subplots(figsize=(4, 4))
        _draw(ax, flex, pos[k], box)
        ax.set_title(f"t = {ts[k]:.4f}", fontsize=9)
        path = outdir / f"{stem}_{k:0{width}d}.svg"
        fig.savefig(path, format="svg", metadata={"Date": None})
        plt.close(fig)
        paths.append(path)
    return paths


def write_report(flex: ParametricFlex, report: Optional[FlexReport], path: Path, frames: int = 6) -> Path:
    """Overview: a strip of frames and the edge-length drift along the motion."""
    ts, pos = frames_of(flex, max(frames, 2))
    box = bounding_box(pos)
    fig = plt.figure(figsize=(2.2 * len(ts), 5.0))
    grid = fig.add_gridspec(2, len(ts), height_ratios=[1.3, 1.0])
    for k in range(len(ts)):
        ax = fig.add_subplot(grid[0, k])
        _draw(ax, flex, pos[k], box)
        ax.set_title(f"t = {ts[k]:.2f}", fontsize=8)

    dense = sample_times(flex, 200)
    dpos = flex.positions(dense)
    idx = {v: i for i, v in enumerate(flex.graph.vertices)}
    ax = fig.add_subplot(grid[1, :])
    for e in flex.graph.edges:
        lens = np.linalg.norm(dpos[:, idx[e[0]]] - dpos[:, idx[e[1]]], axis=-1)
        colour = flex.colouring.get(e) if flex.colouring else None
        ax.plot(dense, lens - lens[0], color=EDGE_COLOURS[colour], lw=0.8)
    ax.set_xlabel("t")
    ax.set_ylabel("length - length(t0)")
    if report is not None:
        ax.set_title(f"max rel. variation {report.length_variation:.2e}, "
                     f"symmetry {report.symmetry_residual:.2e}", fontsize=9)
    fig.tight_layout()
    path = Path(path)
    fig.savefig(path, dpi=110, metadata={"Software": None})
    plt.close(fig)
    return path
