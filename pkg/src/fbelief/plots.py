"""Figure rendering for experiment artifacts (PNG files next to the CSVs)."""

from __future__ import annotations

from pathlib import Path
from typing import Sequence

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .core import enumerate_powerset
from .transforms import SplitTrace


def _save(fig, path: Path) -> Path:
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path


def render_negation(path: Path, trends: dict[str, list[float]]) -> Path:
    fig, ax = plt.subplots(figsize=(6, 4))
    steps = range(1, len(next(iter(trends.values()))) + 1)
    for name, values in trends.items():
        ax.plot(steps, values, marker="o", markersize=3, label=name)
    ax.set_xlabel("negation step")
    ax.set_ylabel("measure value (bits)")
    ax.legend()
    return _save(fig, path)


def render_sweep(path: Path, rows: Sequence[Sequence[float]]) -> Path:
    fig, ax = plt.subplots(figsize=(6, 4))
    xs = [r[0] for r in rows]
    for idx, name in ((1, "input sweep"), (2, "fixed input"), (3, "conjunctive"), (4, "disjunctive")):
        ax.plot(xs, [r[idx] for r in rows], label=name)
    ax.set_xlabel("sweep index")
    ax.set_ylabel("fractal belief entropy (bits)")
    ax.legend()
    return _save(fig, path)


def render_surface(path: Path, rows: Sequence[Sequence[float]], name: str, steps: int) -> Path:
    nan = float("nan")
    grid = [[nan] * (steps + 1) for _ in range(steps + 1)]
    for a, b, value in rows:
        grid[round(b * steps)][round(a * steps)] = value
    fig, ax = plt.subplots(figsize=(5.5, 4.5))
    image = ax.imshow(grid, origin="lower", extent=(0, 1, 0, 1), aspect="equal")
    fig.colorbar(image, ax=ax, label=f"{name} (bits)")
    ax.set_xlabel("m(x1)")
    ax.set_ylabel("m(x2)")
    return _save(fig, path)


def render_trace(path: Path, trace: SplitTrace, xlabel: str, marks: Sequence[float] = ()) -> Path:
    frame = trace.final.frame
    fig, ax = plt.subplots(figsize=(6, 4))
    steps = [s.index for s in trace.steps]
    for focal in enumerate_powerset(frame):
        ax.plot(steps, [s.bpa.mass(focal) for s in trace.steps], label=frame.format_set(focal))
    for level in marks:
        ax.axhline(level, color="grey", linestyle=":", linewidth=0.8)
    ax.set_xlabel(xlabel)
    ax.set_ylabel("mass")
    ax.legend(fontsize=8)
    return _save(fig, path)


def render_max_curves(path: Path, rows: Sequence[Sequence[float]]) -> Path:
    fig, ax = plt.subplots(figsize=(6, 4))
    xs = [r[0] for r in rows]
    for idx, name in ((1, "shannon"), (2, "js"), (3, "fb"), (4, "deng"), (5, "pal")):
        ax.plot(xs, [r[idx] for r in rows], marker="o", markersize=3, label=name)
    ax.set_xlabel("frame size n")
    ax.set_ylabel("maximum value (bits)")
    ax.legend()
    return _save(fig, path)


def render_table4(path: Path, rows: Sequence[Sequence[object]]) -> Path:
    fig, ax = plt.subplots(figsize=(6, 4))
    labels = [r[0] for r in rows]
    xs = range(len(labels))
    width = 0.38
    ax.bar([x - width / 2 for x in xs], [r[1] for r in rows], width, label="four-cycle pairs")
    ax.bar([x + width / 2 for x in xs], [r[2] for r in rows], width, label="all six pairs")
    ax.set_xticks(list(xs), labels, rotation=20, ha="right", fontsize=8)
    ax.set_ylabel("bits")
    ax.legend()
    return _save(fig, path)


def render_bars(path: Path, values: dict[str, float], ylabel: str) -> Path:
    fig, ax = plt.subplots(figsize=(max(4, 0.6 * len(values)), 4))
    ax.bar(range(len(values)), list(values.values()))
    ax.set_xticks(range(len(values)), list(values.keys()), rotation=45, ha="right", fontsize=8)
    ax.set_ylabel(ylabel)
    return _save(fig, path)
