"""Report emission: JSON documents, CSV tables and matplotlib figures.

Every writer is deterministic for a fixed input: keys are sorted, floats are
formatted explicitly, and figures use a fixed size, dpi and colormap so that
repeated runs produce byte-identical files.
"""

from __future__ import annotations

import csv
import io
import json
import os

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np


def dump_json(obj, path: str | None) -> str:
    text = json.dumps(obj, indent=2, sort_keys=True) + "\n"
    if path:
        with open(path, "w", encoding="utf-8") as f:
            f.write(text)
    return text


def write_verdict_csv(curves, cells, path: str) -> None:
    with open(path, "w", newline="", encoding="utf-8") as f:
        writer = csv.writer(f)
        header = ["product"] + [f"C({n},{k})" for (n, k) in curves]
        writer.writerow(header)
        for (n, k), row in zip(curves, cells):
            writer.writerow([f"C({n},{k})"] + row)


_SAVEFIG = dict(dpi=120, metadata={"Software": "skeinalg"})


def render_verdict_heatmap(curves, cells, path: str) -> None:
    """Color map of the positivity verdict matrix (left factor on rows)."""
    code = {"positive": 1.0, "negative": -1.0, "uncomputed": 0.0}
    grid = np.array([[code.get(v, 0.0) for v in row] for row in cells])
    n = len(curves)
    fig, ax = plt.subplots(figsize=(max(6, n * 0.28), max(5, n * 0.28)))
    ax.imshow(grid, cmap="RdYlGn", vmin=-1.0, vmax=1.0, interpolation="nearest")
    labels = [f"({a},{b})" for (a, b) in curves]
    ax.set_xticks(range(n), labels, rotation=90, fontsize=6)
    ax.set_yticks(range(n), labels, fontsize=6)
    ax.set_xlabel("right factor")
    ax.set_ylabel("left factor")
    ax.set_title("structure-constant positivity (grouped coordinates)")
    fig.tight_layout()
    fig.savefig(path, **_SAVEFIG)
    plt.close(fig)


def render_residual_bars(report_obj: dict, path: str) -> None:
    """Log-scale bars of relation and central-character residuals."""
    names, values = [], []
    for section in ("relations", "central"):
        for key, val in sorted(report_obj.get(section, {}).items()):
            names.append(f"{section[:3]}:{key}")
            values.append(max(float(val), 1e-18))
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.bar(range(len(values)), values, color="steelblue")
    ax.set_yscale("log")
    ax.set_xticks(range(len(names)), names, rotation=45, ha="right", fontsize=8)
    ax.axhline(1e-8, color="firebrick", linestyle="--", linewidth=1,
               label="tolerance")
    ax.set_ylabel("operator-norm residual")
    ax.set_title(f"verification residuals (commutant dim "
                 f"{report_obj.get('commutant_dim', '?')})")
    ax.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(path, **_SAVEFIG)
    plt.close(fig)


def ensure_outdir(path: str) -> str:
    os.makedirs(path, exist_ok=True)
    return path
