"""Serialization of results: CSV and JSON tables plus SVG heatmaps.

All writers are deterministic byte streams for a fixed input: numbers are
formatted with 12 significant digits, JSON keys keep insertion order, and
the matplotlib SVG backend runs with a fixed hash salt and no date
metadata.
"""

import json
import math
from pathlib import Path
from typing import Dict

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402  (backend must be set first)

from .halfline import HalfLineVector  # noqa: E402
from .lifetable import LifeTable  # noqa: E402
from .transition import TransitionMatrix  # noqa: E402

_SVG_RC = {
    "svg.hashsalt": "latticelife",
    "svg.fonttype": "none",
}

#: Header comment emitted at the top of every transition-matrix table.
ORIENTATION_NOTE = (
    "column = previous state, row = next state; entry = p(next | previous), "
    "12 significant digits"
)


def fmt(x: float) -> str:
    """Decimal with 12 significant digits."""
    if not math.isfinite(x):
        raise ValueError(f"refusing to serialize non-finite value {x}")
    return format(float(x), ".12g")


def complex_pair(z: complex) -> list:
    return [float(z.real), float(z.imag)]


def write_transition_csv(tm: TransitionMatrix, path: Path) -> None:
    labels = tm.labels()
    lines = [f"# {ORIENTATION_NOTE}"]
    lines.append(",".join(["state"] + labels))
    for row, label in enumerate(labels):
        lines.append(",".join([label] + [fmt(tm.p[row, col]) for col in range(len(labels))]))
    path.write_text("\n".join(lines) + "\n")


def write_transition_json(tm: TransitionMatrix, path: Path) -> None:
    doc = {
        "orientation": ORIENTATION_NOTE,
        "states": tm.labels(),
        "p": [[float(x) for x in row] for row in tm.p],
    }
    path.write_text(json.dumps(doc, indent=2) + "\n")


def write_life_csv(tables: Dict[str, LifeTable], path: Path) -> None:
    lines = ["# life expectancy in steps per initial state"]
    lines.append("state,expectancy")
    for label, table in tables.items():
        lines.append(f"{label},{fmt(table.expectancy)}")
    path.write_text("\n".join(lines) + "\n")


def write_life_json(tables: Dict[str, LifeTable], path: Path) -> None:
    doc = {label: float(table.expectancy) for label, table in tables.items()}
    path.write_text(json.dumps(doc, indent=2) + "\n")


def write_spectrum_json(mode_label: str, cutoff: int, eta: float, hlv: HalfLineVector, path: Path) -> None:
    doc = spectrum_document(mode_label, cutoff, eta, hlv)
    path.write_text(json.dumps(doc, indent=2) + "\n")


def spectrum_document(mode_label: str, cutoff: int, eta: float, hlv: HalfLineVector) -> dict:
    return {
        "mode": mode_label,
        "N": cutoff,
        "eta": eta,
        "eigenvalues": [complex_pair(z) for z in hlv.full_spectrum],
        "lambda_max": complex_pair(hlv.renorm_eigenvalue),
    }


def write_summary_json(summary: dict, path: Path) -> None:
    _assert_finite(summary)
    path.write_text(json.dumps(summary, indent=2) + "\n")


def _assert_finite(node) -> None:
    if isinstance(node, dict):
        for value in node.values():
            _assert_finite(value)
    elif isinstance(node, (list, tuple)):
        for value in node:
            _assert_finite(value)
    elif isinstance(node, float) and not math.isfinite(node):
        raise ValueError("summary contains a non-finite number")


def render_heatmap_svg(tm: TransitionMatrix, path: Path, title: str) -> None:
    """Monochrome heatmap of the transition matrix, linear in p over [0, 1]."""
    labels = tm.labels()
    n = len(labels)
    with plt.rc_context(_SVG_RC):
        fig, ax = plt.subplots(figsize=(0.55 * n + 2.6, 0.55 * n + 2.0))
        image = ax.imshow(tm.p, cmap="Greys", vmin=0.0, vmax=1.0)
        ax.set_xticks(range(n), labels, rotation=45, ha="right")
        ax.set_yticks(range(n), labels)
        ax.set_xlabel("previous state")
        ax.set_ylabel("next state")
        ax.set_title(title)
        fig.colorbar(image, ax=ax, label="p(next | previous)")
        fig.tight_layout()
        fig.savefig(path, format="svg", metadata={"Date": None})
        plt.close(fig)


def render_life_bars_svg(tables: Dict[str, LifeTable], path: Path, title: str) -> None:
    """Bar chart of life expectancy per initial state."""
    labels = list(tables.keys())
    values = [tables[label].expectancy for label in labels]
    with plt.rc_context(_SVG_RC):
        fig, ax = plt.subplots(figsize=(0.6 * len(labels) + 2.4, 3.2))
        ax.bar(range(len(labels)), values, color="0.35")
        ax.set_xticks(range(len(labels)), labels, rotation=45, ha="right")
        ax.set_xlabel("initial state")
        ax.set_ylabel("life expectancy (steps)")
        ax.set_title(title)
        fig.tight_layout()
        fig.savefig(path, format="svg", metadata={"Date": None})
        plt.close(fig)
