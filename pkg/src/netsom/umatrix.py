"""Unified distance matrix: per-node mean weight distance to lattice neighbors.

High values mark ridges between clusters on the trained map; low values mark
cluster interiors.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from netsom.core import SomMap
from netsom.grid import GridShape, index_of, neighbors_of, position_of

EXPORT_FORMATS = ("grid-csv", "grayscale-image")


@dataclass(frozen=True)
class UMatrix:
    """Row-major per-node values, in weight-space distance units."""

    shape: GridShape
    values: np.ndarray

    def __post_init__(self) -> None:
        v = np.ascontiguousarray(self.values, dtype=np.float64)
        if v.shape != (self.shape.node_count,):
            raise ValueError(
                f"values must have {self.shape.node_count} entries, got shape {v.shape}"
            )
        if not np.all(np.isfinite(v)) or np.any(v < 0.0):
            raise ValueError("U-Matrix values must be finite and nonnegative")
        object.__setattr__(self, "values", v)


def compute_umatrix(som: SomMap) -> UMatrix:
    """Mean Euclidean weight distance from each node to its 4-connected
    neighbors. A 1x1 map has no neighbors and yields the single value 0."""
    shape = som.shape
    w = som.weights
    values = np.zeros(shape.node_count, dtype=np.float64)
    for i in range(shape.node_count):
        nbrs = neighbors_of(position_of(i, shape), shape)
        if not nbrs:
            continue
        acc = 0.0
        for q in nbrs:
            acc += float(np.linalg.norm(w[i] - w[index_of(q, shape)]))
        values[i] = acc / len(nbrs)
    return UMatrix(shape=shape, values=values)


def export_umatrix(u: UMatrix, format: str) -> bytes:
    """Serialize a U-Matrix.

    ``grid-csv``: one grid row per line, comma-separated full-precision
    values in row-major order.

    ``grayscale-image``: plain PGM (P2), values min-max scaled to 0..255
    with round-half-away-from-zero; an all-equal matrix maps to all zeros.
    """
    if format == "grid-csv":
        lines = []
        for r in range(u.shape.rows):
            row = u.values[r * u.shape.cols : (r + 1) * u.shape.cols]
            lines.append(",".join(repr(float(v)) for v in row))
        return ("\n".join(lines) + "\n").encode("ascii")
    if format == "grayscale-image":
        vmin = float(u.values.min())
        vmax = float(u.values.max())
        if vmax > vmin:
            scaled = (u.values - vmin) / (vmax - vmin) * 255.0
            pixels = [int(math.floor(x + 0.5)) for x in scaled]
        else:
            pixels = [0] * u.shape.node_count
        lines = [f"P2\n{u.shape.cols} {u.shape.rows}\n255"]
        for r in range(u.shape.rows):
            row = pixels[r * u.shape.cols : (r + 1) * u.shape.cols]
            lines.append(" ".join(str(p) for p in row))
        return ("\n".join(lines) + "\n").encode("ascii")
    raise ValueError(
        f"unsupported export format {format!r}; expected one of {', '.join(EXPORT_FORMATS)}"
    )
