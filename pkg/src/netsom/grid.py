"""Rectangular map lattice: node indexing, positions, and neighbor relations."""

from __future__ import annotations

import math
from dataclasses import dataclass


@dataclass(frozen=True)
class GridShape:
    """Dimensions of the rectangular node lattice."""

    rows: int
    cols: int

    def __post_init__(self) -> None:
        if self.rows < 1 or self.cols < 1:
            raise ValueError(
                f"grid shape must be at least 1x1, got {self.rows}x{self.cols}"
            )

    @property
    def node_count(self) -> int:
        return self.rows * self.cols


@dataclass(frozen=True)
class GridPosition:
    """Lattice coordinate (row, col) of one node."""

    row: int
    col: int


# Deterministic neighbor order: up, down, left, right.
_NEIGHBOR_STEPS = ((-1, 0), (1, 0), (0, -1), (0, 1))


def position_of(index: int, shape: GridShape) -> GridPosition:
    """Map a flat row-major node index to its lattice position."""
    if not 0 <= index < shape.node_count:
        raise ValueError(
            f"node index {index} out of range for {shape.rows}x{shape.cols} grid"
        )
    return GridPosition(index // shape.cols, index % shape.cols)


def index_of(p: GridPosition, shape: GridShape) -> int:
    """Map a lattice position back to its flat row-major node index."""
    if not (0 <= p.row < shape.rows and 0 <= p.col < shape.cols):
        raise ValueError(
            f"position ({p.row},{p.col}) outside {shape.rows}x{shape.cols} grid"
        )
    return p.row * shape.cols + p.col


def grid_distance(a: GridPosition, b: GridPosition) -> float:
    """Euclidean distance between two lattice positions, in lattice units."""
    dr = a.row - b.row
    dc = a.col - b.col
    return math.sqrt(dr * dr + dc * dc)


def neighbors_of(p: GridPosition, shape: GridShape) -> list[GridPosition]:
    """The 4-connected neighbors of ``p`` that lie inside the grid."""
    if not (0 <= p.row < shape.rows and 0 <= p.col < shape.cols):
        raise ValueError(
            f"position ({p.row},{p.col}) outside {shape.rows}x{shape.cols} grid"
        )
    out = []
    for dr, dc in _NEIGHBOR_STEPS:
        r, c = p.row + dr, p.col + dc
        if 0 <= r < shape.rows and 0 <= c < shape.cols:
            out.append(GridPosition(r, c))
    return out
