import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from netsom.grid import (
    GridPosition,
    GridShape,
    grid_distance,
    index_of,
    neighbors_of,
    position_of,
)


class TestGridShape:
    def test_node_count(self):
        assert GridShape(3, 4).node_count == 12

    @pytest.mark.parametrize("rows,cols", [(0, 3), (3, 0), (-1, 1)])
    def test_rejects_empty(self, rows, cols):
        with pytest.raises(ValueError):
            GridShape(rows, cols)


class TestPositionOf:
    def test_origin(self):
        assert position_of(0, GridShape(3, 3)) == GridPosition(0, 0)

    def test_last_cell_row_major(self):
        assert position_of(8, GridShape(3, 3)) == GridPosition(2, 2)

    def test_matches_row_major_enumeration(self):
        # independent oracle: enumerate all (row, col) pairs in row-major order
        shape = GridShape(3, 4)
        enumerated = [(r, c) for r in range(3) for c in range(4)]
        assert enumerated[5] == (1, 1)
        for i in range(shape.node_count):
            assert position_of(i, shape) == GridPosition(*enumerated[i])

    @pytest.mark.parametrize("index", [-1, 9])
    def test_out_of_range(self, index):
        with pytest.raises(ValueError):
            position_of(index, GridShape(3, 3))

    @given(rows=st.integers(1, 12), cols=st.integers(1, 12))
    def test_round_trip_bijection(self, rows, cols):
        shape = GridShape(rows, cols)
        seen = set()
        for i in range(shape.node_count):
            p = position_of(i, shape)
            assert index_of(p, shape) == i
            seen.add((p.row, p.col))
        assert len(seen) == shape.node_count


class TestGridDistance:
    def test_identity(self):
        assert grid_distance(GridPosition(1, 1), GridPosition(1, 1)) == 0.0

    def test_adjacent(self):
        assert grid_distance(GridPosition(0, 0), GridPosition(0, 1)) == 1.0

    def test_diagonal(self):
        # scalar oracle: sqrt((2-0)^2 + (2-0)^2)
        expected = math.sqrt(4 + 4)
        assert grid_distance(GridPosition(0, 0), GridPosition(2, 2)) == expected

    def test_symmetry_and_triangle_inequality_exhaustive_10x10(self):
        coords = [(r, c) for r in range(10) for c in range(10)]
        pts = np.asarray(coords, dtype=np.float64)
        diff = pts[:, None, :] - pts[None, :, :]
        dist = np.sqrt((diff * diff).sum(axis=-1))
        for a in range(100):
            for b in range(a, 100):
                d = grid_distance(GridPosition(*coords[a]), GridPosition(*coords[b]))
                assert d == grid_distance(GridPosition(*coords[b]), GridPosition(*coords[a]))
                assert d == pytest.approx(dist[a, b], abs=1e-12)
        lhs = dist[:, None, :]
        rhs = dist[:, :, None] + dist[None, :, :]
        assert np.all(lhs <= rhs + 1e-12)


class TestNeighborsOf:
    def test_corner(self):
        out = neighbors_of(GridPosition(0, 0), GridShape(3, 3))
        assert out == [GridPosition(1, 0), GridPosition(0, 1)]

    def test_interior_order_up_down_left_right(self):
        out = neighbors_of(GridPosition(1, 1), GridShape(3, 3))
        assert out == [
            GridPosition(0, 1),
            GridPosition(2, 1),
            GridPosition(1, 0),
            GridPosition(1, 2),
        ]

    def test_single_row_grid(self):
        out = neighbors_of(GridPosition(0, 1), GridShape(1, 3))
        assert out == [GridPosition(0, 0), GridPosition(0, 2)]

    def test_single_node_has_no_neighbors(self):
        assert neighbors_of(GridPosition(0, 0), GridShape(1, 1)) == []

    @given(rows=st.integers(1, 10), cols=st.integers(1, 10))
    def test_neighborhood_is_symmetric(self, rows, cols):
        shape = GridShape(rows, cols)
        for i in range(shape.node_count):
            p = position_of(i, shape)
            for q in neighbors_of(p, shape):
                assert p in neighbors_of(q, shape)
