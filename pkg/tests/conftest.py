"""Shared synthetic datasets and independent oracles.

The oracles deliberately avoid the library's vectorized code paths: plain
Python loops over lists, scalar math. They are the reference the kernels
are checked against.
"""

from __future__ import annotations

import math

import numpy as np

# ---------------------------------------------------------------- datasets


def four_cluster_data(seed: int = 2024, std: float = 0.3, per_cluster: int = 100) -> np.ndarray:
    """Four well-separated Gaussian clusters in the plane, 400 points total."""
    rng = np.random.default_rng(seed)
    centers = ((0.0, 0.0), (10.0, 0.0), (0.0, 10.0), (10.0, 10.0))
    return np.concatenate([rng.normal(c, std, size=(per_cluster, 2)) for c in centers])


def two_cluster_data(seed: int = 77, per_cluster: int = 200) -> np.ndarray:
    """Two unit-variance clusters at (0,0) and (10,10)."""
    rng = np.random.default_rng(seed)
    a = rng.normal((0.0, 0.0), 1.0, size=(per_cluster, 2))
    b = rng.normal((10.0, 10.0), 1.0, size=(per_cluster, 2))
    return np.concatenate([a, b])


def bounds_of(data: np.ndarray) -> np.ndarray:
    return np.stack([data.min(axis=0), data.max(axis=0)], axis=1)


# ----------------------------------------------------------------- oracles


def oracle_bmu(weights, x) -> tuple[int, float]:
    """Exhaustive linear scan, squared distances, lowest index wins."""
    rows = [list(map(float, r)) for r in weights]
    xs = list(map(float, x))
    best = 0
    best_d2 = None
    for i, row in enumerate(rows):
        acc = 0.0
        for k in range(len(xs)):
            d = row[k] - xs[k]
            acc += d * d
        if best_d2 is None or acc < best_d2:
            best_d2 = acc
            best = i
    return best, math.sqrt(best_d2)


def oracle_qe(weights, data) -> float:
    """Mean winner distance via nested loops, no caching."""
    total = 0.0
    count = 0
    for row in data:
        _, dist = oracle_bmu(weights, row)
        total += dist
        count += 1
    return total / count


def oracle_kernel(c_row, c_col, i_row, i_col, alpha, sigma) -> float:
    """Scalar Gaussian neighborhood factor."""
    dr = c_row - i_row
    dc = c_col - i_col
    return alpha * math.exp(-float(dr * dr + dc * dc) / (2.0 * sigma * sigma))


def oracle_adapt(weights, x, c, alpha, sigma, cols) -> list[list[float]]:
    """Per-component update rule applied with scalar arithmetic."""
    c_row, c_col = divmod(c, cols)
    out = []
    for i, row in enumerate(weights):
        i_row, i_col = divmod(i, cols)
        h = oracle_kernel(c_row, c_col, i_row, i_col, alpha, sigma)
        out.append([w + h * (xv - w) for w, xv in zip(row, x)])
    return out


def oracle_umatrix(weights, rows, cols) -> list[float]:
    """Neighbor-mean values via double loops over the grid."""
    values = []
    for r in range(rows):
        for c in range(cols):
            i = r * cols + c
            dists = []
            for nr, nc in ((r - 1, c), (r + 1, c), (r, c - 1), (r, c + 1)):
                if 0 <= nr < rows and 0 <= nc < cols:
                    j = nr * cols + nc
                    acc = 0.0
                    for k in range(len(weights[i])):
                        d = float(weights[i][k]) - float(weights[j][k])
                        acc += d * d
                    dists.append(math.sqrt(acc))
            values.append(sum(dists) / len(dists) if dists else 0.0)
    return values


def oracle_nearest_rank(values, percentile) -> float:
    """1-based nearest-rank percentile of a sample."""
    ordered = sorted(float(v) for v in values)
    rank = math.ceil(percentile * len(ordered) / 100.0)
    rank = min(len(ordered), max(1, rank))
    return ordered[rank - 1]
