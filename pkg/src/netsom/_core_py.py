"""Pure numpy implementation of the training hot path.

Fallback for when the compiled extension is not built. Squared distances
accumulate one dimension at a time so that results are bit-identical to the
compiled kernels wherever no transcendental function is involved.
"""

from __future__ import annotations

import math

import numpy as np

NAME = "python"


def bmu_batch(weights: np.ndarray, xs: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Best matching unit for each row of ``xs`` against ``weights``.

    Returns ``(indices, distances)``; ties break to the lowest node index.
    """
    n_inputs = xs.shape[0]
    dim = weights.shape[1]
    idx = np.empty(n_inputs, dtype=np.int64)
    dist = np.empty(n_inputs, dtype=np.float64)
    for j in range(n_inputs):
        diff = weights - xs[j]
        sq = diff * diff
        d2 = sq[:, 0].copy()
        for k in range(1, dim):
            d2 += sq[:, k]
        best = int(np.argmin(d2))  # argmin keeps the first minimum
        idx[j] = best
        dist[j] = math.sqrt(d2[best])
    return idx, dist


def run_steps(
    weights: np.ndarray,
    xs: np.ndarray,
    stimuli: np.ndarray,
    alphas: np.ndarray,
    sigmas: np.ndarray,
    cols: int,
    cutoff: float,
) -> None:
    """Run one winner-search-and-update step per stimulus, in place.

    ``cutoff <= 0`` updates every node; otherwise nodes farther than
    ``cutoff * sigma`` lattice units from the winner are left untouched.
    """
    n_nodes, dim = weights.shape
    node_rows = (np.arange(n_nodes) // cols).astype(np.float64)
    node_cols = (np.arange(n_nodes) % cols).astype(np.float64)
    for t in range(stimuli.shape[0]):
        x = xs[stimuli[t]]
        diff = x - weights
        sq = diff * diff
        d2 = sq[:, 0].copy()
        for k in range(1, dim):
            d2 += sq[:, k]
        c = int(np.argmin(d2))
        dr = node_rows - node_rows[c]
        dc = node_cols - node_cols[c]
        lat2 = dr * dr + dc * dc
        sigma = sigmas[t]
        h = alphas[t] * np.exp(-lat2 / (2.0 * sigma * sigma))
        if cutoff > 0.0:
            lim = cutoff * sigma
            h = np.where(lat2 <= lim * lim, h, 0.0)
        weights += h[:, None] * diff
