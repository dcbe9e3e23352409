# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled training hot path. Mirrors netsom._core_py operation for
operation: same accumulation order, same update expression."""

from libc.math cimport exp, sqrt

import numpy as np

NAME = "compiled"


def bmu_batch(double[:, ::1] weights, double[:, ::1] xs):
    """Best matching unit for each row of ``xs``; ties break to the lowest
    node index. Returns (int64 indices, float64 distances)."""
    cdef Py_ssize_t n_nodes = weights.shape[0]
    cdef Py_ssize_t dim = weights.shape[1]
    cdef Py_ssize_t n_inputs = xs.shape[0]
    idx_arr = np.empty(n_inputs, dtype=np.int64)
    dist_arr = np.empty(n_inputs, dtype=np.float64)
    cdef long long[::1] idx = idx_arr
    cdef double[::1] dist = dist_arr
    cdef Py_ssize_t i, j, k, best
    cdef double acc, d, best_d2
    for j in range(n_inputs):
        best = 0
        best_d2 = 0.0
        for i in range(n_nodes):
            acc = 0.0
            for k in range(dim):
                d = weights[i, k] - xs[j, k]
                acc += d * d
            if i == 0 or acc < best_d2:
                best_d2 = acc
                best = i
        idx[j] = best
        dist[j] = sqrt(best_d2)
    return idx_arr, dist_arr


def run_steps(double[:, ::1] weights, double[:, ::1] xs,
              long long[::1] stimuli, double[::1] alphas,
              double[::1] sigmas, Py_ssize_t cols, double cutoff):
    """Run one winner-search-and-update step per stimulus, in place.

    ``cutoff <= 0`` updates every node; otherwise nodes farther than
    ``cutoff * sigma`` lattice units from the winner are left untouched.
    """
    cdef Py_ssize_t n_nodes = weights.shape[0]
    cdef Py_ssize_t dim = weights.shape[1]
    cdef Py_ssize_t n_steps = stimuli.shape[0]
    cdef Py_ssize_t t, i, k, c, c_row, c_col
    cdef double acc, d, best_d2, sigma, alpha, h, lat2, dr, dc, lim
    cdef const double* x
    for t in range(n_steps):
        x = &xs[stimuli[t], 0]
        c = 0
        best_d2 = 0.0
        for i in range(n_nodes):
            acc = 0.0
            for k in range(dim):
                d = weights[i, k] - x[k]
                acc += d * d
            if i == 0 or acc < best_d2:
                best_d2 = acc
                c = i
        alpha = alphas[t]
        sigma = sigmas[t]
        lim = cutoff * sigma
        c_row = c // cols
        c_col = c % cols
        for i in range(n_nodes):
            dr = <double> (i // cols - c_row)
            dc = <double> (i % cols - c_col)
            lat2 = dr * dr + dc * dc
            if cutoff > 0.0 and lat2 > lim * lim:
                continue
            h = alpha * exp(-lat2 / (2.0 * sigma * sigma))
            for k in range(dim):
                weights[i, k] += h * (x[k] - weights[i, k])
