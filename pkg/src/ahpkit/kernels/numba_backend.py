"""Numba kernel backend: @njit hot loops, parallel across sample indices.

Matrix entries come from the same counter-based SplitMix64 substreams as
the numpy backend (one substream per sample index), so the two backends
generate bit-identical matrices and `workers` never changes results - it
only sets how many threads the prange uses.
"""

from __future__ import annotations

import numpy as np
import numba
from numba import njit, prange

from ..tolerances import TOL

_U1 = np.uint64(1)
_U27 = np.uint64(27)
_U30 = np.uint64(30)
_U31 = np.uint64(31)
_GOLDEN = np.uint64(0x9E3779B97F4A7C15)
_MIX_A = np.uint64(0xBF58476D1CE4E5B9)
_MIX_B = np.uint64(0x94D049BB133111EB)


@njit(cache=True)
def _mix64(z):
    z = (z ^ (z >> _U30)) * _MIX_A
    z = (z ^ (z >> _U27)) * _MIX_B
    return z ^ (z >> _U31)


@njit(cache=True)
def _substream_base(seed, order, index):
    s = _mix64(seed + _GOLDEN)
    s = _mix64(s + _GOLDEN * (order + _U1))
    return _mix64(s + _GOLDEN * (index + _U1))


@njit(cache=True)
def _fill_matrix(a, seed, order, index, values):
    base = _substream_base(seed, order, index)
    k = np.uint64(len(values))
    t = _U1
    for i in range(order):
        a[i, i] = 1.0
        for j in range(i + 1, order):
            v = values[int(_mix64(base + _GOLDEN * t) % k)]
            a[i, j] = v
            a[j, i] = 1.0 / v
            t += _U1


@njit(cache=True)
def _power_lambda(a, w, y, lam_tol, res_tol, max_iter):
    n = a.shape[0]
    for i in range(n):
        w[i] = 1.0 / n
    lam = 0.0
    lam_prev = 0.0
    for _ in range(max_iter):
        lam = 0.0
        for i in range(n):
            acc = 0.0
            for j in range(n):
                acc += a[i, j] * w[j]
            y[i] = acc
            lam += acc
        res = 0.0
        for i in range(n):
            wn = y[i] / lam
            res += abs(wn - w[i])
            w[i] = wn
        if abs(lam - lam_prev) < lam_tol and res <= res_tol:
            return lam
        lam_prev = lam
    return lam  # cap hit; close enough for Monte Carlo aggregation


@njit(cache=True, parallel=True)
def _ci_samples(seed, order, count, values, lam_tol, res_tol, max_iter):
    out = np.zeros(count, dtype=np.float64)
    for s in prange(count):
        a = np.empty((order, order), dtype=np.float64)
        w = np.empty(order, dtype=np.float64)
        y = np.empty(order, dtype=np.float64)
        _fill_matrix(a, seed, np.uint64(order), np.uint64(s), values)
        lam = _power_lambda(a, w, y, lam_tol, res_tol, max_iter)
        out[s] = (lam - order) / (order - 1)
    return out


@njit(cache=True)
def _power_full(a, w, lam_tol, res_tol, max_iter):
    n = a.shape[0]
    y = np.empty(n, dtype=np.float64)
    for i in range(n):
        w[i] = 1.0 / n
    lam = 0.0
    lam_prev = 0.0
    res = 0.0
    for it in range(1, max_iter + 1):
        lam = 0.0
        for i in range(n):
            acc = 0.0
            for j in range(n):
                acc += a[i, j] * w[j]
            y[i] = acc
            lam += acc
        res = 0.0
        for i in range(n):
            wn = y[i] / lam
            res += abs(wn - w[i])
            w[i] = wn
        if abs(lam - lam_prev) < lam_tol and res <= res_tol:
            return lam, res, it
        lam_prev = lam
    return lam, res, -max_iter


def reciprocal_matrix(seed: int, order: int, index: int, values: np.ndarray) -> np.ndarray:
    """Random reciprocal matrix for one sample index (uniform over `values`)."""
    a = np.empty((order, order), dtype=np.float64)
    _fill_matrix(
        a,
        np.uint64(seed & 0xFFFFFFFFFFFFFFFF),
        np.uint64(order),
        np.uint64(index),
        np.asarray(values, dtype=np.float64),
    )
    return a


def power_iteration(
    a: np.ndarray,
    lam_tol: float = TOL.power_lambda_abs,
    res_tol: float = TOL.power_residual_rel,
    max_iter: int = TOL.power_max_iter,
):
    """Compiled power iteration; same contract as the numpy backend's."""
    from ..errors import ConvergenceError

    w = np.empty(a.shape[0], dtype=np.float64)
    lam, res, it = _power_full(np.asarray(a, dtype=np.float64), w, lam_tol, res_tol, max_iter)
    if it < 0:
        raise ConvergenceError(res, -it)
    return lam, w, res, it


def ci_samples(
    seed: int,
    order: int,
    count: int,
    values: np.ndarray,
    lam_tol: float = TOL.power_lambda_abs,
    res_tol: float = TOL.power_residual_rel,
    max_iter: int = TOL.power_max_iter,
    workers: int = 1,
) -> np.ndarray:
    """Consistency index of `count` random reciprocal matrices of size `order`."""
    if order <= 2 or count == 0:
        return np.zeros(count, dtype=np.float64)
    requested = max(1, min(workers, numba.config.NUMBA_NUM_THREADS))
    previous = numba.get_num_threads()
    numba.set_num_threads(requested)
    try:
        return _ci_samples(
            np.uint64(seed & 0xFFFFFFFFFFFFFFFF),
            order,
            count,
            np.asarray(values, dtype=np.float64),
            lam_tol,
            res_tol,
            max_iter,
        )
    finally:
        numba.set_num_threads(previous)
