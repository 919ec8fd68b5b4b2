"""Pure-numpy kernel backend: batched matrix generation and power iteration.

Samples are processed in fixed-size chunks of CHUNK indices; `workers` only
distributes whole chunks over threads, so chunk boundaries (and therefore
every floating-point result) are independent of the worker count. Each
sample's matvec is an independent per-row reduction, so removing converged
samples from the active batch never changes the remaining ones.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor

import numpy as np

from ..core import power_iteration_numpy as power_iteration  # noqa: F401  (re-export)
from ..rng import draws_np, substream_base_np
from ..tolerances import TOL

CHUNK = 4096


def reciprocal_matrix(seed: int, order: int, index: int, values: np.ndarray) -> np.ndarray:
    """Random reciprocal matrix for one sample index (uniform over `values`)."""
    return _matrix_batch(seed, order, np.array([index], dtype=np.uint64), values)[0]


def _matrix_batch(seed, order, indices, values):
    count = indices.size
    npairs = order * (order - 1) // 2
    out = np.ones((count, order, order), dtype=np.float64)
    if npairs == 0:
        return out
    bases = substream_base_np(seed, order, indices)
    draws = draws_np(bases, npairs)
    picks = (draws % np.uint64(len(values))).astype(np.int64)
    vals = values[picks]
    iu, ju = np.triu_indices(order, 1)  # row-major pair order, same as numba loops
    out[:, iu, ju] = vals
    out[:, ju, iu] = 1.0 / vals
    return out


def _lambda_batch(mats, lam_tol, res_tol, max_iter):
    """Per-sample dominant eigenvalues; each sample freezes at its own
    convergence step so results do not depend on batch composition."""
    count, n, _ = mats.shape
    w = np.full((count, n), 1.0 / n)
    lam_prev = np.zeros(count)
    lam_out = np.zeros(count)
    active = np.arange(count)
    for _ in range(max_iter):
        m = mats[active]
        y = np.einsum("bij,bj->bi", m, w[active])
        lam = y.sum(axis=1)
        wn = y / lam[:, None]
        res = np.abs(wn - w[active]).sum(axis=1)
        w[active] = wn
        done = (np.abs(lam - lam_prev[active]) < lam_tol) & (res <= res_tol)
        lam_out[active] = lam
        lam_prev[active] = lam
        active = active[~done]
        if active.size == 0:
            break
    return lam_out


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
    out = np.zeros(count, dtype=np.float64)
    if order <= 2 or count == 0:
        return out

    def run_chunk(lo):
        hi = min(lo + CHUNK, count)
        idx = np.arange(lo, hi, dtype=np.uint64)
        mats = _matrix_batch(seed, order, idx, values)
        lam = _lambda_batch(mats, lam_tol, res_tol, max_iter)
        out[lo:hi] = (lam - order) / (order - 1)

    starts = range(0, count, CHUNK)
    if workers <= 1:
        for lo in starts:
            run_chunk(lo)
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            list(pool.map(run_chunk, starts))
    return out
