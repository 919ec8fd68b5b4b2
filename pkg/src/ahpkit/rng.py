"""Counter-based SplitMix64 streams for reproducible Monte Carlo sampling.

Every sample index owns a derived substream keyed by (seed, order, index),
and draw t of a substream is a pure function of (base_state, t). Because no
sequential state is shared between samples, results are bit-identical for
any chunking or worker count.

Three interchangeable implementations exist: the pure-Python reference
below, the vectorized numpy version here, and the compiled kernels in
``ahpkit.kernels.numba_backend``; tests pin them against each other.
"""

from __future__ import annotations

import numpy as np

MASK64 = (1 << 64) - 1
GOLDEN = 0x9E3779B97F4A7C15
MIX_A = 0xBF58476D1CE4E5B9
MIX_B = 0x94D049BB133111EB


def mix64(z: int) -> int:
    """SplitMix64 finalizer on a python int (reference implementation)."""
    z &= MASK64
    z = ((z ^ (z >> 30)) * MIX_A) & MASK64
    z = ((z ^ (z >> 27)) * MIX_B) & MASK64
    return z ^ (z >> 31)


def substream_base(seed: int, order: int, index: int) -> int:
    """Base state of the substream for sample `index` at matrix order `order`."""
    s = mix64((seed + GOLDEN) & MASK64)
    s = mix64((s + GOLDEN * (order + 1)) & MASK64)
    return mix64((s + GOLDEN * (index + 1)) & MASK64)


def draw(base: int, t: int) -> int:
    """The t-th (0-based) 64-bit draw of a substream."""
    return mix64((base + GOLDEN * (t + 1)) & MASK64)


# ---------------------------------------------------------------------------
# vectorized (numpy uint64) versions; wraparound is intentional


_U30 = np.uint64(30)
_U27 = np.uint64(27)
_U31 = np.uint64(31)
_GOLDEN_U = np.uint64(GOLDEN)
_MIX_A_U = np.uint64(MIX_A)
_MIX_B_U = np.uint64(MIX_B)


def mix64_np(z: np.ndarray) -> np.ndarray:
    with np.errstate(over="ignore"):
        z = (z ^ (z >> _U30)) * _MIX_A_U
        z = (z ^ (z >> _U27)) * _MIX_B_U
        return z ^ (z >> _U31)


def substream_base_np(seed: int, order: int, indices: np.ndarray) -> np.ndarray:
    with np.errstate(over="ignore"):
        s = mix64_np(np.uint64((seed + GOLDEN) & MASK64))
        s = mix64_np(s + _GOLDEN_U * np.uint64(order + 1))
        return mix64_np(s + _GOLDEN_U * (indices.astype(np.uint64) + np.uint64(1)))


def draws_np(bases: np.ndarray, count: int) -> np.ndarray:
    """Draw matrix of shape (len(bases), count); column t is draw t."""
    t = np.arange(1, count + 1, dtype=np.uint64)
    with np.errstate(over="ignore"):
        return mix64_np(bases[:, None] + _GOLDEN_U * t[None, :])
