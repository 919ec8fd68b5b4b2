"""Monte Carlo estimation of the random index (expected CI of random matrices).

Entry distribution is uniform over the active scale's admissible values
(default: the classic 17-value 1-9 scale). Given (seed, order, samples,
scale) the estimate is fully deterministic: every sample index owns its own
counter-based substream, so neither worker count nor chunking can change
the result.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import ComparisonMatrix
from .errors import DomainError
from .kernels import get_backend
from .scales import SAATY_SCALE, JudgmentScale

DEFAULT_SAMPLES = 50_000


@dataclass(frozen=True)
class RiEstimate:
    order: int
    samples: int
    mean_ci: float
    std_error: float
    seed: int


def random_reciprocal_matrix(
    n: int,
    scale: JudgmentScale = SAATY_SCALE,
    seed: int = 0,
    index: int = 0,
    backend: str | None = None,
) -> ComparisonMatrix:
    """Sample `index` of the random-matrix stream for (seed, n, scale).

    Upper-triangle entries are drawn uniformly from the scale; the lower
    triangle is filled with reciprocals.
    """
    if n < 1:
        raise DomainError("order must be >= 1")
    entries = get_backend(backend).reciprocal_matrix(seed, n, index, scale.float_values())
    labels = tuple(f"C{i}" for i in range(1, n + 1))
    return ComparisonMatrix(labels, entries)


def ci_samples(
    n: int,
    samples: int,
    seed: int,
    scale: JudgmentScale = SAATY_SCALE,
    workers: int = 1,
    backend: str | None = None,
) -> np.ndarray:
    """Per-sample consistency indices, in sample-index order."""
    if n < 1:
        raise DomainError("order must be >= 1")
    if samples < 1:
        raise DomainError("need at least one sample")
    kernel = get_backend(backend)
    return kernel.ci_samples(seed, n, samples, scale.float_values(), workers=workers)


def estimate_random_index(
    n: int,
    samples: int = DEFAULT_SAMPLES,
    seed: int = 0,
    scale: JudgmentScale = SAATY_SCALE,
    workers: int = 1,
    backend: str | None = None,
) -> RiEstimate:
    """Mean CI over `samples` random matrices of order n, with its standard error."""
    cis = ci_samples(n, samples, seed, scale, workers, backend)
    se = float(np.std(cis, ddof=1) / math.sqrt(samples)) if samples > 1 else 0.0
    return RiEstimate(
        order=n, samples=samples, mean_ci=float(np.mean(cis)), std_error=se, seed=seed
    )


def ri_table(
    max_n: int,
    samples: int = DEFAULT_SAMPLES,
    seed: int = 0,
    scale: JudgmentScale = SAATY_SCALE,
    workers: int = 1,
    backend: str | None = None,
) -> list[RiEstimate]:
    """Estimates for every order 1..max_n."""
    if not 1 <= max_n <= 15:
        raise DomainError("max_n must be between 1 and 15")
    return [
        estimate_random_index(n, samples, seed, scale, workers, backend)
        for n in range(1, max_n + 1)
    ]
