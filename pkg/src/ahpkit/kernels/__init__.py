"""Backend selection for the Monte Carlo hot kernels.

Two interchangeable implementations exist:

* ``numba`` - @njit-compiled loops, parallel across sample indices
* ``numpy`` - vectorized batched fallback, no compilation step

The active backend is chosen by the ``AHP_BACKEND`` environment variable
("numba" or "numpy"); unset, numba is used when importable. Both backends
generate bit-identical matrices from the same seed and agree on estimates
to floating-point roundoff; ``benchmarks/bench_backends.py`` compares their
throughput.
"""

from __future__ import annotations

import importlib
import importlib.util
import os

from ..errors import DomainError

BACKENDS = ("numba", "numpy")
ENV_VAR = "AHP_BACKEND"


def backend_name(override: str | None = None) -> str:
    """Resolve the backend to use, honoring the AHP_BACKEND env flag."""
    name = override or os.environ.get(ENV_VAR, "").strip().lower()
    if not name:
        name = "numba" if importlib.util.find_spec("numba") else "numpy"
    if name not in BACKENDS:
        raise DomainError(
            f"unknown kernel backend {name!r} (choose from {BACKENDS})"
        )
    return name


def get_backend(name: str | None = None):
    """Import and return the kernel module for `name` (or the active one)."""
    return importlib.import_module(f".{backend_name(name)}_backend", __package__)
