"""Reciprocal comparison matrices, weight derivation, and consistency.

The dominant-eigenpair routine here is the plain numpy implementation used
for single matrices (a 12x12 solve is microseconds, so it never pays the
JIT warmup). The Monte Carlo batch kernels live in ``ahpkit.kernels``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Mapping, Sequence

import numpy as np

from .errors import (
    ConvergenceError,
    DomainError,
    IncompleteJudgmentsError,
    SchemaError,
    UnsupportedOrderError,
)
from .tolerances import TOL

# Saaty-Tran random index by matrix order, estimated from 50,000 random
# reciprocal matrices per order. ahpkit.simulate reproduces these values.
RANDOM_INDEX = {
    1: 0.0, 2: 0.0, 3: 0.52, 4: 0.89, 5: 1.11, 6: 1.25, 7: 1.35, 8: 1.40,
    9: 1.45, 10: 1.49, 11: 1.52, 12: 1.54, 13: 1.56, 14: 1.58, 15: 1.59,
}
MAX_TABULATED_ORDER = max(RANDOM_INDEX)


def random_index_lookup(n: int) -> float:
    """Tabulated random index for matrix order n (1..15)."""
    if n not in RANDOM_INDEX:
        raise UnsupportedOrderError(n, MAX_TABULATED_ORDER)
    return RANDOM_INDEX[n]


def _check_labels(labels: Sequence[str]) -> tuple[str, ...]:
    labels = tuple(str(x) for x in labels)
    if not labels:
        raise DomainError("need at least one label")
    if len(set(labels)) != len(labels):
        raise DomainError("labels must be unique")
    return labels


def _frozen(a: np.ndarray) -> np.ndarray:
    a = np.array(a, dtype=np.float64)
    a.setflags(write=False)
    return a


@dataclass(frozen=True)
class ComparisonMatrix:
    """Positive pairwise judgment matrix over labeled items.

    ``reciprocal`` is True for matrices satisfying m_ij * m_ji = 1; the
    directional-mean aggregation policy produces matrices where that does
    not hold, flagged False so downstream code cannot assume it.
    """

    labels: tuple[str, ...]
    entries: np.ndarray
    reciprocal: bool = True

    def __post_init__(self):
        labels = _check_labels(self.labels)
        a = np.array(self.entries, dtype=np.float64)
        n = len(labels)
        if a.shape != (n, n):
            raise DomainError(f"entries must be {n}x{n}, got {a.shape}")
        if not np.all(np.isfinite(a)) or np.any(a <= 0):
            raise DomainError("entries must be strictly positive and finite")
        if not np.all(np.diag(a) == 1.0):
            raise DomainError("diagonal entries must equal 1")
        if self.reciprocal:
            dev = np.abs(a * a.T - 1.0)
            if dev.max() > TOL.reciprocity_rel:
                i, j = np.unravel_index(np.argmax(dev), dev.shape)
                raise DomainError(
                    f"reciprocity violated at ({labels[i]}, {labels[j]}): "
                    f"{a[i, j]} * {a[j, i]} = {a[i, j] * a[j, i]}"
                )
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "entries", _frozen(a))

    @property
    def order(self) -> int:
        return len(self.labels)

    def index_of(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise SchemaError(f"unknown label {label!r}")


def _reciprocal_fill(n: int, upper: Mapping[tuple[int, int], float]) -> np.ndarray:
    a = np.ones((n, n), dtype=np.float64)
    for (i, j), v in upper.items():
        a[i, j] = v
        a[j, i] = 1.0 / v
    return a


def build_matrix(
    labels: Sequence[str],
    upper_judgments: Mapping[tuple[str, str], object],
) -> ComparisonMatrix:
    """Build a reciprocal matrix from upper-triangle judgments keyed by label pair.

    Every (i, j) pair with i before j in `labels` must be present; the lower
    triangle is filled with reciprocals and the diagonal with ones.
    """
    labels = _check_labels(labels)
    pos = {name: k for k, name in enumerate(labels)}
    upper: dict[tuple[int, int], float] = {}
    for (a, b), value in upper_judgments.items():
        if a not in pos or b not in pos:
            raise SchemaError(f"judgment ({a!r}, {b!r}) uses unknown labels")
        i, j = pos[a], pos[b]
        if i >= j:
            raise DomainError(f"judgment ({a!r}, {b!r}) is not an upper-triangle pair")
        v = float(value)
        if not math.isfinite(v) or v <= 0:
            raise DomainError(f"judgment ({a!r}, {b!r}) must be positive, got {value!r}")
        upper[(i, j)] = v
    for i, j in combinations(range(len(labels)), 2):
        if (i, j) not in upper:
            raise IncompleteJudgmentsError((labels[i], labels[j]))
    return ComparisonMatrix(labels, _reciprocal_fill(len(labels), upper))


def ratio_matrix(labels: Sequence[str], weights: Sequence[float]) -> ComparisonMatrix:
    """The perfectly consistent matrix m_ij = w_i / w_j of a positive vector."""
    labels = _check_labels(labels)
    w = np.asarray(weights, dtype=np.float64)
    if w.shape != (len(labels),) or np.any(w <= 0) or not np.all(np.isfinite(w)):
        raise DomainError("weights must be positive finite, one per label")
    upper = {
        (i, j): w[i] / w[j] for i, j in combinations(range(len(labels)), 2)
    }
    return ComparisonMatrix(labels, _reciprocal_fill(len(labels), upper))


@dataclass(frozen=True)
class WeightVector:
    """Normalized priority weights with a derivation-method tag."""

    labels: tuple[str, ...]
    weights: np.ndarray
    method: str  # "eigenvector" | "rowsum" | "synthesis"

    def __post_init__(self):
        labels = _check_labels(self.labels)
        w = np.array(self.weights, dtype=np.float64)
        if w.shape != (len(labels),):
            raise DomainError("need exactly one weight per label")
        if np.any(w < 0) or not np.all(np.isfinite(w)):
            raise DomainError("weights must be nonnegative and finite")
        if abs(w.sum() - 1.0) > TOL.weight_sum_abs:
            raise DomainError(f"weights must sum to 1, got {w.sum()!r}")
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "weights", _frozen(w))

    @classmethod
    def from_raw(cls, labels, raw, method) -> "WeightVector":
        """Normalize an unnormalized nonnegative vector to weights."""
        raw = np.asarray(raw, dtype=np.float64)
        total = raw.sum()
        if not np.isfinite(total) or total <= 0:
            raise DomainError("raw weights must have a positive finite sum")
        return cls(tuple(labels), raw / total, method)

    def as_dict(self) -> dict[str, float]:
        return {label: float(w) for label, w in zip(self.labels, self.weights)}


@dataclass(frozen=True)
class ConsistencyReport:
    lambda_max: float
    ci: float
    ri: float
    cr: float
    consistent: bool
    order: int


@dataclass(frozen=True)
class RankingRow:
    rank: int
    label: str
    relative_importance: float


@dataclass(frozen=True)
class RankingTable:
    rows: tuple[RankingRow, ...]

    def __post_init__(self):
        rows = tuple(self.rows)
        if not rows:
            raise DomainError("ranking needs at least one row")
        if [r.rank for r in rows] != list(range(1, len(rows) + 1)):
            raise DomainError("ranks must be consecutive from 1")
        imps = [r.relative_importance for r in rows]
        if any(b > a for a, b in zip(imps, imps[1:])):
            raise DomainError("rows must be sorted by importance, descending")
        if abs(sum(imps) - 1.0) > 1e-9:
            raise DomainError(f"importances must sum to 1, got {sum(imps)!r}")
        object.__setattr__(self, "rows", rows)

    def labels_in_rank_order(self) -> tuple[str, ...]:
        return tuple(r.label for r in self.rows)


# ---------------------------------------------------------------------------
# weight derivation


def power_iteration_numpy(
    a: np.ndarray,
    lam_tol: float = TOL.power_lambda_abs,
    res_tol: float = TOL.power_residual_rel,
    max_iter: int = TOL.power_max_iter,
) -> tuple[float, np.ndarray, float, int]:
    """Dominant eigenpair of a positive matrix by power iteration.

    Starts from the uniform vector, renormalizes in L1 each step, and
    estimates lambda as ||Mw||_1. Since Mw = lambda * w_next, the relative
    residual ||Mw - lambda w||_1 / lambda equals ||w_next - w||_1, which is
    what the convergence test uses.
    """
    n = a.shape[0]
    w = np.full(n, 1.0 / n)
    lam_prev = 0.0
    res = math.inf
    for it in range(1, max_iter + 1):
        y = a @ w
        lam = float(y.sum())
        wn = y / lam
        res = float(np.abs(wn - w).sum())
        w = wn
        if abs(lam - lam_prev) < lam_tol and res <= res_tol:
            return lam, w, res, it
        lam_prev = lam
    raise ConvergenceError(res, max_iter)


def principal_eigenpair(m: ComparisonMatrix) -> tuple[float, WeightVector]:
    """Dominant eigenvalue and L1-normalized positive eigenvector of m."""
    lam, w, _, _ = power_iteration_numpy(m.entries)
    return lam, WeightVector.from_raw(m.labels, w, "eigenvector")


def rowsum_weights(m: ComparisonMatrix) -> WeightVector:
    """Row totals divided by the grand total (the survey study's derivation)."""
    sums = m.entries.sum(axis=1)
    return WeightVector(m.labels, sums / sums.sum(), "rowsum")


def derive_weights(m: ComparisonMatrix, method: str) -> WeightVector:
    if method == "rowsum":
        return rowsum_weights(m)
    if method == "eigenvector":
        return principal_eigenpair(m)[1]
    raise DomainError(f"unknown weight method {method!r}")


def consistency_report(m: ComparisonMatrix, ri: float | None = None) -> ConsistencyReport:
    """lambda_max, CI, RI and CR for a matrix, with the 0.1 verdict.

    Orders 1 and 2 are structurally consistent, so CI and CR are defined
    as 0 there (RI is 0 and the ratio would otherwise be 0/0).
    """
    n = m.order
    lam, _, _, _ = power_iteration_numpy(m.entries)
    if ri is None:
        ri = random_index_lookup(n)
    if ri < 0:
        raise DomainError("random index must be nonnegative")
    ci = 0.0 if n <= 2 else (lam - n) / (n - 1)
    cr = ci / ri if ri > 0 else 0.0
    return ConsistencyReport(
        lambda_max=lam, ci=ci, ri=ri, cr=cr, consistent=cr < TOL.cr_threshold, order=n
    )


def is_cardinally_consistent(m: ComparisonMatrix, rel_tol: float = TOL.cardinal_rel) -> bool:
    """True iff m_ij == m_ik * m_kj for all triples, within rel_tol * m_ij."""
    a = m.entries
    # products[i, k, j] = a[i, k] * a[k, j]
    products = a[:, :, None] * a[None, :, :]
    target = a[:, None, :]
    return bool(np.all(np.abs(target - products) <= rel_tol * target))


def most_inconsistent_triad(m: ComparisonMatrix) -> tuple[int, int, int, float]:
    """The index triple maximizing |log(m_ij) - log(m_ik * m_kj)|.

    By reciprocity the deviation equals |log(m_ij * m_jk * m_ki)| and does
    not depend on the orientation of the triple, so unordered triples are
    scanned in lexicographic order and ties keep the first.
    """
    if m.order < 3:
        raise DomainError("need order >= 3 to have a triad")
    a = m.entries
    best = (0, 1, 2)
    best_dev = -1.0
    for i, j, k in combinations(range(m.order), 3):
        dev = abs(math.log(a[i, j] * a[j, k] * a[k, i]))
        if dev > best_dev:
            best, best_dev = (i, j, k), dev
    return best[0], best[1], best[2], best_dev


def rank_criteria(w: WeightVector) -> RankingTable:
    """Descending ranking of the weights; ties keep original label order."""
    order = np.argsort(-w.weights, kind="stable")
    rows = tuple(
        RankingRow(rank, w.labels[idx], float(w.weights[idx]))
        for rank, idx in enumerate(order, start=1)
    )
    return RankingTable(rows)


def synthesize_hierarchy(
    criteria_weights: WeightVector,
    per_criterion_alternative_weights: Iterable[WeightVector],
) -> WeightVector:
    """Combine criterion weights with per-criterion alternative weights.

    global(a) = sum_c criteria_weight(c) * local_weight(c, a). Local vectors
    must all cover the same alternative set; order may differ and is
    aligned to the first vector's.
    """
    locals_ = list(per_criterion_alternative_weights)
    if len(locals_) != len(criteria_weights.labels):
        raise SchemaError(
            f"need one alternative vector per criterion: "
            f"{len(criteria_weights.labels)} criteria, {len(locals_)} vectors"
        )
    alts = locals_[0].labels
    combined = np.zeros(len(alts))
    for cw, local in zip(criteria_weights.weights, locals_):
        if set(local.labels) != set(alts):
            raise SchemaError(
                f"alternative labels {local.labels} do not match {alts}"
            )
        aligned = local.weights[[local.labels.index(a) for a in alts]]
        combined += cw * aligned
    return WeightVector.from_raw(alts, combined, "synthesis")
