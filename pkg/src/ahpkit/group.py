"""Aggregation of many respondents and partitioning into metadata groups.

Judgments are kept as exact rationals; cell means are computed in rational
arithmetic and only converted to float when the matrix is materialized.
Respondents with missing pairs are excluded from per-respondent weights
(with a reason) but their answered pairs still contribute to cell means.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from types import MappingProxyType
from typing import Callable, Mapping, Sequence

import math

import numpy as np

from .core import ComparisonMatrix, WeightVector, build_matrix, derive_weights
from .errors import CoverageError, DomainError, SchemaError
from .scales import STUDY_SCALE, JudgmentScale

COMMITTEE_VALUES = ("yes", "no", "blank")
RANK_VALUES = ("full", "associate", "assistant", "visiting_assistant", "lecturer", "blank")
GROUP_VALUES = ("1", "2", "3", "blank")

AGGREGATION_POLICIES = ("triangle_reciprocal", "mean_both_directions", "geometric")


@dataclass(frozen=True)
class RespondentRecord:
    """One survey response: metadata plus upper-triangle judgments.

    Judgment keys are (i, j) criteria-index pairs with i < j in the
    dataset's canonical criteria order.
    """

    id: str
    committee_service: str = "blank"
    rank: str = "blank"
    program_group: str = "blank"
    judgments: Mapping[tuple[int, int], Fraction] = field(default_factory=dict)

    def __post_init__(self):
        if self.committee_service not in COMMITTEE_VALUES:
            raise DomainError(f"bad committee_service {self.committee_service!r}")
        if self.rank not in RANK_VALUES:
            raise DomainError(f"bad rank {self.rank!r}")
        if self.program_group not in GROUP_VALUES:
            raise DomainError(f"bad program_group {self.program_group!r}")
        judgments = {}
        for (i, j), v in self.judgments.items():
            if not (0 <= i < j):
                raise DomainError(f"judgment key ({i}, {j}) must satisfy 0 <= i < j")
            judgments[(i, j)] = Fraction(v)
        object.__setattr__(self, "judgments", MappingProxyType(judgments))


@dataclass(frozen=True)
class StudyDataset:
    criteria: tuple[str, ...]
    respondents: tuple[RespondentRecord, ...]
    scale: JudgmentScale = STUDY_SCALE

    def __post_init__(self):
        criteria = tuple(self.criteria)
        if len(set(criteria)) != len(criteria) or not criteria:
            raise DomainError("criteria must be nonempty and unique")
        seen = set()
        for r in self.respondents:
            if r.id in seen:
                raise DomainError(f"duplicate respondent id {r.id!r}")
            seen.add(r.id)
            for (i, j), v in r.judgments.items():
                if j >= len(criteria):
                    raise DomainError(
                        f"respondent {r.id!r}: judgment key ({i}, {j}) out of range"
                    )
                if v not in self.scale:
                    raise DomainError(
                        f"respondent {r.id!r}: value {v} for "
                        f"({criteria[i]}, {criteria[j]}) is not on the scale"
                    )
        object.__setattr__(self, "criteria", criteria)
        object.__setattr__(self, "respondents", tuple(self.respondents))

    def pairs(self) -> list[tuple[int, int]]:
        return list(combinations(range(len(self.criteria)), 2))


def respondent_matrix(ds: StudyDataset, record: RespondentRecord) -> ComparisonMatrix:
    """The complete judgment matrix of one respondent."""
    upper = {
        (ds.criteria[i], ds.criteria[j]): v for (i, j), v in record.judgments.items()
    }
    return build_matrix(ds.criteria, upper)


def aggregate_mean(ds: StudyDataset, policy: str = "triangle_reciprocal") -> ComparisonMatrix:
    """Cell-wise aggregate of all respondents' judgments.

    triangle_reciprocal (default): arithmetic mean of each upper-triangle
    cell over the respondents who answered it, lower triangle filled with
    reciprocals of the means. mean_both_directions: each direction averaged
    independently (mean of v above, mean of 1/v below), which generally
    breaks reciprocity. geometric: geometric mean, reciprocal-filled.
    """
    if policy not in AGGREGATION_POLICIES:
        raise DomainError(f"unknown policy {policy!r} (choose from {AGGREGATION_POLICIES})")
    n = len(ds.criteria)
    a = np.ones((n, n), dtype=np.float64)
    for i, j in ds.pairs():
        answers = [r.judgments[(i, j)] for r in ds.respondents if (i, j) in r.judgments]
        if not answers:
            raise CoverageError((ds.criteria[i], ds.criteria[j]))
        if policy == "geometric":
            log_mean = sum(math.log(float(v)) for v in answers) / len(answers)
            a[i, j] = math.exp(log_mean)
            a[j, i] = 1.0 / a[i, j]
        elif policy == "triangle_reciprocal":
            a[i, j] = float(sum(answers) / len(answers))
            a[j, i] = 1.0 / a[i, j]
        else:  # mean_both_directions
            a[i, j] = float(sum(answers) / len(answers))
            a[j, i] = float(sum(1 / v for v in answers) / len(answers))
    return ComparisonMatrix(ds.criteria, a, reciprocal=policy != "mean_both_directions")


@dataclass(frozen=True)
class WeightRecord:
    id: str
    committee_service: str
    rank: str
    program_group: str
    weights: WeightVector


@dataclass(frozen=True)
class SkippedRespondent:
    id: str
    reason: str


@dataclass(frozen=True)
class PerRespondentWeights:
    records: tuple[WeightRecord, ...]
    skipped: tuple[SkippedRespondent, ...]


def per_respondent_weights(ds: StudyDataset, method: str = "rowsum") -> PerRespondentWeights:
    """Run the weight derivation on each complete respondent individually.

    Incomplete respondents are skipped, not fatal; the skip report names
    the missing pairs. Output order equals input order.
    """
    records: list[WeightRecord] = []
    skipped: list[SkippedRespondent] = []
    all_pairs = ds.pairs()
    for r in ds.respondents:
        missing = [p for p in all_pairs if p not in r.judgments]
        if missing:
            shown = ", ".join(
                f"({ds.criteria[i]}, {ds.criteria[j]})" for i, j in missing[:3]
            )
            more = "" if len(missing) <= 3 else f" and {len(missing) - 3} more"
            skipped.append(
                SkippedRespondent(r.id, f"missing {len(missing)} pairs: {shown}{more}")
            )
            continue
        weights = derive_weights(respondent_matrix(ds, r), method)
        records.append(
            WeightRecord(r.id, r.committee_service, r.rank, r.program_group, weights)
        )
    return PerRespondentWeights(tuple(records), tuple(skipped))


PARTITION_KEYS = {
    "committee_service": (lambda rec: rec.committee_service, COMMITTEE_VALUES),
    "rank": (lambda rec: rec.rank, RANK_VALUES),
    "program_group": (lambda rec: rec.program_group, GROUP_VALUES),
}


def partition(
    records: Sequence[WeightRecord],
    by: str | Mapping[str, Callable[[WeightRecord], bool]],
) -> dict[str, dict[str, np.ndarray]]:
    """Split weight records into named groups of per-criterion samples.

    `by` is a metadata key (committee_service, rank, program_group) or a
    mapping of group name -> predicate. Groups must be disjoint and cover
    all records; blanks form their own group. The result maps group name
    -> criterion -> vector of that group's weights (input order preserved).
    Only nonempty groups are returned.
    """
    if isinstance(by, str):
        if by not in PARTITION_KEYS:
            raise DomainError(f"unknown partition key {by!r} (choose from {sorted(PARTITION_KEYS)})")
        key, group_order = PARTITION_KEYS[by]
        assignments = [(key(rec), rec) for rec in records]
    else:
        group_order = tuple(by)
        assignments = []
        for rec in records:
            matches = [name for name, pred in by.items() if pred(rec)]
            if len(matches) != 1:
                raise SchemaError(
                    f"record {rec.id!r} matches {len(matches)} groups; "
                    "custom partitions must be disjoint and covering"
                )
            assignments.append((matches[0], rec))

    grouped: dict[str, list[WeightRecord]] = {}
    for name, rec in assignments:
        grouped.setdefault(name, []).append(rec)

    result: dict[str, dict[str, np.ndarray]] = {}
    for name in group_order:
        members = grouped.get(name)
        if not members:
            continue
        criteria = members[0].weights.labels
        result[name] = {
            crit: np.array([float(m.weights.weights[k]) for m in members])
            for k, crit in enumerate(criteria)
        }
    return result


def group_sizes(groups: dict[str, dict[str, np.ndarray]]) -> dict[str, int]:
    return {
        name: len(next(iter(samples.values()))) if samples else 0
        for name, samples in groups.items()
    }
