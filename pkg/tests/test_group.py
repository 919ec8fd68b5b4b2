import math
from fractions import Fraction

import numpy as np
import pytest

from ahpkit.core import principal_eigenpair, rowsum_weights
from ahpkit.errors import CoverageError, DomainError, SchemaError
from ahpkit.group import (
    RespondentRecord,
    StudyDataset,
    aggregate_mean,
    group_sizes,
    partition,
    per_respondent_weights,
    respondent_matrix,
)

from conftest import make_respondent, small_dataset, uniform_judgments

ABC = ("A", "B", "C")


def two_respondent_dataset():
    return small_dataset(("A", "B"), [
        make_respondent("r1", {(0, 1): 2}),
        make_respondent("r2", {(0, 1): 3}),
    ])


class TestAggregateMean:
    def test_cell_mean_and_reciprocal(self):
        m = aggregate_mean(two_respondent_dataset())
        assert m.entries[0, 1] == 2.5
        assert m.entries[1, 0] == 0.4
        assert m.reciprocal

    def test_single_respondent_identity(self):
        ds = small_dataset(ABC, [
            make_respondent("solo", {(0, 1): 2, (0, 2): Fraction(1, 3), (1, 2): 1}),
        ])
        m = aggregate_mean(ds)
        assert np.array_equal(m.entries, respondent_matrix(ds, ds.respondents[0]).entries)

    def test_identical_respondents_equal_common_matrix(self):
        judg = {(0, 1): Fraction(1, 2), (0, 2): 3, (1, 2): 2}
        ds = small_dataset(ABC, [make_respondent(f"r{i}", judg) for i in range(5)])
        m = aggregate_mean(ds)
        assert np.array_equal(m.entries, respondent_matrix(ds, ds.respondents[0]).entries)

    def test_respondent_order_invariance(self):
        ds = two_respondent_dataset()
        flipped = small_dataset(("A", "B"), list(reversed(ds.respondents)))
        assert np.array_equal(aggregate_mean(ds).entries, aggregate_mean(flipped).entries)

    def test_mean_both_directions_breaks_reciprocity(self):
        m = aggregate_mean(two_respondent_dataset(), "mean_both_directions")
        assert m.entries[0, 1] == 2.5
        assert m.entries[1, 0] == pytest.approx(float(Fraction(5, 12)), abs=1e-15)
        assert not m.reciprocal

    def test_geometric_mean_policy(self):
        m = aggregate_mean(two_respondent_dataset(), "geometric")
        assert m.entries[0, 1] == pytest.approx(math.sqrt(6.0), abs=1e-12)

    def test_partial_answers_still_contribute(self):
        ds = small_dataset(ABC, [
            make_respondent("full", {(0, 1): 2, (0, 2): 1, (1, 2): 1}),
            make_respondent("partial", {(0, 1): 3}),
        ])
        m = aggregate_mean(ds)
        assert m.entries[0, 1] == 2.5  # mean of 2 and 3
        assert m.entries[0, 2] == 1.0  # only the complete respondent

    def test_uncovered_pair_raises(self):
        ds = small_dataset(ABC, [make_respondent("p", {(0, 1): 2})])
        with pytest.raises(CoverageError, match="'A' vs 'C'"):
            aggregate_mean(ds)

    def test_unknown_policy(self):
        with pytest.raises(DomainError):
            aggregate_mean(two_respondent_dataset(), "median")


class TestDatasetValidation:
    def test_rejects_duplicate_ids(self):
        with pytest.raises(DomainError, match="duplicate"):
            small_dataset(("A", "B"), [
                make_respondent("x", {(0, 1): 2}), make_respondent("x", {(0, 1): 3}),
            ])

    def test_rejects_off_scale_value(self):
        with pytest.raises(DomainError, match="not on the scale"):
            small_dataset(("A", "B"), [make_respondent("x", {(0, 1): 4})])

    def test_rejects_out_of_range_key(self):
        with pytest.raises(DomainError, match="out of range"):
            small_dataset(("A", "B"), [make_respondent("x", {(0, 5): 2})])

    def test_rejects_bad_metadata(self):
        with pytest.raises(DomainError):
            RespondentRecord("x", committee_service="maybe")
        with pytest.raises(DomainError):
            RespondentRecord("x", rank="emeritus")
        with pytest.raises(DomainError):
            RespondentRecord("x", program_group="4")


class TestPerRespondentWeights:
    def test_uniform_respondent(self):
        ds = small_dataset(tuple(f"C{i}" for i in range(12)),
                           [make_respondent("u", uniform_judgments(12))])
        out = per_respondent_weights(ds)
        assert out.records[0].weights.weights == pytest.approx([1 / 12] * 12, abs=1e-12)

    def test_ratio_respondent_recovers_weights(self):
        # judgments 2, 2, 1 form the ratio matrix of (1/2, 1/4, 1/4)
        ds = small_dataset(ABC, [make_respondent("r", {(0, 1): 2, (0, 2): 2, (1, 2): 1})])
        out = per_respondent_weights(ds, method="eigenvector")
        assert out.records[0].weights.weights == pytest.approx([0.5, 0.25, 0.25], abs=1e-9)

    def test_composition_matches_manual_pipeline(self):
        judgment_sets = [
            {(0, 1): 2, (0, 2): Fraction(1, 3), (1, 2): 1},
            {(0, 1): Fraction(1, 2), (0, 2): 3, (1, 2): 2},
            {(0, 1): 1, (0, 2): 1, (1, 2): Fraction(1, 2)},
        ]
        ds = small_dataset(ABC, [
            make_respondent(f"r{i}", j) for i, j in enumerate(judgment_sets)
        ])
        for method, derive in (("rowsum", rowsum_weights),
                               ("eigenvector", lambda m: principal_eigenpair(m)[1])):
            out = per_respondent_weights(ds, method)
            assert [r.id for r in out.records] == ["r0", "r1", "r2"]
            for rec, raw in zip(out.records, ds.respondents):
                expected = derive(respondent_matrix(ds, raw))
                assert np.array_equal(rec.weights.weights, expected.weights)

    def test_incomplete_respondents_skipped_with_reason(self):
        ds = small_dataset(ABC, [
            make_respondent("ok", {(0, 1): 2, (0, 2): 1, (1, 2): 1}),
            make_respondent("gap", {(0, 1): 2}),
        ])
        out = per_respondent_weights(ds)
        assert [r.id for r in out.records] == ["ok"]
        assert out.skipped[0].id == "gap"
        assert "missing 2 pairs" in out.skipped[0].reason
        assert "(A, C)" in out.skipped[0].reason


def weight_records(spec):
    """spec: list of (id, committee, rank, group) tuples -> WeightRecords."""
    ds = small_dataset(ABC, [
        make_respondent(rid, uniform_judgments(3), committee, rank, grp)
        for rid, committee, rank, grp in spec
    ])
    return per_respondent_weights(ds).records


class TestPartition:
    def test_counts_by_rank(self):
        records = weight_records([
            ("a", "yes", "full", "1"), ("b", "no", "full", "2"),
            ("c", "yes", "lecturer", "3"),
        ])
        groups = partition(records, "rank")
        assert group_sizes(groups) == {"full": 2, "lecturer": 1}

    def test_partition_covers_all_records(self):
        records = weight_records([
            ("a", "yes", "full", "1"), ("b", "no", "associate", "2"),
            ("c", "blank", "blank", "blank"), ("d", "yes", "assistant", "1"),
        ])
        for key in ("committee_service", "rank", "program_group"):
            groups = partition(records, key)
            assert sum(group_sizes(groups).values()) == len(records)

    def test_blanks_form_their_own_group(self):
        records = weight_records([("a", "blank", "full", "1"), ("b", "yes", "full", "1")])
        groups = partition(records, "committee_service")
        assert set(groups) == {"yes", "blank"}

    def test_group_vectors_follow_input_order(self):
        records = weight_records([
            ("a", "yes", "full", "1"), ("b", "yes", "full", "1"),
        ])
        groups = partition(records, "committee_service")
        assert groups["yes"]["A"].tolist() == [1 / 3, 1 / 3]

    def test_custom_predicates(self):
        records = weight_records([
            ("a", "yes", "full", "1"), ("b", "no", "associate", "2"),
            ("c", "no", "assistant", "3"),
        ])
        groups = partition(records, {
            "full": lambda r: r.rank == "full",
            "other": lambda r: r.rank != "full",
        })
        assert group_sizes(groups) == {"full": 1, "other": 2}

    def test_custom_predicates_must_be_disjoint_and_cover(self):
        records = weight_records([("a", "yes", "full", "1")])
        with pytest.raises(SchemaError):
            partition(records, {"x": lambda r: True, "y": lambda r: True})
        with pytest.raises(SchemaError):
            partition(records, {"none": lambda r: False})

    def test_unknown_key(self):
        with pytest.raises(DomainError):
            partition([], "age")
