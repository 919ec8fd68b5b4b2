import math

import numpy as np
import pytest

from ahpkit.core import (
    ComparisonMatrix,
    RankingRow,
    RankingTable,
    WeightVector,
    build_matrix,
    consistency_report,
    derive_weights,
    is_cardinally_consistent,
    most_inconsistent_triad,
    principal_eigenpair,
    random_index_lookup,
    rank_criteria,
    ratio_matrix,
    rowsum_weights,
    synthesize_hierarchy,
)
from ahpkit.errors import (
    DomainError,
    IncompleteJudgmentsError,
    SchemaError,
    UnsupportedOrderError,
)
from ahpkit.ingest import load_table6

import oracles

CANDY_LABELS = ("Lollipops", "Taffy", "Chocolate")
CANDY_JUDGMENTS = {
    ("Lollipops", "Taffy"): 2,
    ("Lollipops", "Chocolate"): 1 / 3,
    ("Taffy", "Chocolate"): 1,
}

# published rankings of the survey study, in percent
ALL_RESPONSES_PCT = {
    "UDM": 13.415, "MGPA": 12.17, "Research": 10.525, "Major": 8.643,
    "GRES": 8.38, "LDM": 7.751, "CGPA": 7.454, "Interview": 7.419,
    "Tier": 6.723, "GREQ": 6.688, "Back": 5.838, "GREV": 4.995,
}
COMMITTEE_PCT = {
    "UDM": 13.202, "MGPA": 12.108, "Research": 10.447, "Major": 8.647,
    "GRES": 8.248, "CGPA": 7.767, "LDM": 7.466, "Interview": 7.268,
    "GREQ": 6.876, "Tier": 6.572, "Back": 6.131, "GREV": 5.268,
}


def candy_matrix():
    return build_matrix(CANDY_LABELS, CANDY_JUDGMENTS)


class TestBuildMatrix:
    def test_reciprocal_fill(self):
        m = build_matrix(("A", "B"), {("A", "B"): 2})
        assert m.entries.tolist() == [[1, 2], [0.5, 1]]

    def test_candy_example(self):
        m = candy_matrix()
        assert m.entries[0].tolist() == [1, 2, 1 / 3]
        assert m.entries[1].tolist() == [0.5, 1, 1]
        assert m.entries[2].tolist() == [3, 1, 1]

    def test_order_one(self):
        m = build_matrix(("A",), {})
        assert m.entries.tolist() == [[1.0]]

    def test_missing_pair_names_it(self):
        with pytest.raises(IncompleteJudgmentsError, match="'B' vs 'C'"):
            build_matrix(("A", "B", "C"), {("A", "B"): 2, ("A", "C"): 1})

    def test_nonpositive_value(self):
        with pytest.raises(DomainError):
            build_matrix(("A", "B"), {("A", "B"): 0})
        with pytest.raises(DomainError):
            build_matrix(("A", "B"), {("A", "B"): -2})

    def test_lower_triangle_key_rejected(self):
        with pytest.raises(DomainError):
            build_matrix(("A", "B"), {("B", "A"): 2})

    def test_unknown_label(self):
        with pytest.raises(SchemaError):
            build_matrix(("A", "B"), {("A", "X"): 2})


class TestComparisonMatrix:
    def test_rejects_reciprocity_violation(self):
        with pytest.raises(DomainError, match="reciprocity"):
            ComparisonMatrix(("A", "B"), [[1, 2], [0.6, 1]])

    def test_rejects_bad_diagonal(self):
        with pytest.raises(DomainError, match="diagonal"):
            ComparisonMatrix(("A", "B"), [[1.1, 2], [0.5, 1]])

    def test_rejects_nonpositive(self):
        with pytest.raises(DomainError):
            ComparisonMatrix(("A", "B"), [[1, 0], [math.inf, 1]])

    def test_entries_read_only(self):
        m = candy_matrix()
        with pytest.raises(ValueError):
            m.entries[0, 1] = 5.0

    def test_nonreciprocal_flag_skips_check(self):
        m = ComparisonMatrix(("A", "B"), [[1, 2], [0.6, 1]], reciprocal=False)
        assert m.entries[1, 0] == 0.6


class TestCardinalConsistency:
    def test_ratio_matrix_is_consistent(self):
        m = ratio_matrix(("A", "B", "C"), (0.5, 0.3, 0.2))
        assert is_cardinally_consistent(m)

    def test_candy_is_not(self):
        assert not is_cardinally_consistent(candy_matrix())

    def test_any_2x2_is_consistent(self):
        for v in (1 / 3, 1 / 2, 1, 2, 3, 7.5):
            m = build_matrix(("A", "B"), {("A", "B"): v})
            assert is_cardinally_consistent(m)


class TestPrincipalEigenpair:
    def test_consistent_matrix_recovers_weights(self):
        w = (0.5, 0.3, 0.2)
        lam, vec = principal_eigenpair(ratio_matrix(("A", "B", "C"), w))
        assert lam == pytest.approx(3.0, abs=1e-9)
        assert vec.weights == pytest.approx(w, abs=1e-9)
        assert vec.method == "eigenvector"

    def test_candy_matches_characteristic_polynomial_root(self, candy_fixture):
        m = candy_matrix()
        lam, _ = principal_eigenpair(m)
        assert lam == pytest.approx(candy_fixture["lambda_max"], abs=1e-9)
        # committed fixture and the live bisection oracle agree
        live = oracles.lambda_max_3x3_reciprocal(m.entries.tolist())
        assert lam == pytest.approx(live, abs=1e-9)

    def test_all_ones(self):
        n = 7
        labels = tuple(f"C{i}" for i in range(n))
        m = ComparisonMatrix(labels, np.ones((n, n)))
        lam, vec = principal_eigenpair(m)
        assert lam == pytest.approx(n, abs=1e-12)
        assert vec.weights == pytest.approx([1 / n] * n, abs=1e-12)

    def test_rayleigh_quotient_cross_check(self):
        m = load_table6()
        lam, vec = principal_eigenpair(m)
        rayleigh = (m.entries @ vec.weights) / vec.weights
        assert lam == pytest.approx(float(np.mean(rayleigh)), abs=1e-9)


class TestRowsumWeights:
    def test_two_by_two(self):
        m = build_matrix(("A", "B"), {("A", "B"): 2})
        w = rowsum_weights(m)
        assert w.weights == pytest.approx([2 / 3, 1 / 3], abs=1e-15)
        assert w.method == "rowsum"

    def test_all_ones_uniform(self):
        m = ComparisonMatrix(tuple("ABCD"), np.ones((4, 4)))
        assert rowsum_weights(m).weights == pytest.approx([0.25] * 4, abs=1e-15)

    def test_aggregate_fixture_reproduces_published_ranking(self):
        # the shipped aggregate matrix reproduces the all-responses ranking
        # to the published precision (3 decimals in percent)
        w = rowsum_weights(load_table6()).as_dict()
        for factor, pct in ALL_RESPONSES_PCT.items():
            assert w[factor] * 100 == pytest.approx(pct, abs=2e-3)


class TestConsistencyReport:
    def test_aggregate_fixture(self):
        rep = consistency_report(load_table6())
        assert rep.ri == 1.54
        assert rep.cr == pytest.approx(0.0046145, abs=5e-6)  # published value
        assert rep.consistent
        assert rep.ci == pytest.approx((rep.lambda_max - 12) / 11, abs=1e-15)

    def test_consistent_matrix_zero(self):
        rep = consistency_report(ratio_matrix(tuple("ABCDE"), (5, 4, 3, 2, 1)))
        assert rep.cr == pytest.approx(0.0, abs=1e-9)
        assert rep.ci == pytest.approx(0.0, abs=1e-9)
        assert rep.consistent

    def test_candy_inconsistent(self, candy_fixture):
        rep = consistency_report(candy_matrix())
        assert rep.cr == pytest.approx(candy_fixture["cr_at_ri_052"], abs=1e-9)
        assert rep.cr > 0.1
        assert not rep.consistent

    def test_small_orders_define_zero(self):
        assert consistency_report(build_matrix(("A",), {})).cr == 0.0
        rep = consistency_report(build_matrix(("A", "B"), {("A", "B"): 3}))
        assert rep.ci == 0.0 and rep.cr == 0.0 and rep.consistent

    def test_large_order_needs_explicit_ri(self):
        labels = tuple(f"C{i}" for i in range(16))
        m = ComparisonMatrix(labels, np.ones((16, 16)))
        with pytest.raises(UnsupportedOrderError):
            consistency_report(m)
        rep = consistency_report(m, ri=1.60)
        assert rep.cr == pytest.approx(0.0, abs=1e-9)


class TestRandomIndexLookup:
    @pytest.mark.parametrize("n,expected", [(1, 0.0), (2, 0.0), (3, 0.52),
                                            (12, 1.54), (15, 1.59)])
    def test_tabulated(self, n, expected):
        assert random_index_lookup(n) == expected

    @pytest.mark.parametrize("n", [0, 16, -1])
    def test_out_of_range(self, n):
        with pytest.raises(UnsupportedOrderError):
            random_index_lookup(n)


class TestRankCriteria:
    def test_published_committee_ranking_order(self):
        labels = tuple(COMMITTEE_PCT)
        w = WeightVector.from_raw(labels, [COMMITTEE_PCT[k] for k in labels], "rowsum")
        rt = rank_criteria(w)
        assert rt.rows[0].label == "UDM"
        assert rt.rows[-1].label == "GREV"
        assert [r.rank for r in rt.rows] == list(range(1, 13))

    def test_stable_tie_break(self):
        w = WeightVector(("A", "B", "C"), [1 / 3, 1 / 3, 1 / 3], "rowsum")
        assert rank_criteria(w).labels_in_rank_order() == ("A", "B", "C")

    def test_sorting(self):
        w = WeightVector(("X", "Y", "Z"), (0.2, 0.5, 0.3), "rowsum")
        assert rank_criteria(w).labels_in_rank_order() == ("Y", "Z", "X")


class TestMostInconsistentTriad:
    def test_consistent_matrix_zero_deviation(self):
        m = ratio_matrix(tuple("ABCD"), (4, 3, 2, 1))
        *_, dev = most_inconsistent_triad(m)
        assert dev == pytest.approx(0.0, abs=1e-12)

    def test_candy(self):
        m = candy_matrix()
        i, j, k, dev = most_inconsistent_triad(m)
        assert {i, j, k} == {0, 1, 2}
        assert dev == pytest.approx(math.log(6), abs=1e-12)
        brute_set, brute_dev = oracles.worst_triad_brute(m.entries.tolist())
        assert frozenset((i, j, k)) == brute_set
        assert dev == pytest.approx(brute_dev, abs=1e-12)

    def test_perturbed_pair_is_flagged(self):
        base = ratio_matrix(tuple("ABCD"), (4, 3, 2, 1))
        a = np.array(base.entries)
        a[0, 2] *= 2
        a[2, 0] = 1 / a[0, 2]
        m = ComparisonMatrix(tuple("ABCD"), a)
        i, j, k, dev = most_inconsistent_triad(m)
        assert {0, 2} <= {i, j, k}
        assert dev == pytest.approx(math.log(2), abs=1e-12)
        brute_set, brute_dev = oracles.worst_triad_brute(m.entries.tolist())
        assert {0, 2} <= brute_set
        assert dev == pytest.approx(brute_dev, abs=1e-12)

    def test_order_below_three_rejected(self):
        with pytest.raises(DomainError):
            most_inconsistent_triad(build_matrix(("A", "B"), {("A", "B"): 2}))


class TestSynthesizeHierarchy:
    def test_single_criterion_identity(self):
        cw = WeightVector(("c1",), (1.0,), "rowsum")
        local = WeightVector(("x", "y"), (0.7, 0.3), "eigenvector")
        assert synthesize_hierarchy(cw, [local]).weights == pytest.approx([0.7, 0.3])

    def test_symmetry(self):
        cw = WeightVector(("c1", "c2"), (0.5, 0.5), "rowsum")
        locals_ = [
            WeightVector(("x", "y"), (1.0, 0.0), "rowsum"),
            WeightVector(("x", "y"), (0.0, 1.0), "rowsum"),
        ]
        assert synthesize_hierarchy(cw, locals_).weights == pytest.approx([0.5, 0.5])

    def test_hand_arithmetic(self):
        cw = WeightVector(("c1", "c2"), (0.6, 0.4), "rowsum")
        locals_ = [
            WeightVector(("x", "y"), (0.5, 0.5), "rowsum"),
            WeightVector(("x", "y"), (0.25, 0.75), "rowsum"),
        ]
        out = synthesize_hierarchy(cw, locals_)
        assert out.weights == pytest.approx([0.40, 0.60], abs=1e-15)
        assert out.method == "synthesis"

    def test_alignment_of_permuted_labels(self):
        cw = WeightVector(("c1", "c2"), (0.6, 0.4), "rowsum")
        locals_ = [
            WeightVector(("x", "y"), (0.5, 0.5), "rowsum"),
            WeightVector(("y", "x"), (0.75, 0.25), "rowsum"),
        ]
        assert synthesize_hierarchy(cw, locals_).weights == pytest.approx([0.40, 0.60])

    def test_label_mismatch(self):
        cw = WeightVector(("c1", "c2"), (0.5, 0.5), "rowsum")
        locals_ = [
            WeightVector(("x", "y"), (0.5, 0.5), "rowsum"),
            WeightVector(("x", "z"), (0.5, 0.5), "rowsum"),
        ]
        with pytest.raises(SchemaError):
            synthesize_hierarchy(cw, locals_)
        with pytest.raises(SchemaError):
            synthesize_hierarchy(cw, [locals_[0]])


class TestWeightVector:
    def test_rejects_bad_sum(self):
        with pytest.raises(DomainError):
            WeightVector(("A", "B"), (0.5, 0.6), "rowsum")

    def test_rejects_negative(self):
        with pytest.raises(DomainError):
            WeightVector(("A", "B"), (-0.1, 1.1), "rowsum")

    def test_from_raw_normalizes(self):
        w = WeightVector.from_raw(("A", "B"), (3, 1), "rowsum")
        assert w.weights == pytest.approx([0.75, 0.25])


class TestRankingTable:
    def test_rejects_nonconsecutive_ranks(self):
        with pytest.raises(DomainError):
            RankingTable((RankingRow(1, "A", 0.6), RankingRow(3, "B", 0.4)))

    def test_rejects_unsorted(self):
        with pytest.raises(DomainError):
            RankingTable((RankingRow(1, "A", 0.4), RankingRow(2, "B", 0.6)))

    def test_rejects_bad_sum(self):
        with pytest.raises(DomainError):
            RankingTable((RankingRow(1, "A", 0.6), RankingRow(2, "B", 0.5)))


def test_derive_weights_dispatch():
    m = candy_matrix()
    assert derive_weights(m, "rowsum").method == "rowsum"
    assert derive_weights(m, "eigenvector").method == "eigenvector"
    with pytest.raises(DomainError):
        derive_weights(m, "geometric")
