"""ahpkit: Analytic Hierarchy Process engine and survey-analysis toolkit."""

from .core import (
    ComparisonMatrix,
    ConsistencyReport,
    RankingTable,
    WeightVector,
    build_matrix,
    consistency_report,
    is_cardinally_consistent,
    most_inconsistent_triad,
    principal_eigenpair,
    random_index_lookup,
    rank_criteria,
    ratio_matrix,
    rowsum_weights,
    synthesize_hierarchy,
)
from .scales import SAATY_SCALE, STUDY_SCALE, JudgmentScale

__version__ = "0.1.0"

__all__ = [
    "ComparisonMatrix",
    "ConsistencyReport",
    "JudgmentScale",
    "RankingTable",
    "SAATY_SCALE",
    "STUDY_SCALE",
    "WeightVector",
    "build_matrix",
    "consistency_report",
    "is_cardinally_consistent",
    "most_inconsistent_triad",
    "principal_eigenpair",
    "random_index_lookup",
    "rank_criteria",
    "ratio_matrix",
    "rowsum_weights",
    "synthesize_hierarchy",
]
