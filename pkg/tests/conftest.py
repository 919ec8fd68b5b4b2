import json
from fractions import Fraction
from pathlib import Path

import pytest

from ahpkit.group import RespondentRecord, StudyDataset
from ahpkit.scales import STUDY_SCALE

FIXTURES = Path(__file__).parent / "fixtures"


@pytest.fixture(scope="session")
def special_function_grid():
    return json.loads((FIXTURES / "special_function_grid.json").read_text())


@pytest.fixture(scope="session")
def candy_fixture():
    return json.loads((FIXTURES / "candy_lambda.json").read_text())


@pytest.fixture(scope="session")
def random_matrix_fixture():
    return json.loads((FIXTURES / "random_matrix_n4.json").read_text())


def make_respondent(rid, judgments, committee="yes", rank="full", group="1"):
    return RespondentRecord(
        rid, committee, rank, group,
        {pair: Fraction(v) for pair, v in judgments.items()},
    )


def uniform_judgments(n):
    return {(i, j): Fraction(1) for i in range(n) for j in range(i + 1, n)}


def small_dataset(criteria, respondents):
    return StudyDataset(tuple(criteria), tuple(respondents), STUDY_SCALE)
