import json

import pytest
from click.testing import CliRunner

from ahpkit.cli import main
from ahpkit.ingest import load_table6, pair_columns, write_matrix_csv

from test_ingest import full_row, responses_csv


@pytest.fixture
def runner():
    return CliRunner()


@pytest.fixture
def table6_file(tmp_path):
    path = tmp_path / "table6.csv"
    path.write_bytes(write_matrix_csv(load_table6()))
    return str(path)


def write_candy(tmp_path):
    path = tmp_path / "candy.csv"
    path.write_text(
        ",Lollipops,Taffy,Chocolate\n"
        "Lollipops,1,2,0.3333333333333333\n"
        "Taffy,0.5,1,1\n"
        "Chocolate,3,1,1\n"
    )
    return str(path)


class TestRank:
    def test_aggregate_fixture_ranking(self, runner, table6_file):
        result = runner.invoke(main, ["rank", table6_file, "--method", "rowsum"])
        assert result.exit_code == 0
        doc = json.loads(result.stdout)
        order = [row["factor"] for row in doc["ranking"]]
        assert order[:5] == ["UDM", "MGPA", "Research", "Major", "GRES"]
        assert doc["consistency"]["consistent"] is True
        assert "audit: lambda_max=" in result.stderr

    def test_identity_matrix_uniform(self, runner, tmp_path):
        path = tmp_path / "identity3.csv"
        path.write_text(",A,B,C\nA,1,1,1\nB,1,1,1\nC,1,1,1\n")
        result = runner.invoke(main, ["rank", str(path)])
        doc = json.loads(result.stdout)
        assert [r["weight"] for r in doc["ranking"]] == pytest.approx([1 / 3] * 3)
        assert doc["consistency"]["cr"] == 0.0

    def test_candy_flagged_inconsistent(self, runner, tmp_path):
        result = runner.invoke(main, ["rank", write_candy(tmp_path)])
        doc = json.loads(result.stdout)
        assert doc["consistency"]["consistent"] is False
        assert doc["consistency"]["cr"] > 0.1

    def test_eigenvector_method_flag(self, runner, table6_file):
        result = runner.invoke(main, ["rank", table6_file, "--method", "eigenvector"])
        assert json.loads(result.stdout)["method"] == "eigenvector"

    def test_parse_error_exit_code(self, runner, tmp_path):
        bad = tmp_path / "bad.csv"
        bad.write_text(",A,B\nA,1,2\nB,0.9,1\n")  # reciprocity broken
        result = runner.invoke(main, ["rank", str(bad)])
        assert result.exit_code == 2
        assert "error:" in result.stderr

    def test_output_file(self, runner, table6_file, tmp_path):
        out = tmp_path / "ranking.json"
        result = runner.invoke(main, ["rank", table6_file, "-o", str(out)])
        assert result.exit_code == 0
        assert json.loads(out.read_text())["ranking"]


class TestAggregate:
    def test_round_trip_through_rank(self, runner, tmp_path):
        src = tmp_path / "responses.csv"
        src.write_bytes(responses_csv([full_row("a", "2"), full_row("b", "3")]))
        out = tmp_path / "aggregate.csv"
        result = runner.invoke(main, ["aggregate", str(src), "-o", str(out)])
        assert result.exit_code == 0
        text = out.read_text()
        assert text.startswith(",Back,Major,")
        assert "2.5" in text  # mean of 2 and 3
        ranked = runner.invoke(main, ["rank", str(out)])
        assert ranked.exit_code == 0

    def test_policy_flag(self, runner, tmp_path):
        src = tmp_path / "responses.csv"
        src.write_bytes(responses_csv([full_row("a", "2"), full_row("b", "3")]))
        result = runner.invoke(main, ["aggregate", str(src), "--policy", "geometric"])
        assert result.exit_code == 0
        assert "2.449489742783178" in result.stdout  # sqrt(6)

    def test_parse_error(self, runner, tmp_path):
        src = tmp_path / "responses.csv"
        src.write_bytes(responses_csv([full_row("a", "4")]))
        result = runner.invoke(main, ["aggregate", str(src)])
        assert result.exit_code == 2


def identical_groups_csv():
    """Two respondent groups (committee yes/no) with identical answers."""
    rows = []
    for k, committee in enumerate(["yes", "yes", "yes", "no", "no", "no"]):
        value = ["1", "2", "3"][k % 3]
        rows.append(full_row(f"r{k}", value, committee=committee))
    return responses_csv(rows)


def linear_weights_csv():
    """Criteria 0 and 1 always tied; their weights correlate perfectly."""
    rows = []
    for k, t in enumerate(["1/2", "1", "2"]):
        row = full_row(f"r{k}", "1")
        columns = pair_columns()
        for i, name in enumerate(columns):
            a, b = name.split("_vs_")
            if a in ("Back", "Major") and b not in ("Back", "Major"):
                row[4 + i] = t
        rows.append(row)
    return responses_csv(rows)


class TestStatsCommand:
    def test_identical_groups_give_p_one(self, runner, tmp_path):
        src = tmp_path / "responses.csv"
        src.write_bytes(identical_groups_csv())
        result = runner.invoke(main, [
            "stats", str(src), "--partition", "committee_service", "--tests", "t",
        ])
        assert result.exit_code == 0
        doc = json.loads(result.stdout)
        assert doc["test_count"] == 12  # one per criterion
        assert all(t["p_value"] == 1.0 for t in doc["tests"])

    def test_correlation_mode_perfect_cells(self, runner, tmp_path):
        src = tmp_path / "responses.csv"
        src.write_bytes(linear_weights_csv())
        result = runner.invoke(main, ["stats", str(src), "--tests", "correlation"])
        doc = json.loads(result.stdout)
        back_major = [t for t in doc["tests"] if t["name"] == "corr Back ~ Major"]
        assert back_major[0]["r"] == 1.0
        assert back_major[0]["p_value"] == 0.0

    def test_summary_reproductions(self, runner):
        result = runner.invoke(main, [
            "stats",
            "--summary-t", "49,.075,.020,39,.085,.024",
            "--summary-anova", "49,.0525,.030;12,.0475,.026;17,.0583,.026",
        ])
        doc = json.loads(result.stdout)
        t_res, f_res = doc["tests"]
        assert -2.40 <= t_res["statistic"] <= -1.95
        assert t_res["df"] == [86.0, 0.0]
        assert 0.3 <= f_res["statistic"] <= 0.8
        assert f_res["df"] == [2.0, 75.0]
        assert doc["test_count"] == 2

    def test_requires_some_input(self, runner):
        result = runner.invoke(main, ["stats"])
        assert result.exit_code == 2

    def test_welch_flag(self, runner, tmp_path):
        src = tmp_path / "responses.csv"
        src.write_bytes(identical_groups_csv())
        result = runner.invoke(main, ["stats", str(src), "--tests", "t", "--welch"])
        doc = json.loads(result.stdout)
        assert all(t["kind"] == "t_welch" for t in doc["tests"])

    def test_skipped_respondents_reported(self, runner, tmp_path):
        rows = [full_row("done", "1"), full_row("partial", "1")]
        rows[1][10] = ""
        src = tmp_path / "responses.csv"
        src.write_bytes(responses_csv(rows))
        result = runner.invoke(main, ["stats", str(src), "--tests", "anova"])
        doc = json.loads(result.stdout)
        assert doc["skipped"][0]["id"] == "partial"


class TestRiCommand:
    def test_csv_output_and_determinism(self, runner):
        args = ["ri", "--max-n", "3", "--samples", "500", "--seed", "5",
                "--backend", "numpy"]
        first = runner.invoke(main, args)
        second = runner.invoke(main, args)
        assert first.exit_code == 0
        assert first.stdout == second.stdout
        lines = first.stdout.strip().splitlines()
        assert lines[0] == "order,ri,std_error,samples,seed"
        assert len(lines) == 4
        assert "backend: numpy" in first.stderr

    def test_env_seed_override(self, runner, monkeypatch):
        monkeypatch.setenv("AHP_SEED", "99")
        with_env = runner.invoke(main, ["ri", "--max-n", "3", "--samples", "300",
                                        "--backend", "numpy"])
        monkeypatch.delenv("AHP_SEED")
        explicit = runner.invoke(main, ["ri", "--max-n", "3", "--samples", "300",
                                        "--seed", "99", "--backend", "numpy"])
        assert with_env.stdout == explicit.stdout

    def test_bad_max_n(self, runner):
        result = runner.invoke(main, ["ri", "--max-n", "30", "--samples", "10"])
        assert result.exit_code == 2
