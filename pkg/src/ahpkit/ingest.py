"""File formats: respondent CSV, matrix CSV, JSON reports, shipped fixtures.

All text is UTF-8 with LF line endings and "." decimals regardless of
locale. Parsers reject out-of-domain values instead of coercing them, and
every parse error carries 1-based row/column coordinates. The respondent
CSV layout is this package's own contract, versioned by a leading
``# format_version: 1`` comment.
"""

from __future__ import annotations

import csv
import io
import json
import math
import warnings
from dataclasses import dataclass
from fractions import Fraction
from importlib import resources
from itertools import combinations
from typing import Iterable, Sequence

import numpy as np

from .core import ComparisonMatrix, ConsistencyReport, RankingRow, RankingTable
from .errors import ParseError
from .group import (
    COMMITTEE_VALUES,
    GROUP_VALUES,
    RANK_VALUES,
    RespondentRecord,
    StudyDataset,
)
from .scales import STUDY_SCALE, JudgmentScale
from .simulate import RiEstimate
from .stats import LabeledTest, TestResult
from .tolerances import TOL

FORMAT_VERSION = 1

# The twelve admission criteria, in the column order of the study's
# questionnaire; all pair naming derives from this order.
CRITERIA = (
    "Back", "Major", "CGPA", "MGPA", "Research", "Interview",
    "UDM", "LDM", "GREQ", "GREV", "GRES", "Tier",
)


def canonical_pairs(criteria: Sequence[str] = CRITERIA) -> list[tuple[int, int]]:
    return list(combinations(range(len(criteria)), 2))


def pair_columns(criteria: Sequence[str] = CRITERIA) -> list[str]:
    return [f"{criteria[i]}_vs_{criteria[j]}" for i, j in canonical_pairs(criteria)]


def _decode(data: bytes | str) -> str:
    if isinstance(data, bytes):
        try:
            return data.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise ParseError(f"input is not valid UTF-8: {exc}")
    return data


def _rows_with_lineno(text: str) -> list[tuple[int, list[str]]]:
    reader = csv.reader(io.StringIO(text))
    return [(lineno, row) for lineno, row in enumerate(reader, start=1) if row]


# ---------------------------------------------------------------------------
# respondent CSV


def _strip_comments(rows: list[tuple[int, list[str]]]) -> list[tuple[int, list[str]]]:
    body = []
    for lineno, row in rows:
        first = row[0].strip()
        if first.startswith("#"):
            if "format_version" in first:
                version = first.split(":", 1)[-1].strip()
                if version != str(FORMAT_VERSION):
                    raise ParseError(
                        f"unsupported format_version {version!r}", row=lineno
                    )
            continue
        body.append((lineno, row))
    return body


def _normalize_category(raw: str, allowed: tuple[str, ...], what: str, lineno: int, col: int) -> str:
    value = raw.strip().lower().replace(" ", "_")
    if value == "":
        return "blank"
    if value not in allowed:
        raise ParseError(
            f"bad {what} {raw!r} (allowed: {', '.join(allowed)})", row=lineno, column=col
        )
    return value


def parse_responses_csv(
    data: bytes | str, scale: JudgmentScale = STUDY_SCALE
) -> StudyDataset:
    """Parse the respondent CSV into a StudyDataset.

    Expected header: id, committee, rank, group, then the 66 pair columns
    named ``<rowCrit>_vs_<colCrit>`` in canonical order. Cells take scale
    values ("1/3", "0.333", "1/2", "0.5", "1", "2", "3") or are empty for
    an unanswered pair.
    """
    rows = _strip_comments(_rows_with_lineno(_decode(data)))
    if not rows:
        raise ParseError("empty responses file", row=1)
    header_line, header = rows[0]
    expected = ["id", "committee", "rank", "group", *pair_columns()]
    header = [h.strip() for h in header]
    if header != expected:
        for col, (got, want) in enumerate(zip(header, expected), start=1):
            if got != want:
                raise ParseError(
                    f"unexpected column {got!r} (expected {want!r})",
                    row=header_line, column=col,
                )
        raise ParseError(
            f"expected {len(expected)} columns, got {len(header)}", row=header_line
        )

    pairs = canonical_pairs()
    respondents = []
    seen_ids: set[str] = set()
    for lineno, row in rows[1:]:
        if len(row) != len(expected):
            raise ParseError(
                f"expected {len(expected)} cells, got {len(row)}", row=lineno
            )
        rid = row[0].strip()
        if not rid:
            raise ParseError("empty respondent id", row=lineno, column=1)
        if rid in seen_ids:
            raise ParseError(f"duplicate respondent id {rid!r}", row=lineno, column=1)
        seen_ids.add(rid)
        committee = _normalize_category(row[1], COMMITTEE_VALUES, "committee", lineno, 2)
        rank = _normalize_category(row[2], RANK_VALUES, "rank", lineno, 3)
        group = _normalize_category(row[3], GROUP_VALUES, "group", lineno, 4)
        judgments: dict[tuple[int, int], Fraction] = {}
        for k, (i, j) in enumerate(pairs):
            cell = row[4 + k].strip()
            if cell == "":
                continue
            judgments[(i, j)] = scale.parse(cell, row=lineno, column=5 + k)
        respondents.append(
            RespondentRecord(rid, committee, rank, group, judgments)
        )
    return StudyDataset(CRITERIA, tuple(respondents), scale)


def write_responses_csv(ds: StudyDataset) -> bytes:
    """Serialize a StudyDataset back to the respondent CSV format."""
    out = io.StringIO()
    out.write(f"# format_version: {FORMAT_VERSION}\n")
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(["id", "committee", "rank", "group", *pair_columns(ds.criteria)])
    blank = lambda v: "" if v == "blank" else v
    for r in ds.respondents:
        cells = [r.id, blank(r.committee_service), blank(r.rank), blank(r.program_group)]
        for pair in canonical_pairs(ds.criteria):
            v = r.judgments.get(pair)
            cells.append("" if v is None else str(v))
        writer.writerow(cells)
    return out.getvalue().encode("utf-8")


# ---------------------------------------------------------------------------
# matrix CSV (square grid, and the pair-list form exported by sessions)


def _parse_float(cell: str, lineno: int, col: int) -> float:
    try:
        value = float(cell)
    except ValueError:
        raise ParseError(f"unreadable number {cell!r}", row=lineno, column=col)
    if not math.isfinite(value) or value <= 0:
        raise ParseError(f"entries must be positive finite, got {cell!r}",
                         row=lineno, column=col)
    return value


def _resymmetrize(labels, grid, coords) -> ComparisonMatrix:
    """Validate rounded reciprocity, then rebuild exactly from the upper triangle."""
    n = len(labels)
    a = np.ones((n, n))
    for i in range(n):
        lineno, col = coords[i][i]
        if abs(grid[i][i] - 1.0) > TOL.csv_reciprocity_rel:
            raise ParseError(
                f"diagonal entry must be 1, got {grid[i][i]}", row=lineno, column=col
            )
    for i in range(n):
        for j in range(i + 1, n):
            prod = grid[i][j] * grid[j][i]
            if abs(prod - 1.0) > TOL.csv_reciprocity_rel:
                lineno, col = coords[j][i]
                raise ParseError(
                    f"reciprocity violated for ({labels[i]}, {labels[j]}): "
                    f"{grid[i][j]} * {grid[j][i]} = {prod:.6f}",
                    row=lineno, column=col,
                )
            a[i, j] = grid[i][j]
            a[j, i] = 1.0 / grid[i][j]
    return ComparisonMatrix(tuple(labels), a)


def _parse_matrix_pairs(rows) -> ComparisonMatrix:
    header_line, header = rows[0]
    header = [h.strip() for h in header]
    if header[:3] != ["row", "col", "value"] or len(header) > 4 or (
        len(header) == 4 and header[3] != "provisional"
    ):
        raise ParseError("expected header row,col,value[,provisional]", row=header_line)
    labels: list[str] = []
    seen: dict[tuple[str, str], float] = {}
    for lineno, row in rows[1:]:
        if len(row) != len(header):
            raise ParseError(f"expected {len(header)} cells", row=lineno)
        a, b = row[0].strip(), row[1].strip()
        if (a, b) in seen or (b, a) in seen:
            raise ParseError(f"duplicate pair ({a}, {b})", row=lineno, column=1)
        for name in (a, b):
            if name not in labels:
                labels.append(name)
        seen[(a, b)] = _parse_float(row[2], lineno, 3)
    n = len(labels)
    pos = {name: k for k, name in enumerate(labels)}
    grid = np.ones((n, n)).tolist()
    for (a, b), v in seen.items():
        grid[pos[a]][pos[b]] = v
        grid[pos[b]][pos[a]] = 1.0 / v
    for i, j in combinations(range(n), 2):
        if (labels[i], labels[j]) not in seen and (labels[j], labels[i]) not in seen:
            raise ParseError(f"missing pair ({labels[i]}, {labels[j]})", row=len(rows))
    coords = [[(0, 0)] * n for _ in range(n)]
    return _resymmetrize(labels, grid, coords)


def parse_matrix_csv(data: bytes | str) -> ComparisonMatrix:
    """Parse a comparison matrix from CSV.

    Two layouts are accepted: a square grid (optional column-label header
    whose first cell is empty, then one labeled row per criterion) and the
    pair list exported by elicitation sessions (header row,col,value with
    an optional provisional flag column). Published grids are rounded, so
    reciprocity is only validated to 5e-3 relative and the matrix is then
    rebuilt exactly from the upper triangle.
    """
    rows = _rows_with_lineno(_decode(data))
    rows = [(ln, row) for ln, row in rows if not row[0].strip().startswith("#")]
    if not rows:
        raise ParseError("empty matrix file", row=1)
    if rows[0][1][0].strip() == "row":
        return _parse_matrix_pairs(rows)

    header_labels: list[str] | None = None
    body = rows
    if rows[0][1][0].strip() == "" and len(rows[0][1]) > 1:
        header_labels = [c.strip() for c in rows[0][1][1:]]
        body = rows[1:]
    if not body:
        raise ParseError("matrix has no data rows", row=rows[0][0])

    labels: list[str] = []
    grid: list[list[float]] = []
    coords: list[list[tuple[int, int]]] = []
    width = len(body[0][1]) - 1
    for lineno, row in body:
        if len(row) - 1 != width:
            raise ParseError(
                f"ragged row: expected {width} values, got {len(row) - 1}", row=lineno
            )
        labels.append(row[0].strip())
        grid.append([_parse_float(c, lineno, col) for col, c in enumerate(row[1:], start=2)])
        coords.append([(lineno, col) for col in range(2, len(row) + 1)])
    if len(labels) != width:
        raise ParseError(
            f"matrix is not square: {len(labels)} rows, {width} columns",
            row=body[-1][0],
        )
    if len(set(labels)) != len(labels):
        raise ParseError("duplicate row labels", row=body[0][0], column=1)
    if header_labels is not None and header_labels != labels:
        raise ParseError(
            f"column labels {header_labels} do not match row labels {labels}",
            row=rows[0][0],
        )
    return _resymmetrize(labels, grid, coords)


def write_matrix_csv(m: ComparisonMatrix) -> bytes:
    """Square-grid CSV with a column-label header; full float precision."""
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(["", *m.labels])
    for i, label in enumerate(m.labels):
        writer.writerow([label, *(repr(float(v)) for v in m.entries[i])])
    return out.getvalue().encode("utf-8")


def write_matrix_pairs_csv(
    m: ComparisonMatrix, provisional: Iterable[tuple[int, int]] = ()
) -> bytes:
    """Pair-list CSV (upper triangle only) with a provisional flag column."""
    flagged = set(provisional)
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(["row", "col", "value", "provisional"])
    for i, j in combinations(range(m.order), 2):
        writer.writerow([
            m.labels[i], m.labels[j], repr(float(m.entries[i, j])),
            "yes" if (i, j) in flagged else "no",
        ])
    return out.getvalue().encode("utf-8")


# ---------------------------------------------------------------------------
# JSON reports (numbers at 6 significant digits, stable key order)


def _num(x):
    if x is None or isinstance(x, bool) or isinstance(x, int):
        return x
    if math.isnan(x):
        return "nan"
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    return float(f"{x:.6g}")


def _unnum(x):
    if isinstance(x, str):
        return float(x)
    return x


def write_ranking_json(
    rt: RankingTable, cr: ConsistencyReport, method: str = "rowsum"
) -> bytes:
    doc = {
        "format_version": FORMAT_VERSION,
        "method": method,
        "ranking": [
            {"rank": row.rank, "factor": row.label, "weight": _num(row.relative_importance)}
            for row in rt.rows
        ],
        "consistency": {
            "lambda_max": _num(cr.lambda_max),
            "ci": _num(cr.ci),
            "ri": _num(cr.ri),
            "cr": _num(cr.cr),
            "consistent": cr.consistent,
            "order": cr.order,
        },
    }
    return (json.dumps(doc, indent=2) + "\n").encode("utf-8")


def parse_ranking_json(data: bytes | str) -> tuple[RankingTable, ConsistencyReport, str]:
    """Inverse of write_ranking_json, to the serializer's 6-digit precision.

    Weights are renormalized to sum exactly to 1, absorbing rounding."""
    try:
        doc = json.loads(_decode(data))
    except json.JSONDecodeError as exc:
        raise ParseError(f"bad JSON: {exc}")
    rows = doc["ranking"]
    total = sum(_unnum(r["weight"]) for r in rows)
    rt = RankingTable(tuple(
        RankingRow(r["rank"], r["factor"], _unnum(r["weight"]) / total) for r in rows
    ))
    c = doc["consistency"]
    report = ConsistencyReport(
        lambda_max=_unnum(c["lambda_max"]), ci=_unnum(c["ci"]), ri=_unnum(c["ri"]),
        cr=_unnum(c["cr"]), consistent=c["consistent"], order=c["order"],
    )
    return rt, report, doc.get("method", "rowsum")


def _test_to_dict(item: LabeledTest) -> dict:
    res = item.result
    doc = {
        "name": item.name,
        "kind": res.kind,
        "statistic": _num(res.statistic),
        "df": [_num(res.df[0]), _num(res.df[1])],
        "p_value": _num(res.p_value),
    }
    if res.r is not None:
        doc["r"] = _num(res.r)
    if res.degenerate:
        doc["degenerate"] = True
    return doc


def write_stats_report_json(
    tests: Sequence[LabeledTest],
    seed: int | None = None,
    partition: str | None = None,
    method: str | None = None,
    skipped: Sequence[tuple[str, str]] = (),
) -> bytes:
    doc: dict = {"format_version": FORMAT_VERSION}
    if method is not None:
        doc["method"] = method
    if partition is not None:
        doc["partition"] = partition
    if seed is not None:
        doc["seed"] = seed
    if skipped:
        doc["skipped"] = [{"id": sid, "reason": reason} for sid, reason in skipped]
    doc["tests"] = [_test_to_dict(t) for t in tests]
    doc["test_count"] = len(tests)
    return (json.dumps(doc, indent=2) + "\n").encode("utf-8")


def parse_stats_report_json(data: bytes | str) -> list[LabeledTest]:
    try:
        doc = json.loads(_decode(data))
    except json.JSONDecodeError as exc:
        raise ParseError(f"bad JSON: {exc}")
    out = []
    for t in doc["tests"]:
        out.append(LabeledTest(
            t["name"],
            TestResult(
                kind=t["kind"],
                statistic=_unnum(t["statistic"]),
                df=(_unnum(t["df"][0]), _unnum(t["df"][1])),
                p_value=_unnum(t["p_value"]),
                r=_unnum(t["r"]) if "r" in t else None,
                degenerate=t.get("degenerate", False),
            ),
        ))
    return out


# ---------------------------------------------------------------------------
# random-index CSV


def write_ri_csv(estimates: Sequence[RiEstimate]) -> bytes:
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(["order", "ri", "std_error", "samples", "seed"])
    for e in estimates:
        writer.writerow([e.order, repr(e.mean_ci), repr(e.std_error), e.samples, e.seed])
    return out.getvalue().encode("utf-8")


def parse_ri_csv(data: bytes | str) -> list[RiEstimate]:
    rows = _rows_with_lineno(_decode(data))
    if not rows or [c.strip() for c in rows[0][1]] != ["order", "ri", "std_error", "samples", "seed"]:
        raise ParseError("expected header order,ri,std_error,samples,seed", row=1)
    out = []
    for lineno, row in rows[1:]:
        if len(row) != 5:
            raise ParseError("expected 5 cells", row=lineno)
        try:
            out.append(RiEstimate(
                order=int(row[0]), samples=int(row[3]), mean_ci=float(row[1]),
                std_error=float(row[2]), seed=int(row[4]),
            ))
        except ValueError as exc:
            raise ParseError(f"bad value: {exc}", row=lineno)
    return out


# ---------------------------------------------------------------------------
# shipped fixtures


@dataclass(frozen=True)
class SchoolGroupRow:
    institution: str
    ranking: int | None  # None where the published table shows N/A
    group: str           # "1" | "2" | "3"
    responses: int


def _data_text(name: str) -> str:
    return resources.files("ahpkit.data").joinpath(name).read_text(encoding="utf-8")


def load_table6() -> ComparisonMatrix:
    """The study's published 12x12 aggregate comparison matrix."""
    return parse_matrix_csv(_data_text("table6.csv"))


def load_reference_ri() -> dict[int, float]:
    """The published random-index table (orders 1..15)."""
    rows = _rows_with_lineno(_data_text("ri_table.csv"))
    return {int(r[0]): float(r[1]) for _, r in rows[1:]}


def load_school_groups() -> tuple[SchoolGroupRow, ...]:
    """The published school-to-program-group fixture."""
    rows = _rows_with_lineno(_data_text("school_groups.csv"))
    out = []
    for _, row in rows[1:]:
        institution, ranking, grp, responses = row
        out.append(SchoolGroupRow(
            institution=institution,
            ranking=None if ranking.strip().upper() == "N/A" else int(ranking),
            group=grp.strip(),
            responses=int(responses),
        ))
    return tuple(out)


def school_group_for(institution: str, rows: Sequence[SchoolGroupRow] | None = None) -> str:
    """Program group for a school; unknown schools map to group 3 with a warning."""
    if rows is None:
        rows = load_school_groups()
    for row in rows:
        if row.institution == institution:
            return row.group
    warnings.warn(f"unknown institution {institution!r}; assigning group 3", stacklevel=2)
    return "3"
