"""Command-line entry point.

Exit codes: 0 success, 2 parse/domain error, 3 numeric (non-convergence)
error. Every command is deterministic given its inputs and flags; the
``AHP_SEED`` environment variable overrides the default Monte Carlo seed.
"""

from __future__ import annotations

import os
import sys
from pathlib import Path

import click

from . import group as grp
from . import ingest, simulate, stats
from .core import consistency_report, derive_weights, rank_criteria
from .errors import ConvergenceError, DomainError, ParseError
from .kernels import backend_name
from .scales import scale_by_name

DEFAULT_SEED = 12345

EXIT_PARSE = 2
EXIT_NUMERIC = 3


def _default_seed() -> int:
    env = os.environ.get("AHP_SEED", "").strip()
    return int(env) if env else DEFAULT_SEED


def _fail(code: int, exc: Exception) -> None:
    click.echo(f"error: {exc}", err=True)
    sys.exit(code)


def _write_output(data: bytes, output: str | None) -> None:
    if output and output != "-":
        Path(output).write_bytes(data)
    else:
        sys.stdout.write(data.decode("utf-8"))


@click.group()
def main():
    """AHP toolkit: rank criteria, aggregate surveys, test populations."""


@main.command()
@click.argument("matrix_file", type=click.Path(exists=True, dir_okay=False))
@click.option("--method", type=click.Choice(["rowsum", "eigenvector"]), default="rowsum",
              show_default=True, help="Weight derivation method.")
@click.option("--ri", type=float, default=None,
              help="Explicit random index (required for orders above 15).")
@click.option("--output", "-o", default="-", help="Output path or - for stdout.")
def rank(matrix_file, method, ri, output):
    """Rank criteria from a comparison-matrix CSV; prints ranking JSON."""
    try:
        m = ingest.parse_matrix_csv(Path(matrix_file).read_bytes())
    except ParseError as exc:
        _fail(EXIT_PARSE, exc)
    try:
        weights = derive_weights(m, method)
        report = consistency_report(m, ri=ri)
    except ConvergenceError as exc:
        _fail(EXIT_NUMERIC, exc)
    except DomainError as exc:
        _fail(EXIT_PARSE, exc)
    ranking = rank_criteria(weights)
    click.echo(
        f"audit: lambda_max={report.lambda_max:.9f} ci={report.ci:.9f} "
        f"ri={report.ri} cr={report.cr:.9f} order={report.order}",
        err=True,
    )
    _write_output(ingest.write_ranking_json(ranking, report, method), output)


@main.command()
@click.argument("responses_file", type=click.Path(exists=True, dir_okay=False))
@click.option("--policy", type=click.Choice(list(grp.AGGREGATION_POLICIES)),
              default="triangle_reciprocal", show_default=True)
@click.option("--output", "-o", default="-", help="Output path or - for stdout.")
def aggregate(responses_file, policy, output):
    """Aggregate a respondent CSV into one comparison matrix (CSV out)."""
    try:
        ds = ingest.parse_responses_csv(Path(responses_file).read_bytes())
        m = grp.aggregate_mean(ds, policy)
    except (ParseError, DomainError) as exc:
        _fail(EXIT_PARSE, exc)
    _write_output(ingest.write_matrix_csv(m), output)


def _parse_summary_t(spec: str):
    parts = [p.strip() for p in spec.split(",")]
    if len(parts) != 6:
        raise DomainError(f"--summary-t wants n1,m1,s1,n2,m2,s2, got {spec!r}")
    n1, m1, s1, n2, m2, s2 = parts
    return int(n1), float(m1), float(s1), int(n2), float(m2), float(s2)


def _parse_summary_anova(spec: str):
    groups = []
    for chunk in spec.split(";"):
        parts = [p.strip() for p in chunk.split(",")]
        if len(parts) != 3:
            raise DomainError(f"--summary-anova wants n,m,s;n,m,s;..., got {spec!r}")
        groups.append((int(parts[0]), float(parts[1]), float(parts[2])))
    return groups


@main.command("stats")
@click.argument("responses_file", required=False,
                type=click.Path(exists=True, dir_okay=False))
@click.option("--partition", "partition_key",
              type=click.Choice(sorted(grp.PARTITION_KEYS)), default="committee_service",
              show_default=True, help="Metadata used to split respondents.")
@click.option("--tests", "which", default="t,anova,correlation", show_default=True,
              help="Comma list from: t, anova, correlation.")
@click.option("--method", type=click.Choice(["rowsum", "eigenvector"]), default="rowsum",
              show_default=True, help="Per-respondent weight method.")
@click.option("--welch", is_flag=True, help="Use Welch instead of pooled t-tests.")
@click.option("--summary-t", "summary_t", multiple=True,
              help="Pooled t-test from summary stats: n1,m1,s1,n2,m2,s2 (repeatable).")
@click.option("--summary-anova", "summary_anova", multiple=True,
              help="One-way ANOVA from summaries: n,m,s;n,m,s;... (repeatable).")
@click.option("--output", "-o", default="-", help="Output path or - for stdout.")
def stats_cmd(responses_file, partition_key, which, method, welch,
              summary_t, summary_anova, output):
    """Run the statistical battery over per-respondent weights.

    With a responses CSV: derives weights per respondent, partitions them,
    and runs the requested tests. With --summary-t/--summary-anova only,
    reproduces tests from published summary statistics.
    """
    wanted = {w.strip() for w in which.split(",") if w.strip()}
    unknown = wanted - {"t", "anova", "correlation"}
    if unknown:
        _fail(EXIT_PARSE, DomainError(f"unknown tests {sorted(unknown)}"))
    if responses_file is None and not (summary_t or summary_anova):
        _fail(EXIT_PARSE, DomainError(
            "need a responses CSV or at least one --summary-t/--summary-anova"))

    labeled: list[stats.LabeledTest] = []
    skipped: list[tuple[str, str]] = []
    try:
        for spec in summary_t:
            labeled.append(stats.LabeledTest(
                f"summary t: {spec}", stats.t_test_from_summary(*_parse_summary_t(spec))
            ))
        for spec in summary_anova:
            labeled.append(stats.LabeledTest(
                f"summary anova: {spec}",
                stats.one_way_anova_from_summary(_parse_summary_anova(spec)),
            ))
        if responses_file is not None:
            ds = ingest.parse_responses_csv(Path(responses_file).read_bytes())
            per = grp.per_respondent_weights(ds, method)
            skipped = [(s.id, s.reason) for s in per.skipped]
            groups = grp.partition(per.records, partition_key)
            if "t" in wanted:
                labeled.extend(stats.group_t_tests(
                    groups, "welch" if welch else "pooled"))
            if "anova" in wanted and len(groups) >= 2:
                labeled.extend(stats.group_anova(groups))
            if "correlation" in wanted and per.records:
                samples = {
                    crit: [float(r.weights.weights[k]) for r in per.records]
                    for k, crit in enumerate(per.records[0].weights.labels)
                }
                corr = stats.correlation_matrix(samples)
                k = len(corr.labels)
                for i in range(k):
                    for j in range(i + 1, k):
                        r_ij = corr.r[i, j]
                        if r_ij != r_ij:  # NaN cell, reported in issues
                            continue
                        labeled.append(stats.LabeledTest(
                            f"corr {corr.labels[i]} ~ {corr.labels[j]}",
                            stats.pearson(samples[corr.labels[i]], samples[corr.labels[j]]),
                        ))
    except ParseError as exc:
        _fail(EXIT_PARSE, exc)
    except ConvergenceError as exc:
        _fail(EXIT_NUMERIC, exc)
    except DomainError as exc:
        _fail(EXIT_PARSE, exc)

    _write_output(ingest.write_stats_report_json(
        labeled,
        partition=partition_key if responses_file else None,
        method=method if responses_file else None,
        skipped=skipped,
    ), output)


@main.command()
@click.option("--max-n", default=10, show_default=True, help="Largest matrix order.")
@click.option("--samples", default=simulate.DEFAULT_SAMPLES, show_default=True)
@click.option("--seed", default=None, type=int,
              help=f"RNG seed [default: AHP_SEED or {DEFAULT_SEED}].")
@click.option("--scale", "scale_name", type=click.Choice(["saaty", "study"]),
              default="saaty", show_default=True)
@click.option("--workers", default=1, show_default=True)
@click.option("--backend", type=click.Choice(["numba", "numpy"]), default=None,
              help="Kernel backend [default: AHP_BACKEND or auto].")
@click.option("--output", "-o", default="-", help="Output path or - for stdout.")
def ri(max_n, samples, seed, scale_name, workers, backend, output):
    """Monte Carlo random-index table (CSV: order,ri,std_error,samples,seed)."""
    seed = _default_seed() if seed is None else seed
    try:
        estimates = simulate.ri_table(
            max_n, samples, seed, scale_by_name(scale_name), workers, backend
        )
    except DomainError as exc:
        _fail(EXIT_PARSE, exc)
    click.echo(f"backend: {backend_name(backend)}", err=True)
    _write_output(ingest.write_ri_csv(estimates), output)


@main.command()
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", default=8000, show_default=True)
@click.option("--static-dir", type=click.Path(file_okay=False), default=None,
              help="Directory with the built UI bundle.")
@click.option("--journal-dir", type=click.Path(file_okay=False), default=None,
              help="Enable per-session JSON-lines journals here (replayed on start).")
def serve(host, port, static_dir, journal_dir):
    """Run the elicitation session API (and static UI, if configured)."""
    from .service import make_server

    server = make_server(host, port, static_dir, journal_dir)
    bound_host, bound_port = server.server_address[:2]
    click.echo(f"serving on http://{bound_host}:{bound_port}/", err=True)
    try:
        server.serve_forever()
    except KeyboardInterrupt:
        pass
    finally:
        server.server_close()


if __name__ == "__main__":
    main()
