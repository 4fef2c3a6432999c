#  Copyright 2026 The alc-linkpred Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#     http://www.apache.org/licenses/LICENSE-2.0
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""CSV and JSON renderings of statistics, scores and benchmark reports.

Every rendering is a pure function of its input, so identical runs give
identical bytes. Wall-clock timings live in their own table.
"""

from __future__ import annotations

import io
import json
import math
import numbers
from typing import Iterable, Sequence

import pandas as pd

from . import __version__
from .evaluation import (
    BenchmarkReport,
    CounterpartComparison,
    MetricSummary,
    Task,
    best_baseline,
)
from .graph import Graph, NetworkStats
from .indices import IndexKind, ScoredPair

STATS_FLOAT_FORMAT = "%.6g"
SCORE_FLOAT_FORMAT = "%.12g"
REPORT_COLUMNS = ("index", "metric", "param", "mean", "std", "runs")

PERSONALIZED_NOTE = (
    "personalized precision averages only nodes with at least one probe link"
)


def _to_csv(
    df: pd.DataFrame, float_format: str, header_lines: Sequence[str] = ()
) -> str:
    buf = io.StringIO()
    for line in header_lines:
        buf.write(f"# {line}\n")
    df.to_csv(buf, index=False, float_format=float_format, lineterminator="\n")
    return buf.getvalue()


def _finite_or_none(value: float) -> float | None:
    return None if math.isnan(value) else value


def stats_frame(
    stats: NetworkStats | Sequence[tuple[str, NetworkStats]],
) -> pd.DataFrame:
    """One row per network; ``stats`` is a single result or (name, result)
    pairs."""
    if isinstance(stats, NetworkStats):
        rows = [("", stats)]
    else:
        rows = list(stats)
    records = []
    for name, s in rows:
        record: dict[str, object] = {"network": name} if name else {}
        record.update(dict(s.as_rows()))
        records.append(record)
    return pd.DataFrame.from_records(records)


def _stat_value(value: float) -> str:
    if isinstance(value, numbers.Integral):
        return str(value)
    return STATS_FLOAT_FORMAT % value


def stats_csv(stats: NetworkStats, header_lines: Sequence[str] = ()) -> str:
    """One ``statistic,value`` row per field, floats to 6 significant digits."""
    df = pd.DataFrame(
        [(name, _stat_value(value)) for name, value in stats.as_rows()],
        columns=["statistic", "value"],
    )
    return _to_csv(df, STATS_FLOAT_FORMAT, header_lines)


def stats_json(stats: NetworkStats) -> str:
    return json.dumps(dict(stats.as_rows()), indent=2) + "\n"


def scores_frame(
    g: Graph, kind: IndexKind, pairs: Iterable[ScoredPair]
) -> pd.DataFrame:
    rows = [
        (g.label(p.x), g.label(p.y), kind.value, p.score) for p in pairs
    ]
    return pd.DataFrame(rows, columns=["x_label", "y_label", "index", "score"])


def scores_csv(
    g: Graph,
    kind: IndexKind,
    pairs: Iterable[ScoredPair],
    header_lines: Sequence[str] = (),
) -> str:
    return _to_csv(
        scores_frame(g, kind, pairs), SCORE_FLOAT_FORMAT, header_lines
    )


def _config_echo(report: BenchmarkReport) -> dict[str, object]:
    return {
        "version": __version__,
        "config": report.config.as_dict(),
        "seeds": report.config.seeds(),
        "graph": {"nodes": report.graph_nodes, "links": report.graph_links},
    }


def report_header(report: BenchmarkReport) -> list[str]:
    echo = _config_echo(report)
    seeds = report.config.seeds()
    lines = [
        f"alc-linkpred {__version__}",
        f"config: {json.dumps(echo['config'], sort_keys=True)}",
        f"seeds: {seeds[0]}..{seeds[-1]}",
        f"graph: nodes={report.graph_nodes} links={report.graph_links}",
        f"failed runs: {len(report.failures)}",
    ]
    if report.config.task is Task.PERSONALIZED:
        lines.append(PERSONALIZED_NOTE)
    if any(
        r.precision_truncated or r.curve.truncated for r in report.results
    ):
        lines.append("some L exceeded the candidate count (divided by L)")
    return lines


def _summary_row(
    kind: IndexKind, metric: str, param: int | None, s: MetricSummary
) -> tuple[object, ...]:
    return (kind.value, metric, param, s.mean, s.std, s.n)


def report_frame(report: BenchmarkReport) -> pd.DataFrame:
    """Rows: precision at L, aup, precision per grid L and needed L per K."""
    rows = []
    for kind, summary in report.summaries().items():
        rows.append(
            _summary_row(kind, "precision", report.config.L, summary.precision)
        )
        rows.append(_summary_row(kind, "aup", None, summary.aup))
        for length, s in summary.curve.items():
            rows.append(_summary_row(kind, "precision_curve", length, s))
        for k, s in summary.hit_k.items():
            rows.append(_summary_row(kind, "hit_k", k, s))
    df = pd.DataFrame(rows, columns=list(REPORT_COLUMNS))
    df["param"] = df["param"].astype("Int64")
    return df


def report_csv(report: BenchmarkReport) -> str:
    return _to_csv(
        report_frame(report), SCORE_FLOAT_FORMAT, report_header(report)
    )


def report_json(report: BenchmarkReport) -> str:
    runs = []
    for r in sorted(report.results, key=lambda r: (r.run, r.index.value)):
        runs.append(
            {
                "run": r.run,
                "seed": r.seed,
                "index": r.index.value,
                "precision": r.precision,
                "aup": r.curve.aup,
                "precision_curve": dict(
                    zip(map(str, r.curve.l_grid), r.curve.precision_at)
                ),
                "precision_truncated": r.precision_truncated,
                "truncated": r.curve.truncated,
                "hit_k": dict(zip(map(str, r.hit_k.k_grid), r.hit_k.needed_l)),
                "hit_k_capped": r.hit_k.capped,
                "evaluated_nodes": r.evaluated_nodes,
            }
        )
    summaries: dict[str, object] = {}
    for kind, s in report.summaries().items():
        summaries[kind.value] = {
            "precision": _summary_dict(s.precision),
            "aup": _summary_dict(s.aup),
        }
    doc = dict(_config_echo(report))
    if report.config.task is Task.PERSONALIZED:
        doc["note"] = PERSONALIZED_NOTE
    doc["summary"] = summaries
    doc["runs"] = runs
    doc["failures"] = [
        {
            "run": f.run,
            "seed": f.seed,
            "index": f.index.value if f.index else None,
            "error": f.error,
        }
        for f in report.failures
    ]
    return json.dumps(doc, indent=2, allow_nan=False) + "\n"


def hitk_frame(report: BenchmarkReport) -> pd.DataFrame:
    """Mean needed L per (index, K); runs counts the runs reaching K."""
    df = report_frame(report)
    df = df[df["metric"] == "hit_k"].drop(columns="metric")
    return df.rename(columns={"param": "K", "mean": "needed_L"}).reset_index(
        drop=True
    )


def hitk_csv(report: BenchmarkReport) -> str:
    return _to_csv(
        hitk_frame(report), SCORE_FLOAT_FORMAT, report_header(report)
    )


def hitk_json(report: BenchmarkReport) -> str:
    doc = dict(_config_echo(report))
    doc["hit_k"] = {
        kind.value: {
            str(k): _summary_dict(s) for k, s in summary.hit_k.items()
        }
        for kind, summary in report.summaries().items()
    }
    return json.dumps(doc, indent=2, allow_nan=False) + "\n"


def _summary_dict(s: MetricSummary) -> dict[str, object]:
    return {
        "mean": _finite_or_none(s.mean),
        "std": _finite_or_none(s.std),
        "runs": s.n,
    }


def timing_frame(report: BenchmarkReport) -> pd.DataFrame:
    """Mean wall-clock seconds per (index, stage); shared stages have an
    empty index."""
    df = pd.DataFrame(
        report.timings, columns=["run", "index", "stage", "seconds"]
    )
    if df.empty:
        return pd.DataFrame(columns=["index", "stage", "mean_seconds", "runs"])
    grouped = df.groupby(["index", "stage"], sort=True)["seconds"]
    out = grouped.agg(["mean", "count"]).reset_index()
    return out.rename(columns={"mean": "mean_seconds", "count": "runs"})


def timing_csv(report: BenchmarkReport) -> str:
    return _to_csv(timing_frame(report), "%.6f")


def comparison_frame(
    comparisons: Sequence[CounterpartComparison],
    report: BenchmarkReport | None = None,
    network: str | None = None,
) -> pd.DataFrame:
    baseline = None
    if report is not None and comparisons:
        baseline = best_baseline(report, comparisons[0].metric)
    rows = []
    for c in comparisons:
        row: dict[str, object] = {"network": network} if network else {}
        row.update(
            {
                "alc": c.alc.value,
                "nc": c.nc.value,
                "metric": c.metric,
                "alc_mean": c.alc_mean,
                "nc_mean": c.nc_mean,
                "difference": c.difference,
                "pooled_se": c.pooled_se,
                "alc_not_worse": c.alc_not_worse,
            }
        )
        if baseline is not None:
            row["best_baseline"] = baseline[0].value
            row["best_baseline_mean"] = baseline[1]
        rows.append(row)
    return pd.DataFrame.from_records(rows)


def comparison_csv(frame: pd.DataFrame) -> str:
    return _to_csv(frame, SCORE_FLOAT_FORMAT)
