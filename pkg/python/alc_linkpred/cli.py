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

"""``alc-linkpred`` command line front end.

Exit codes: 0 on success, 1 for usage or configuration errors, 2 for data
errors (unreadable or malformed input, unknown nodes, failed evaluation).
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path
from typing import Sequence

import numpy as np

from . import __version__
from .clustering import ClusteringProfile
from .config import (
    CONFIG_KEYS,
    build_eval_config,
    merge_settings,
    output_format,
    read_config_file,
)
from .errors import ConfigError, LinkPredError
from .evaluation import (
    EvalConfig,
    RankedPrediction,
    Task,
    default_top_l,
    rank_pairs,
    run_benchmark,
)
from .graph import Graph, network_stats, read_edge_list
from .indices import (
    CandidateSet,
    IndexConfig,
    IndexKind,
    candidate_distance,
    candidate_pairs,
    score_pairs,
)
from .report import (
    hitk_csv,
    hitk_json,
    report_csv,
    report_json,
    scores_csv,
    stats_csv,
    stats_json,
    timing_csv,
)
from .util.format import PredictionTextFormatter

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DATA = 2

_SUBCOMMAND_TASKS = {
    "eval-global": Task.GLOBALIZED,
    "eval-personal": Task.PERSONALIZED,
}


class UsageError(Exception):
    pass


class _ArgumentParser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # type: ignore[override]
        raise UsageError(f"{self.prog}: error: {message}")


def _common_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(add_help=False)
    parser.add_argument(
        "--input", type=str, required=True, help="edge list file"
    )
    parser.add_argument(
        "--config", type=str, default=None, help="key = value config file"
    )
    parser.add_argument(
        "--out", type=str, default=None, help="output file (default: stdout)"
    )
    parser.add_argument(
        "--threads", type=int, default=None, help="maximum worker threads"
    )
    parser.add_argument(
        "-v", "--verbose", action="store_true", help="debug logging"
    )
    return parser


def _eval_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(add_help=False)
    parser.add_argument(
        "--index",
        type=str,
        default=None,
        help="comma separated index names or 'all'",
    )
    parser.add_argument(
        "--probe", type=float, default=None, help="probe fraction of links"
    )
    parser.add_argument("--runs", type=int, default=None, help="runs")
    parser.add_argument("--seed", type=int, default=None, help="base seed")
    parser.add_argument("--L", type=int, default=None, help="top-L length")
    parser.add_argument(
        "--grid", type=str, default=None, help="AUP grid, '2,4' or '2:20:2'"
    )
    parser.add_argument(
        "--k-grid", type=str, default=None, help="hit-K grid, e.g. '1:100'"
    )
    parser.add_argument(
        "--task",
        type=str,
        default=None,
        choices=[t.value for t in Task],
        help="prediction task",
    )
    parser.add_argument(
        "--format", type=str, default=None, choices=["csv", "json"]
    )
    parser.add_argument(
        "--distance2-candidates",
        type=str,
        default=None,
        choices=["on", "off"],
        help="only score pairs that share a neighbour (or a 3-walk for "
        "localpath)",
    )
    parser.add_argument(
        "--tie-seed",
        type=int,
        default=None,
        help="break score ties by a seeded permutation",
    )
    parser.add_argument(
        "--progress", action="store_true", help="show a progress bar"
    )
    return parser


def build_parser() -> argparse.ArgumentParser:
    parser = _ArgumentParser(
        prog="alc-linkpred",
        description="link prediction with asymmetric link clustering",
    )
    parser.add_argument(
        "--version", action="version", version=f"%(prog)s {__version__}"
    )
    sub = parser.add_subparsers(dest="command", required=True)
    common = _common_parser()
    evaluation = _eval_parser()

    stats = sub.add_parser(
        "stats", parents=[common], help="network statistics"
    )
    stats.add_argument(
        "--format", type=str, default=None, choices=["csv", "json"]
    )

    predict = sub.add_parser(
        "predict", parents=[common], help="top-L latent links"
    )
    predict.add_argument("--index", type=str, default=None, help="index")
    predict.add_argument("--L", type=int, default=None, help="list length")
    predict.add_argument(
        "--node", type=str, default=None, help="rank partners of this label"
    )
    predict.add_argument(
        "--format", type=str, default=None, choices=["csv", "json", "text"]
    )
    predict.add_argument(
        "--distance2-candidates",
        type=str,
        default=None,
        choices=["on", "off"],
    )
    predict.add_argument("--tie-seed", type=int, default=None)

    for name, help_text in (
        ("eval-global", "globalized precision, AUP and hit-K"),
        ("eval-personal", "personalized precision, AUP and hit-K"),
        ("hitk", "hit-K curves only"),
    ):
        sub.add_parser(name, parents=[common, evaluation], help=help_text)

    return parser


def parse_args(argv: Sequence[str] | None = None) -> argparse.Namespace:
    return build_parser().parse_args(argv)


def _settings(args: argparse.Namespace) -> dict[str, object]:
    file_values = read_config_file(args.config) if args.config else {}
    flags = {key: getattr(args, key, None) for key in CONFIG_KEYS}
    return merge_settings(file_values, flags)


def _emit(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
        return
    Path(out).write_text(text, encoding="utf-8")
    logger.info("Wrote %s", out)


def cmd_stats(args: argparse.Namespace) -> int:
    settings = _settings(args)
    fmt = output_format(settings)
    g = read_edge_list(args.input)
    stats = network_stats(g)
    if fmt == "json":
        text = stats_json(stats)
    else:
        text = stats_csv(
            stats, [f"alc-linkpred {__version__}", f"input: {args.input}"]
        )
    _emit(text, args.out)
    return EXIT_OK


def _node_candidates(
    g: Graph, node: int, max_distance: int | None = None
) -> CandidateSet:
    """Non-neighbours of ``node``, within ``max_distance`` hops if given."""
    reach: set[int] = set()
    if max_distance is None:
        reach.update(range(g.node_count))
    else:
        frontier = {node}
        for _ in range(max_distance):
            frontier = {u for v in frontier for u in g.neighbors(v)}
            reach |= frontier
    others = np.array(
        sorted(reach - g.neighbors(node) - {node}), dtype=np.int64
    )
    xs = np.minimum(others, node)
    ys = np.maximum(others, node)
    return CandidateSet(xs, ys)


def cmd_predict(args: argparse.Namespace) -> int:
    settings = _settings(args)
    fmt = str(settings.get("format", "csv")).lower()
    if fmt not in ("csv", "json", "text"):
        raise ConfigError(f"Unknown format {fmt!r} for predict")
    kinds = IndexKind.parse_list(str(settings.get("index", "cn")))
    if len(kinds) != 1:
        raise ConfigError("predict takes exactly one index")
    eval_config = build_eval_config(settings)
    kind = kinds[0]

    g = read_edge_list(args.input)
    node = g.node_id(args.node) if args.node is not None else None
    profile = ClusteringProfile.build(g)
    distance = candidate_distance(kind, eval_config.distance2_candidates)
    if node is None:
        candidates = candidate_pairs(g, distance)
        default_l = default_top_l(Task.GLOBALIZED, g.edge_count)
    else:
        candidates = _node_candidates(g, node, distance)
        default_l = default_top_l(Task.PERSONALIZED, g.edge_count)
    length = eval_config.L or default_l

    scores = score_pairs(
        g,
        profile,
        IndexConfig(kind, eval_config.epsilon_lp, eval_config.clamp_eps),
        candidates.xs,
        candidates.ys,
        threads=eval_config.threads,
    )
    ranked = rank_pairs(
        candidates.xs,
        candidates.ys,
        scores,
        g.node_count,
        eval_config.tie_seed,
    )
    if length > len(ranked):
        logger.warning(
            "L=%d exceeds the %d candidates; listing all of them",
            length,
            len(ranked),
        )
    text = _prediction_text(g, kind, ranked, length, node, fmt, eval_config)
    _emit(text, args.out)
    return EXIT_OK


def _prediction_text(
    g: Graph,
    kind: IndexKind,
    ranked: RankedPrediction,
    length: int,
    node: int | None,
    fmt: str,
    config: EvalConfig,
) -> str:
    top = ranked.top(length)
    if fmt == "text":
        formatter = PredictionTextFormatter(g.resolver)
        return formatter.gen_ranking_text(kind, top, node)
    echo = {
        "version": __version__,
        "index": kind.value,
        "L": length,
        "node": g.label(node) if node is not None else None,
        "tie_rule": ranked.tie_rule,
        "epsilon_lp": config.epsilon_lp,
        "clamp_eps": config.clamp_eps,
        "distance2_candidates": config.distance2_candidates,
    }
    if fmt == "json":
        doc = dict(echo)
        doc["predictions"] = [
            {"x": g.label(p.x), "y": g.label(p.y), "score": p.score}
            for p in top
        ]
        return json.dumps(doc, indent=2, allow_nan=False) + "\n"
    header = [
        f"alc-linkpred {__version__}",
        f"config: {json.dumps(echo, sort_keys=True)}",
    ]
    return scores_csv(g, kind, top, header)


def cmd_eval(args: argparse.Namespace) -> int:
    settings = _settings(args)
    fixed = _SUBCOMMAND_TASKS.get(args.command)
    if fixed is not None:
        given = settings.get("task")
        if args.task is not None and args.task != fixed.value:
            raise UsageError(
                f"{args.command} runs the {fixed.value} task; "
                f"--task {args.task} conflicts with it"
            )
        if given is not None and str(given).lower() != fixed.value:
            raise ConfigError(
                f"config file task {given!r} conflicts with {args.command}"
            )
        settings["task"] = fixed.value
    fmt = output_format(settings)
    config = build_eval_config(settings)

    g = read_edge_list(args.input)
    report = run_benchmark(g, config, progress=args.progress)
    if not report.results:
        raise LinkPredError(
            f"all {config.runs} runs failed; see the log for details"
        )

    if args.command == "hitk":
        text = hitk_json(report) if fmt == "json" else hitk_csv(report)
        _emit(text, args.out)
        return EXIT_OK

    if fmt == "json":
        _emit(report_json(report), args.out)
    else:
        _emit(report_csv(report), args.out)
        if args.out is not None:
            detail = Path(args.out).with_suffix(".json")
            if detail == Path(args.out):
                detail = detail.with_name(f"{detail.stem}.runs.json")
            _emit(report_json(report), str(detail))
    if args.out is not None:
        out = Path(args.out)
        timing = out.with_name(f"{out.stem}.timing.csv")
        _emit(timing_csv(report), str(timing))
    return EXIT_OK


_COMMANDS = {
    "stats": cmd_stats,
    "predict": cmd_predict,
    "eval-global": cmd_eval,
    "eval-personal": cmd_eval,
    "hitk": cmd_eval,
}


def _setup_logging(verbose: bool) -> None:
    if not logging.getLogger().handlers:
        logging.basicConfig(
            format="%(levelname)s %(name)s: %(message)s", stream=sys.stderr
        )
    logging.getLogger("alc_linkpred").setLevel(
        logging.DEBUG if verbose else logging.WARNING
    )
    logger.setLevel(logging.DEBUG if verbose else logging.INFO)


def main(argv: Sequence[str] | None = None) -> int:
    try:
        args = parse_args(argv)
    except UsageError as e:
        print(e, file=sys.stderr)
        return EXIT_USAGE
    _setup_logging(args.verbose)
    try:
        return _COMMANDS[args.command](args)
    except (UsageError, ConfigError) as e:
        print(f"alc-linkpred: error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except (LinkPredError, OSError) as e:
        print(f"alc-linkpred: error: {e}", file=sys.stderr)
        return EXIT_DATA


if __name__ == "__main__":
    sys.exit(main())
