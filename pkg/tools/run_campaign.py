#!/usr/bin/env python3
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

import argparse
import logging
import os
import sys
from pathlib import Path

import pandas as pd

sys.path.append(os.path.dirname(os.path.abspath(__file__)) + "/../python")

from alc_linkpred.errors import LinkPredError  # noqa: E402
from alc_linkpred.evaluation import (  # noqa: E402
    EvalConfig,
    Task,
    compare_counterparts,
    run_benchmark,
)
from alc_linkpred.graph import network_stats, read_edge_list  # noqa: E402
from alc_linkpred.report import (  # noqa: E402
    comparison_csv,
    comparison_frame,
    stats_frame,
)

logger = logging.getLogger("run_campaign")


def parse_args() -> argparse.Namespace:
    parser = argparse.ArgumentParser(
        description="compare ALC indices with their node clustering "
        "counterparts on every edge list in a directory"
    )

    parser.add_argument(
        "--data_dir",
        type=str,
        required=True,
        help="directory holding *.txt or *.edges edge lists",
    )
    parser.add_argument(
        "--output_dir",
        type=str,
        default=os.getcwd(),
        help="output directory",
    )
    parser.add_argument("--runs", type=int, default=50, help="runs per file")
    parser.add_argument("--seed", type=int, default=0, help="base seed")
    parser.add_argument(
        "--task",
        type=str,
        default=Task.GLOBALIZED.value,
        choices=[t.value for t in Task],
    )
    parser.add_argument(
        "--metric", type=str, default="aup", choices=["aup", "precision"]
    )
    parser.add_argument("--threads", type=int, default=1)
    return parser.parse_args()


def main() -> None:
    args = parse_args()
    logging.basicConfig(
        level=logging.INFO, format="%(levelname)s %(name)s: %(message)s"
    )

    paths = sorted(
        p
        for p in Path(args.data_dir).iterdir()
        if p.suffix in (".txt", ".edges")
    )
    if not paths:
        logger.error("No edge lists found in %s", args.data_dir)
        sys.exit(1)

    config = EvalConfig(
        task=Task(args.task),
        runs=args.runs,
        base_seed=args.seed,
        threads=args.threads,
    )
    stats = []
    tables = []
    for path in paths:
        name = path.stem
        try:
            g = read_edge_list(str(path))
            stats.append((name, network_stats(g)))
            report = run_benchmark(g, config, progress=True)
        except LinkPredError as e:
            logger.error("Skipping %s: %s", name, e)
            continue
        comparisons = compare_counterparts(report, args.metric)
        tables.append(comparison_frame(comparisons, report, network=name))
        for c in comparisons:
            logger.info(
                "%s %s-%s: %.4f vs %.4f (pooled SE %.4f)",
                name,
                c.alc.display_name,
                c.nc.display_name,
                c.alc_mean,
                c.nc_mean,
                c.pooled_se,
            )

    output_dir = Path(args.output_dir)
    output_dir.mkdir(parents=True, exist_ok=True)
    if stats:
        stats_frame(stats).to_csv(
            output_dir / "network_stats.csv", index=False, float_format="%.6g"
        )
    if tables:
        table = pd.concat(tables, ignore_index=True)
        (output_dir / f"comparison_{args.task}_{args.metric}.csv").write_text(
            comparison_csv(table), encoding="utf-8"
        )


if __name__ == "__main__":
    main()
