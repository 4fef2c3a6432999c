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

__version__ = "0.1.0"

from .clustering import ClusteringProfile, alc, node_clustering  # noqa: E402
from .errors import (  # noqa: E402
    ConfigError,
    DegenerateDegreeError,
    EdgeListError,
    EmptyGraphError,
    EvaluationError,
    LinkPredError,
    NotAnEdgeError,
    ScoringError,
    UnknownNodeError,
)
from .evaluation import (  # noqa: E402
    EvalConfig,
    HitKCurve,
    PersonalizedRanking,
    PrecisionCurve,
    RankedPrediction,
    Split,
    Task,
    aup,
    compare_counterparts,
    hit_k_curve,
    personalized_topL,
    precision_at_L,
    rank_pairs,
    run_benchmark,
    split_edges,
)
from .graph import (  # noqa: E402
    EdgeListOptions,
    Graph,
    NetworkStats,
    common_neighbors,
    load_edge_list,
    network_stats,
    parse_edge_list,
    read_edge_list,
)
from .indices import (  # noqa: E402
    IndexConfig,
    IndexKind,
    ScoredPair,
    candidate_pairs,
    score_all_candidates,
    score_pair,
    score_pairs,
)

__all__ = [
    "ClusteringProfile",
    "ConfigError",
    "DegenerateDegreeError",
    "EdgeListError",
    "EdgeListOptions",
    "EmptyGraphError",
    "EvalConfig",
    "EvaluationError",
    "Graph",
    "HitKCurve",
    "IndexConfig",
    "IndexKind",
    "LinkPredError",
    "NetworkStats",
    "NotAnEdgeError",
    "PersonalizedRanking",
    "PrecisionCurve",
    "RankedPrediction",
    "ScoredPair",
    "ScoringError",
    "Split",
    "Task",
    "UnknownNodeError",
    "alc",
    "aup",
    "candidate_pairs",
    "common_neighbors",
    "compare_counterparts",
    "hit_k_curve",
    "load_edge_list",
    "network_stats",
    "node_clustering",
    "parse_edge_list",
    "personalized_topL",
    "precision_at_L",
    "rank_pairs",
    "read_edge_list",
    "run_benchmark",
    "score_all_candidates",
    "score_pair",
    "score_pairs",
    "split_edges",
]
