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

"""Train/probe splits and top-L evaluation of ranked latent links."""

from __future__ import annotations

import enum
import logging
import math
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace
from typing import AbstractSet, Callable, Iterator, Sequence

import numpy as np
from tqdm import tqdm

from .clustering import ClusteringProfile
from .errors import ConfigError, EvaluationError, LinkPredError
from .graph import Graph
from .indices import (
    ALC_COUNTERPARTS,
    CandidateSet,
    IndexConfig,
    IndexKind,
    ScoredPair,
    candidate_distance,
    candidate_pairs,
    score_pairs,
)

logger = logging.getLogger(__name__)

Pair = tuple[int, int]
PairScorer = Callable[[np.ndarray, np.ndarray], np.ndarray]

# globalized defaults switch at this many links
LARGE_NETWORK_LINKS = 1000


class Task(enum.Enum):
    GLOBALIZED = "globalized"
    PERSONALIZED = "personalized"

    @classmethod
    def parse(cls, name: str) -> Task:
        try:
            return cls(name.strip().lower())
        except ValueError:
            valid = ", ".join(t.value for t in cls)
            raise ConfigError(
                f"Unknown task {name!r}; valid tasks: {valid}"
            ) from None


def default_top_l(task: Task, edge_count: int) -> int:
    if task is Task.PERSONALIZED:
        return 5
    return 20 if edge_count < LARGE_NETWORK_LINKS else 100


def default_l_grid(task: Task, edge_count: int) -> tuple[int, ...]:
    if task is Task.PERSONALIZED:
        return tuple(range(1, 6))
    if edge_count < LARGE_NETWORK_LINKS:
        return tuple(range(2, 21, 2))
    return tuple(range(10, 101, 10))


def default_k_grid(task: Task) -> tuple[int, ...]:
    if task is Task.PERSONALIZED:
        return tuple(range(1, 6))
    return tuple(range(1, 101))


def probe_size(edge_count: int, fraction: float) -> int:
    """round-half-up of fraction * |E|"""
    return int(math.floor(fraction * edge_count + 0.5))


@dataclass(frozen=True)
class Split:
    train: Graph
    probe: frozenset[Pair]
    fraction: float
    seed: int

    @property
    def probe_array(self) -> np.ndarray:
        return np.array(sorted(self.probe), dtype=np.int64).reshape(-1, 2)


def split_edges(g: Graph, fraction: float, seed: int) -> Split:
    """Move a uniform random sample of round(fraction * |E|) edges into the
    probe set. The training graph keeps every node."""
    if not 0.0 <= fraction < 1.0:
        raise ConfigError(f"Probe fraction must be in [0, 1): {fraction}")
    if g.edge_count == 0:
        raise EvaluationError("Cannot split a graph without edges")
    edges = g.edge_array
    rng = np.random.default_rng(seed)
    chosen = rng.choice(
        g.edge_count, size=probe_size(g.edge_count, fraction), replace=False
    )
    mask = np.zeros(g.edge_count, dtype=bool)
    mask[chosen] = True
    train = Graph(g.labels, edges[~mask].tolist())
    probe = frozenset((int(x), int(y)) for x, y in edges[mask].tolist())
    return Split(train, probe, fraction, seed)


def _pair_keys(xs: np.ndarray, ys: np.ndarray, n: int) -> np.ndarray:
    return np.asarray(xs, dtype=np.int64) * n + np.asarray(ys, dtype=np.int64)


def _probe_keys(probe: AbstractSet[Pair], n: int) -> np.ndarray:
    if not probe:
        return np.zeros(0, dtype=np.int64)
    arr = np.array([(min(p), max(p)) for p in probe], dtype=np.int64)
    return np.unique(_pair_keys(arr[:, 0], arr[:, 1], n))


@dataclass(frozen=True)
class RankedPrediction:
    """Candidate pairs in descending score order.

    Ties are broken by the canonical pair (x, y) lexicographically, or by a
    seeded permutation when ``tie_rule`` is ``"random:<seed>"``.
    """

    xs: np.ndarray
    ys: np.ndarray
    scores: np.ndarray
    node_count: int
    tie_rule: str = "lexicographic"

    def __len__(self) -> int:
        return len(self.xs)

    def __iter__(self) -> Iterator[ScoredPair]:
        for x, y, s in zip(
            self.xs.tolist(), self.ys.tolist(), self.scores.tolist()
        ):
            yield ScoredPair(x, y, s)

    def top(self, length: int) -> list[ScoredPair]:
        return list(self)[:length]

    def hits(self, probe: AbstractSet[Pair]) -> np.ndarray:
        keys = _pair_keys(self.xs, self.ys, self.node_count)
        return np.isin(keys, _probe_keys(probe, self.node_count))


def rank_pairs(
    xs: np.ndarray,
    ys: np.ndarray,
    scores: np.ndarray,
    node_count: int,
    tie_seed: int | None = None,
) -> RankedPrediction:
    xs = np.asarray(xs, dtype=np.int64)
    ys = np.asarray(ys, dtype=np.int64)
    scores = np.asarray(scores, dtype=np.float64)
    # canonical (x, y) first so that the tie permutation is order-free too
    base = np.lexsort((ys, xs))
    xs, ys, scores = xs[base], ys[base], scores[base]
    if tie_seed is None:
        order = np.lexsort((ys, xs, -scores))
        rule = "lexicographic"
    else:
        perm = np.random.default_rng(tie_seed).permutation(len(xs))
        order = np.lexsort((perm, -scores))
        rule = f"random:{tie_seed}"
    return RankedPrediction(
        xs[order], ys[order], scores[order], node_count, rule
    )


@dataclass(frozen=True)
class PrecisionCurve:
    l_grid: tuple[int, ...]
    precision_at: tuple[float, ...]
    aup: float
    truncated: bool = False


@dataclass(frozen=True)
class HitKCurve:
    """needed_l[i] is the ranking depth at which k_grid[i] probe links have
    been seen, or None when the ranking never gets there.

    Personalized curves apply the per-node cap, so for them needed_l may be
    smaller than K.
    """

    k_grid: tuple[int, ...]
    needed_l: tuple[float | None, ...]
    capped: bool = False


def _check_grid(grid: Sequence[int], name: str, min_len: int = 1) -> None:
    if len(grid) < min_len:
        raise EvaluationError(f"{name} needs at least {min_len} values")
    if any(v < 1 for v in grid):
        raise EvaluationError(f"{name} values must be >= 1: {list(grid)}")
    if any(b <= a for a, b in zip(grid, grid[1:])):
        raise EvaluationError(f"{name} must be strictly increasing")


def _precision(hits: np.ndarray, length: int) -> tuple[float, bool]:
    if length < 1:
        raise EvaluationError(f"L must be >= 1: {length}")
    truncated = length > len(hits)
    if truncated:
        logger.debug(
            "L=%d exceeds the %d candidates; precision divides by L",
            length,
            len(hits),
        )
    return float(hits[:length].sum()) / length, truncated


def precision_at_L(
    ranked: RankedPrediction, probe: AbstractSet[Pair], L: int
) -> float:
    return _precision(ranked.hits(probe), L)[0]


def aup(
    ranked: RankedPrediction,
    probe: AbstractSet[Pair],
    l_grid: Sequence[int],
) -> PrecisionCurve:
    """Precision over an L grid; the area is the mean grid precision."""
    _check_grid(l_grid, "l_grid", min_len=2)
    hits = ranked.hits(probe)
    values = [_precision(hits, length) for length in l_grid]
    precisions = tuple(v for v, _ in values)
    return PrecisionCurve(
        tuple(l_grid),
        precisions,
        float(np.mean(precisions)),
        any(t for _, t in values),
    )


def hit_k_curve(
    ranked: RankedPrediction,
    probe: AbstractSet[Pair],
    k_grid: Sequence[int],
) -> HitKCurve:
    if not probe:
        raise EvaluationError("hit-K needs a non-empty probe set")
    _check_grid(k_grid, "k_grid")
    positions = np.flatnonzero(ranked.hits(probe)) + 1
    needed: list[float | None] = []
    for k in k_grid:
        needed.append(float(positions[k - 1]) if k <= len(positions) else None)
    unreachable = sum(v is None for v in needed)
    if unreachable:
        logger.debug(
            "%d of %d K values exceed the %d reachable probe links",
            unreachable,
            len(needed),
            len(positions),
        )
    return HitKCurve(tuple(k_grid), tuple(needed))


class PersonalizedRanking:
    """Per-node rankings of non-neighbours built from one set of pair scores.

    For node v the candidates are every u with (v, u) scored, ordered by
    score descending and then by u. Only nodes incident to at least one
    probe link take part in the averages.
    """

    def __init__(
        self,
        node_count: int,
        xs: np.ndarray,
        ys: np.ndarray,
        scores: np.ndarray,
        probe: AbstractSet[Pair],
    ) -> None:
        if not probe:
            raise EvaluationError("Personalized evaluation needs probe links")
        n = node_count
        src = np.concatenate([xs, ys]).astype(np.int64)
        dst = np.concatenate([ys, xs]).astype(np.int64)
        sc = np.concatenate([scores, scores]).astype(np.float64)
        order = np.lexsort((dst, -sc, src))
        src, dst = src[order], dst[order]
        starts = np.searchsorted(src, np.arange(n))
        self._rank = np.arange(len(src)) - starts[src]

        probe_arr = np.array(sorted(probe), dtype=np.int64).reshape(-1, 2)
        both = np.concatenate([probe_arr, probe_arr[:, ::-1]])
        probe_keys = np.unique(_pair_keys(both[:, 0], both[:, 1], n))
        hit = np.isin(_pair_keys(src, dst, n), probe_keys)
        self._hit_src = src[hit]
        self._hit_rank = self._rank[hit]
        self._probe_degree = np.bincount(both[:, 0], minlength=n)
        self._nodes = np.flatnonzero(self._probe_degree > 0)
        self._n = n

    @property
    def nodes(self) -> np.ndarray:
        """Nodes incident to at least one probe link."""
        return self._nodes

    def node_precision(self, L: int) -> dict[int, float]:
        """Precision per node with L capped at the node's probe degree."""
        if L < 1:
            raise EvaluationError(f"L must be >= 1: {L}")
        cap = np.minimum(L, self._probe_degree)
        counted = self._hit_rank < cap[self._hit_src]
        found = np.bincount(self._hit_src[counted], minlength=self._n)
        values = found[self._nodes] / cap[self._nodes]
        return {
            int(v): float(p) for v, p in zip(self._nodes.tolist(), values)
        }

    def precision(self, L: int) -> float:
        return float(np.mean(list(self.node_precision(L).values())))

    def curve(self, l_grid: Sequence[int]) -> PrecisionCurve:
        _check_grid(l_grid, "l_grid", min_len=2)
        precisions = tuple(self.precision(length) for length in l_grid)
        return PrecisionCurve(
            tuple(l_grid), precisions, float(np.mean(precisions))
        )

    def hit_k(self, k_grid: Sequence[int]) -> HitKCurve:
        """Mean depth of the min(K, reachable)-th probe partner per node."""
        _check_grid(k_grid, "k_grid")
        # hits are grouped by node and sorted by rank within the node
        order = np.lexsort((self._hit_rank, self._hit_src))
        hit_src = self._hit_src[order]
        hit_rank = self._hit_rank[order]
        reachable = np.bincount(hit_src, minlength=self._n)
        nodes = np.flatnonzero(reachable > 0)
        if len(nodes) == 0:
            return HitKCurve(
                tuple(k_grid), tuple(None for _ in k_grid), capped=True
            )
        first = np.searchsorted(hit_src, nodes)
        needed: list[float | None] = []
        for k in k_grid:
            take = np.minimum(k, reachable[nodes]) - 1
            needed.append(float(np.mean(hit_rank[first + take] + 1)))
        return HitKCurve(tuple(k_grid), tuple(needed), capped=True)


def personalized_topL(
    g_train: Graph,
    probe: AbstractSet[Pair],
    scorer: PairScorer,
    L: int,
    candidates: CandidateSet | None = None,
) -> dict[int, float]:
    """Per-node top-L precision; nodes without probe links are left out."""
    if candidates is None:
        candidates = candidate_pairs(g_train)
    scores = scorer(candidates.xs, candidates.ys)
    ranking = PersonalizedRanking(
        g_train.node_count, candidates.xs, candidates.ys, scores, probe
    )
    return ranking.node_precision(L)


@dataclass(frozen=True)
class EvalConfig:
    task: Task = Task.GLOBALIZED
    indices: tuple[IndexKind, ...] = tuple(IndexKind)
    L: int | None = None
    l_grid: tuple[int, ...] | None = None
    k_grid: tuple[int, ...] | None = None
    runs: int = 30
    base_seed: int = 0
    fraction: float = 0.1
    threads: int = 1
    distance2_candidates: bool = False
    epsilon_lp: float = 0.01
    clamp_eps: float = 1e-9
    tie_seed: int | None = None

    def __post_init__(self) -> None:
        if self.runs < 1:
            raise ConfigError(f"runs must be >= 1: {self.runs}")
        if self.L is not None and self.L < 1:
            raise ConfigError(f"L must be >= 1: {self.L}")
        if not 0.0 <= self.fraction < 1.0:
            raise ConfigError(f"probe must be in [0, 1): {self.fraction}")
        if self.threads < 1:
            raise ConfigError(f"threads must be >= 1: {self.threads}")
        if not self.indices:
            raise ConfigError("No index selected")
        try:
            if self.l_grid is not None:
                _check_grid(self.l_grid, "grid", min_len=2)
            if self.k_grid is not None:
                _check_grid(self.k_grid, "k_grid")
        except EvaluationError as e:
            raise ConfigError(str(e)) from None
        # validates epsilon_lp and clamp_eps
        self.index_config(self.indices[0])

    def index_config(self, kind: IndexKind) -> IndexConfig:
        return IndexConfig(kind, self.epsilon_lp, self.clamp_eps)

    def resolved(self, edge_count: int) -> EvalConfig:
        """Fill the L, grid and K defaults for a network of that size."""
        return replace(
            self,
            L=self.L or default_top_l(self.task, edge_count),
            l_grid=self.l_grid or default_l_grid(self.task, edge_count),
            k_grid=self.k_grid or default_k_grid(self.task),
        )

    def seeds(self) -> list[int]:
        return [self.base_seed + r for r in range(self.runs)]

    def as_dict(self) -> dict[str, object]:
        return {
            "task": self.task.value,
            "index": ",".join(kind.value for kind in self.indices),
            "L": self.L,
            "grid": list(self.l_grid) if self.l_grid else None,
            "k_grid": list(self.k_grid) if self.k_grid else None,
            "runs": self.runs,
            "seed": self.base_seed,
            "probe": self.fraction,
            "distance2_candidates": self.distance2_candidates,
            "epsilon_lp": self.epsilon_lp,
            "clamp_eps": self.clamp_eps,
            "tie_seed": self.tie_seed,
        }


@dataclass(frozen=True)
class RunResult:
    run: int
    seed: int
    index: IndexKind
    precision: float
    curve: PrecisionCurve
    hit_k: HitKCurve
    evaluated_nodes: int | None = None
    precision_truncated: bool = False


@dataclass(frozen=True)
class RunFailure:
    run: int
    seed: int
    index: IndexKind | None
    error: str


@dataclass(frozen=True)
class MetricSummary:
    mean: float
    std: float
    n: int

    @classmethod
    def of(cls, values: Sequence[float]) -> MetricSummary:
        if not values:
            return cls(math.nan, math.nan, 0)
        arr = np.asarray(values, dtype=np.float64)
        std = float(arr.std(ddof=1)) if len(arr) > 1 else math.nan
        return cls(float(arr.mean()), std, len(arr))

    @property
    def standard_error(self) -> float:
        return self.std / math.sqrt(self.n) if self.n else math.nan


@dataclass(frozen=True)
class IndexSummary:
    index: IndexKind
    precision: MetricSummary
    aup: MetricSummary
    curve: dict[int, MetricSummary]
    hit_k: dict[int, MetricSummary]


@dataclass
class BenchmarkReport:
    config: EvalConfig
    graph_nodes: int
    graph_links: int
    results: list[RunResult] = field(default_factory=list)
    failures: list[RunFailure] = field(default_factory=list)
    # (run, index or None, stage) -> seconds; kept out of the report files
    timings: list[tuple[int, str, str, float]] = field(default_factory=list)

    def summaries(self) -> dict[IndexKind, IndexSummary]:
        out: dict[IndexKind, IndexSummary] = {}
        assert self.config.l_grid is not None
        assert self.config.k_grid is not None
        for kind in self.config.indices:
            rows = [r for r in self.results if r.index is kind]
            curve = {
                length: MetricSummary.of(
                    [r.curve.precision_at[i] for r in rows]
                )
                for i, length in enumerate(self.config.l_grid)
            }
            hit_k: dict[int, MetricSummary] = {}
            for i, k in enumerate(self.config.k_grid):
                values = [r.hit_k.needed_l[i] for r in rows]
                reached = [v for v in values if v is not None]
                if len(reached) < len(values):
                    # only defined when every run found K probe links
                    hit_k[k] = MetricSummary(math.nan, math.nan, len(reached))
                else:
                    hit_k[k] = MetricSummary.of(reached)
            out[kind] = IndexSummary(
                kind,
                MetricSummary.of([r.precision for r in rows]),
                MetricSummary.of([r.curve.aup for r in rows]),
                curve,
                hit_k,
            )
        return out


@dataclass(frozen=True)
class CounterpartComparison:
    alc: IndexKind
    nc: IndexKind
    metric: str
    alc_mean: float
    nc_mean: float
    pooled_se: float

    @property
    def difference(self) -> float:
        return self.alc_mean - self.nc_mean

    @property
    def alc_not_worse(self) -> bool:
        return self.alc_mean >= self.nc_mean - self.pooled_se


def compare_counterparts(
    report: BenchmarkReport, metric: str = "aup"
) -> list[CounterpartComparison]:
    """ALC index vs the node clustering index it refines."""
    summaries = report.summaries()
    rows = []
    for alc_kind, nc_kind in ALC_COUNTERPARTS.items():
        if alc_kind not in summaries or nc_kind not in summaries:
            continue
        a = getattr(summaries[alc_kind], metric)
        b = getattr(summaries[nc_kind], metric)
        # a single run has no spread
        pooled = math.sqrt(
            sum(
                se**2
                for se in (a.standard_error, b.standard_error)
                if not math.isnan(se)
            )
        )
        rows.append(
            CounterpartComparison(
                alc_kind, nc_kind, metric, a.mean, b.mean, pooled
            )
        )
    return rows


def best_baseline(
    report: BenchmarkReport, metric: str = "aup"
) -> tuple[IndexKind, float] | None:
    """The best index that does not use asymmetric link clustering."""
    best: tuple[IndexKind, float] | None = None
    for kind, summary in report.summaries().items():
        if kind.is_alc:
            continue
        mean = getattr(summary, metric).mean
        if math.isnan(mean):
            continue
        if best is None or mean > best[1]:
            best = (kind, mean)
    return best


class _RunOutcome:
    def __init__(self) -> None:
        self.results: list[RunResult] = []
        self.failures: list[RunFailure] = []
        self.timings: list[tuple[int, str, str, float]] = []


def _run_once(
    g: Graph, config: EvalConfig, run: int, score_threads: int
) -> _RunOutcome:
    outcome = _RunOutcome()
    seed = config.base_seed + run
    assert config.L is not None
    assert config.l_grid is not None and config.k_grid is not None

    def timed(index: str, stage: str, started: float) -> None:
        seconds = time.perf_counter() - started
        logger.debug("run %d %s %s: %.4fs", run, index or "-", stage, seconds)
        outcome.timings.append((run, index, stage, seconds))

    try:
        t0 = time.perf_counter()
        split = split_edges(g, config.fraction, seed)
        timed("", "split", t0)
        if not split.probe:
            raise EvaluationError("probe set is empty")
        t0 = time.perf_counter()
        profile = ClusteringProfile.build(split.train)
        timed("", "profile", t0)
    except LinkPredError as e:
        logger.error("Run %d (seed %d) failed: %s", run, seed, e)
        outcome.failures.append(RunFailure(run, seed, None, str(e)))
        return outcome

    candidates: dict[int | None, CandidateSet] = {}
    for kind in config.indices:
        name = kind.value
        try:
            distance = candidate_distance(kind, config.distance2_candidates)
            if distance not in candidates:
                t0 = time.perf_counter()
                candidates[distance] = candidate_pairs(split.train, distance)
                timed("", f"candidates_d{distance or 'all'}", t0)
            cand = candidates[distance]

            t0 = time.perf_counter()
            scores = score_pairs(
                split.train,
                profile,
                config.index_config(kind),
                cand.xs,
                cand.ys,
                threads=score_threads,
            )
            timed(name, "score", t0)

            t0 = time.perf_counter()
            if config.task is Task.GLOBALIZED:
                ranked = rank_pairs(
                    cand.xs,
                    cand.ys,
                    scores,
                    split.train.node_count,
                    config.tie_seed,
                )
                timed(name, "rank", t0)
                t0 = time.perf_counter()
                precision, truncated = _precision(
                    ranked.hits(split.probe), config.L
                )
                result = RunResult(
                    run,
                    seed,
                    kind,
                    precision,
                    aup(ranked, split.probe, config.l_grid),
                    hit_k_curve(ranked, split.probe, config.k_grid),
                    precision_truncated=truncated,
                )
            else:
                personal = PersonalizedRanking(
                    split.train.node_count,
                    cand.xs,
                    cand.ys,
                    scores,
                    split.probe,
                )
                timed(name, "rank", t0)
                t0 = time.perf_counter()
                result = RunResult(
                    run,
                    seed,
                    kind,
                    personal.precision(config.L),
                    personal.curve(config.l_grid),
                    personal.hit_k(config.k_grid),
                    evaluated_nodes=len(personal.nodes),
                )
            timed(name, "evaluate", t0)
            outcome.results.append(result)
        except LinkPredError as e:
            logger.error(
                "Run %d (seed %d) failed for %s: %s",
                run,
                seed,
                kind.display_name,
                e,
            )
            outcome.failures.append(RunFailure(run, seed, kind, str(e)))
    return outcome


def run_benchmark(
    g: Graph, config: EvalConfig, progress: bool = False
) -> BenchmarkReport:
    """Run ``config.runs`` seeded split/score/rank/evaluate cycles.

    Run r uses seed ``base_seed + r``. Failed runs are listed in the report
    and left out of every mean.
    """
    config = config.resolved(g.edge_count)
    report = BenchmarkReport(config, g.node_count, g.edge_count)
    runs = range(config.runs)
    if config.threads > 1 and config.runs > 1:
        with ThreadPoolExecutor(max_workers=config.threads) as pool:
            outcomes = list(
                tqdm(
                    pool.map(lambda r: _run_once(g, config, r, 1), runs),
                    total=config.runs,
                    disable=not progress,
                    desc="runs",
                )
            )
    else:
        outcomes = [
            _run_once(g, config, r, config.threads)
            for r in tqdm(runs, disable=not progress, desc="runs")
        ]
    for outcome in outcomes:
        report.results.extend(outcome.results)
        report.failures.extend(outcome.failures)
        report.timings.extend(outcome.timings)
    truncated = sum(
        r.precision_truncated or r.curve.truncated for r in report.results
    )
    if truncated:
        logger.warning(
            "%d of %d results have L above the candidate count; "
            "precision divides by L",
            truncated,
            len(report.results),
        )
    unreached = sum(None in r.hit_k.needed_l for r in report.results)
    if unreached:
        logger.warning(
            "%d of %d results find fewer probe links than the largest K; "
            "those K are reported as NaN",
            unreached,
            len(report.results),
        )
    logger.info(
        "Finished %d runs: %d results, %d failures",
        config.runs,
        len(report.results),
        len(report.failures),
    )
    return report
