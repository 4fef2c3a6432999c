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

"""Common-neighbour similarity indices.

Every index is available twice: as a per-pair function (``score_cn`` ...)
that follows the definition literally, and through the batch engine
(``score_pairs``) that evaluates many pairs at once with sparse matrix
products. Both give the same values up to floating point summation order.
"""

from __future__ import annotations

import enum
import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable, Iterable, Iterator, NamedTuple

import numpy as np
import scipy.sparse as sp

from .clustering import ClusteringProfile
from .errors import ConfigError, LinkPredError, ScoringError, UnknownNodeError
from .graph import Graph, density

logger = logging.getLogger(__name__)

# exp() stays finite below this (overflow starts near 709.78)
MAX_LOG_SCORE = 700.0

DEFAULT_CHUNK_SIZE = 1 << 15


class IndexKind(enum.Enum):
    CN = "cn"
    LOCAL_PATH = "localpath"
    RA = "ra"
    CRA = "cra"
    CCLP = "cclp"
    LNBCN = "lnbcn"
    MI = "mi"
    ACC = "acc"
    ALNB = "alnb"
    AMI = "ami"

    @property
    def display_name(self) -> str:
        return _DISPLAY_NAMES[self]

    @property
    def is_alc(self) -> bool:
        return self in ALC_COUNTERPARTS

    @classmethod
    def parse(cls, name: str) -> IndexKind:
        key = name.strip().lower().replace("_", "").replace("-", "")
        for kind in cls:
            if kind.value == key:
                return kind
        valid = ", ".join(kind.value for kind in cls)
        raise ConfigError(f"Unknown index {name!r}; valid names: {valid}")

    @classmethod
    def parse_list(cls, names: str) -> tuple[IndexKind, ...]:
        if names.strip().lower() == "all":
            return tuple(cls)
        kinds = [cls.parse(name) for name in names.split(",") if name.strip()]
        if not kinds:
            raise ConfigError("No index selected")
        return tuple(dict.fromkeys(kinds))


_DISPLAY_NAMES = {
    IndexKind.CN: "CN",
    IndexKind.LOCAL_PATH: "LocalPath",
    IndexKind.RA: "RA",
    IndexKind.CRA: "CRA",
    IndexKind.CCLP: "CCLP",
    IndexKind.LNBCN: "LNBCN",
    IndexKind.MI: "MI",
    IndexKind.ACC: "ACC",
    IndexKind.ALNB: "ALNB",
    IndexKind.AMI: "AMI",
}

# ALC index -> the node clustering index it refines
ALC_COUNTERPARTS = {
    IndexKind.ACC: IndexKind.CCLP,
    IndexKind.ALNB: IndexKind.LNBCN,
    IndexKind.AMI: IndexKind.MI,
}


@dataclass(frozen=True)
class IndexConfig:
    kind: IndexKind
    epsilon_lp: float = 0.01
    clamp_eps: float = 1e-9
    log_base: float = math.e

    def __post_init__(self) -> None:
        if not self.epsilon_lp > 0:
            raise ConfigError(f"epsilon_lp must be > 0: {self.epsilon_lp}")
        if not 0 < self.clamp_eps < 0.5:
            raise ConfigError(f"clamp_eps out of (0, 0.5): {self.clamp_eps}")
        if not (self.log_base > 0 and self.log_base != 1):
            raise ConfigError(f"Invalid log base: {self.log_base}")


class ScoredPair(NamedTuple):
    x: int
    y: int
    score: float


class CommonNeighborhood(NamedTuple):
    pair: tuple[int, int]
    cn_set: frozenset[int]
    gamma_size: dict[int, int]

    @classmethod
    def of(cls, g: Graph, x: int, y: int) -> CommonNeighborhood:
        cn = g.neighbors(x) & g.neighbors(y)
        gamma = {z: len(g.neighbors(z) & cn) for z in cn}
        return cls((x, y), cn, gamma)


def _clamp(p: float, eps: float) -> float:
    return min(max(p, eps), 1.0 - eps)


class ProbabilityEstimates:
    """Probabilities of the local naive Bayes and information models.

    The prior P(A1) is the network density; the conditional probability of
    a link given an edge (x, z) to a common neighbour is LC[x, z]. All values
    are clamped into [eps, 1 - eps].
    """

    def __init__(self, rho: float, clamp_eps: float) -> None:
        self.clamp_eps = clamp_eps
        self.p_link = _clamp(rho, clamp_eps)
        self.p_nolink = 1.0 - self.p_link

    @classmethod
    def from_profile(
        cls, profile: ClusteringProfile, clamp_eps: float
    ) -> ProbabilityEstimates:
        g = profile.graph
        rho = density(g) if g.node_count >= 2 else 0.0
        return cls(rho, clamp_eps)

    def p_link_given_edge(self, lc: float) -> float:
        return _clamp(lc, self.clamp_eps)

    def p_nolink_given_edge(self, lc: float) -> float:
        return 1.0 - self.p_link_given_edge(lc)


def _check_pair(g: Graph, x: int, y: int) -> frozenset[int]:
    if x == y:
        raise ValueError("A pair needs two distinct nodes")
    return g.neighbors(x) & g.neighbors(y)


def _log(v: float, base: float) -> float:
    return math.log(v) / math.log(base) if base != math.e else math.log(v)


def score_cn(g: Graph, profile: ClusteringProfile, x: int, y: int) -> float:
    return float(len(_check_pair(g, x, y)))


def score_local_path(
    g: Graph, x: int, y: int, epsilon_lp: float = 0.01
) -> float:
    cn = _check_pair(g, x, y)
    ny = g.neighbors(y)
    a3 = sum(len(g.neighbors(u) & ny) for u in g.neighbors(x))
    return len(cn) + epsilon_lp * a3


def score_ra(g: Graph, profile: ClusteringProfile, x: int, y: int) -> float:
    return sum(1.0 / g.degree(z) for z in sorted(_check_pair(g, x, y)))


def score_cra(g: Graph, profile: ClusteringProfile, x: int, y: int) -> float:
    _check_pair(g, x, y)
    hood = CommonNeighborhood.of(g, x, y)
    return sum(
        hood.gamma_size[z] / g.degree(z) for z in sorted(hood.cn_set)
    )


def score_cclp(g: Graph, profile: ClusteringProfile, x: int, y: int) -> float:
    return sum(profile.node_clustering(z) for z in sorted(_check_pair(g, x, y)))


def score_lnbcn(
    g: Graph,
    profile: ClusteringProfile,
    x: int,
    y: int,
    clamp_eps: float = 1e-9,
    log_base: float = math.e,
) -> float:
    probs = ProbabilityEstimates.from_profile(profile, clamp_eps)
    prior = _log(probs.p_nolink / probs.p_link, log_base)
    total = 0.0
    for z in sorted(_check_pair(g, x, y)):
        c = _clamp(profile.node_clustering(z), clamp_eps)
        total += _log(c / (1.0 - c), log_base) + prior
    return total


def score_mi(
    g: Graph,
    profile: ClusteringProfile,
    x: int,
    y: int,
    clamp_eps: float = 1e-9,
    log_base: float = math.e,
) -> float:
    probs = ProbabilityEstimates.from_profile(profile, clamp_eps)
    self_info = -_log(probs.p_link, log_base)
    total = 0.0
    for z in sorted(_check_pair(g, x, y)):
        c = _clamp(profile.node_clustering(z), clamp_eps)
        total += self_info + _log(c, log_base)
    return total - self_info


def _orientation_sums(
    profile: ClusteringProfile,
    x: int,
    y: int,
    term: Callable[[float], float],
) -> tuple[float, float]:
    cn = sorted(_check_pair(profile.graph, x, y))
    sx = sum(term(profile.alc(x, z)) for z in cn)
    sy = sum(term(profile.alc(y, z)) for z in cn)
    return sx, sy


def score_acc(g: Graph, profile: ClusteringProfile, x: int, y: int) -> float:
    return max(_orientation_sums(profile, x, y, lambda lc: lc))


def score_alnb(
    g: Graph,
    profile: ClusteringProfile,
    x: int,
    y: int,
    clamp_eps: float = 1e-9,
) -> float:
    probs = ProbabilityEstimates.from_profile(profile, clamp_eps)

    def log_factor(lc: float) -> float:
        p1 = probs.p_link_given_edge(lc)
        return math.log(probs.p_nolink * p1) - math.log(
            probs.p_link * (1.0 - p1)
        )

    # the product is taken in log space so saturated factors cannot overflow
    best = max(_orientation_sums(profile, x, y, log_factor))
    return math.exp(min(best, MAX_LOG_SCORE))


def score_ami(
    g: Graph,
    profile: ClusteringProfile,
    x: int,
    y: int,
    clamp_eps: float = 1e-9,
    log_base: float = math.e,
) -> float:
    probs = ProbabilityEstimates.from_profile(profile, clamp_eps)
    self_info = -_log(probs.p_link, log_base)

    def mutual_information(lc: float) -> float:
        return self_info + _log(probs.p_link_given_edge(lc), log_base)

    return max(_orientation_sums(profile, x, y, mutual_information))


def score_pair(
    g: Graph, profile: ClusteringProfile, config: IndexConfig, x: int, y: int
) -> float:
    kind = config.kind
    if kind is IndexKind.CN:
        return score_cn(g, profile, x, y)
    if kind is IndexKind.LOCAL_PATH:
        return score_local_path(g, x, y, config.epsilon_lp)
    if kind is IndexKind.RA:
        return score_ra(g, profile, x, y)
    if kind is IndexKind.CRA:
        return score_cra(g, profile, x, y)
    if kind is IndexKind.CCLP:
        return score_cclp(g, profile, x, y)
    if kind is IndexKind.LNBCN:
        return score_lnbcn(
            g, profile, x, y, config.clamp_eps, config.log_base
        )
    if kind is IndexKind.MI:
        return score_mi(g, profile, x, y, config.clamp_eps, config.log_base)
    if kind is IndexKind.ACC:
        return score_acc(g, profile, x, y)
    if kind is IndexKind.ALNB:
        return score_alnb(g, profile, x, y, config.clamp_eps)
    return score_ami(g, profile, x, y, config.clamp_eps, config.log_base)


class CandidateSet(NamedTuple):
    xs: np.ndarray
    ys: np.ndarray

    def __len__(self) -> int:
        return len(self.xs)


def candidate_distance(kind: IndexKind, restrict: bool) -> int | None:
    """Search radius that keeps the restricted candidate set exact."""
    if not restrict:
        return None
    return 3 if kind is IndexKind.LOCAL_PATH else 2


def candidate_pairs(g: Graph, max_distance: int | None = None) -> CandidateSet:
    """Unordered non-adjacent pairs (x < y) in lexicographic order.

    With ``max_distance`` (2 or 3) only pairs joined by a walk of at most
    that length are kept.
    """
    n = g.node_count
    if max_distance is None:
        xs_parts: list[np.ndarray] = []
        ys_parts: list[np.ndarray] = []
        for x in range(n):
            row = np.arange(x + 1, n, dtype=np.int64)
            nbrs = np.fromiter(g.sorted_neighbors(x), dtype=np.int64)
            row = np.setdiff1d(row, nbrs, assume_unique=True)
            xs_parts.append(np.full(len(row), x, dtype=np.int64))
            ys_parts.append(row)
        if not xs_parts:
            empty = np.zeros(0, dtype=np.int64)
            return CandidateSet(empty, empty.copy())
        return CandidateSet(np.concatenate(xs_parts), np.concatenate(ys_parts))

    if max_distance not in (2, 3):
        raise ConfigError(f"Unsupported candidate distance: {max_distance}")
    a = g.adjacency_matrix
    reach = a @ a
    if max_distance == 3:
        reach = reach + reach @ a
    reach = sp.triu(reach, k=1).tocoo()
    keys = np.unique(reach.row.astype(np.int64) * n + reach.col)
    edges = g.edge_array
    edge_keys = edges[:, 0] * n + edges[:, 1]
    keys = np.setdiff1d(keys, edge_keys, assume_unique=True)
    return CandidateSet(keys // n, keys % n)


class _BatchScorer:
    """Vectorised evaluation of one index over arrays of pairs."""

    def __init__(
        self, g: Graph, profile: ClusteringProfile, config: IndexConfig
    ) -> None:
        self._g = g
        self._profile = profile
        self._config = config
        self._a = g.adjacency_matrix.astype(np.float64)
        probs = ProbabilityEstimates.from_profile(profile, config.clamp_eps)
        self._probs = probs
        ln_base = math.log(config.log_base)
        eps = config.clamp_eps
        k = g.degrees.astype(np.float64)
        kind = config.kind

        self._node_weights: np.ndarray | None = None
        self._a2: sp.csr_matrix | None = None
        self._edge_weights: sp.csr_matrix | None = None
        self._offset = 0.0
        if kind is IndexKind.CN:
            self._node_weights = np.ones(len(k))
        elif kind in (IndexKind.RA, IndexKind.CRA):
            inv_k = np.zeros(len(k))
            np.divide(1.0, k, out=inv_k, where=k > 0)
            self._node_weights = inv_k
        elif kind is IndexKind.CCLP:
            self._node_weights = profile.node_coefficients.astype(np.float64)
        elif kind is IndexKind.LNBCN:
            c = np.clip(profile.node_coefficients, eps, 1.0 - eps)
            prior = math.log(probs.p_nolink / probs.p_link)
            self._node_weights = (np.log(c / (1.0 - c)) + prior) / ln_base
        elif kind is IndexKind.MI:
            c = np.clip(profile.node_coefficients, eps, 1.0 - eps)
            self_info = -math.log(probs.p_link) / ln_base
            self._node_weights = self_info + np.log(c) / ln_base
            self._offset = -self_info
        elif kind is IndexKind.LOCAL_PATH:
            self._a2 = self._a @ self._a
        else:
            lc_matrix = profile.alc_matrix
            lc = lc_matrix.data
            if kind is IndexKind.ACC:
                data = lc.copy()
            elif kind is IndexKind.ALNB:
                p1 = np.clip(lc, eps, 1.0 - eps)
                data = np.log(probs.p_nolink * p1) - np.log(
                    probs.p_link * (1.0 - p1)
                )
            else:
                p1 = np.clip(lc, eps, 1.0 - eps)
                data = (np.log(p1) - math.log(probs.p_link)) / ln_base
            self._edge_weights = sp.csr_matrix(
                (data, lc_matrix.indices, lc_matrix.indptr),
                shape=lc_matrix.shape,
            )

    def __call__(self, xs: np.ndarray, ys: np.ndarray) -> np.ndarray:
        a = self._a
        kind = self._config.kind
        # row p holds the common neighbours of (xs[p], ys[p])
        common = a[xs].multiply(a[ys]).tocsr()

        if kind is IndexKind.LOCAL_PATH:
            a2 = np.asarray(common.sum(axis=1)).ravel()
            assert self._a2 is not None
            a3 = np.asarray(self._a2[xs].multiply(a[ys]).sum(axis=1)).ravel()
            return a2 + self._config.epsilon_lp * a3

        if kind is IndexKind.CRA:
            gamma = (common @ a).multiply(common)
            assert self._node_weights is not None
            return np.asarray(gamma @ self._node_weights).ravel()

        if self._node_weights is not None:
            scores = np.asarray(common @ self._node_weights).ravel()
            return scores + self._offset

        assert self._edge_weights is not None
        w = self._edge_weights
        sx = np.asarray(w[xs].multiply(common).sum(axis=1)).ravel()
        sy = np.asarray(w[ys].multiply(common).sum(axis=1)).ravel()
        best = np.maximum(sx, sy)
        if kind is IndexKind.ALNB:
            return np.exp(np.minimum(best, MAX_LOG_SCORE))
        return best


def score_pairs(
    g: Graph,
    profile: ClusteringProfile,
    config: IndexConfig,
    xs: np.ndarray,
    ys: np.ndarray,
    threads: int = 1,
    chunk_size: int = DEFAULT_CHUNK_SIZE,
) -> np.ndarray:
    """Score the pairs (xs[i], ys[i]); the result does not depend on
    ``threads`` or ``chunk_size``."""
    xs = np.asarray(xs, dtype=np.int64)
    ys = np.asarray(ys, dtype=np.int64)
    if len(xs) == 0:
        return np.zeros(0, dtype=np.float64)
    scorer = _BatchScorer(g, profile, config)
    bounds = [
        (start, min(start + chunk_size, len(xs)))
        for start in range(0, len(xs), chunk_size)
    ]

    def run(bound: tuple[int, int]) -> np.ndarray:
        lo, hi = bound
        return scorer(xs[lo:hi], ys[lo:hi])

    if threads > 1 and len(bounds) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            parts = list(pool.map(run, bounds))
    else:
        parts = [run(b) for b in bounds]
    return np.concatenate(parts).astype(np.float64, copy=False)


def score_all_candidates(
    g: Graph,
    profile: ClusteringProfile,
    config: IndexConfig,
    candidates: Iterable[tuple[int, int]],
    threads: int = 1,
) -> Iterator[ScoredPair]:
    """Score a stream of candidate pairs.

    Pairs are canonicalised to x < y and emitted in (x, y) order, so the
    output does not depend on the input order or on worker scheduling.
    Every input pair yields one output, duplicates included.
    """
    canonical: list[tuple[int, int]] = []
    for x, y in candidates:
        try:
            g.check_node(x)
            g.check_node(y)
            if x == y:
                raise ValueError("A pair needs two distinct nodes")
        except (UnknownNodeError, ValueError) as e:
            raise ScoringError((x, y), e) from e
        canonical.append((x, y) if x < y else (y, x))
    if not canonical:
        return
    pairs = np.array(sorted(canonical), dtype=np.int64)
    xs, ys = pairs[:, 0], pairs[:, 1]
    scores = score_pairs(g, profile, config, xs, ys, threads=threads)
    bad = np.flatnonzero(~np.isfinite(scores))
    if len(bad):
        p = int(bad[0])
        raise ScoringError(
            (int(xs[p]), int(ys[p])),
            LinkPredError(f"non-finite {config.kind.display_name} score"),
        )
    for x, y, s in zip(xs.tolist(), ys.tolist(), scores.tolist()):
        yield ScoredPair(x, y, s)
