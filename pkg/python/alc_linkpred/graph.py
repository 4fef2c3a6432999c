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

"""Undirected simple graphs, edge-list ingestion and network statistics."""

from __future__ import annotations

import logging
from dataclasses import dataclass, fields
from functools import cached_property
from typing import Iterable, Iterator, Literal, NamedTuple, Sequence

import numpy as np
import scipy.sparse as sp
from scipy.sparse.csgraph import shortest_path

from .clustering import ClusteringProfile
from .errors import EdgeListError, EmptyGraphError, UnknownNodeError
from .util.labels import NodeLabelResolver

logger = logging.getLogger(__name__)

LabelMode = Literal["auto", "string", "int"]

# sources per shortest_path call, bounds the distance block to 256 x |V|
_DISTANCE_BLOCK = 256


class Graph:
    """Immutable undirected simple graph over dense node ids 0..n-1."""

    def __init__(
        self, labels: Sequence[str], edges: Iterable[tuple[int, int]]
    ) -> None:
        self._resolver = NodeLabelResolver(labels)
        n = len(self._resolver)
        neighbors: list[set[int]] = [set() for _ in range(n)]
        for x, y in edges:
            x, y = int(x), int(y)
            if not (0 <= x < n and 0 <= y < n):
                raise UnknownNodeError((x, y))
            if x == y:
                raise ValueError(f"Self-loop on node {x} is not allowed")
            neighbors[x].add(y)
            neighbors[y].add(x)
        self._adjacency = tuple(frozenset(s) for s in neighbors)
        self._sorted = tuple(tuple(sorted(s)) for s in neighbors)
        self._edge_count = sum(len(s) for s in neighbors) // 2

    def __repr__(self) -> str:
        return f"Graph(nodes={self.node_count}, edges={self.edge_count})"

    @property
    def node_count(self) -> int:
        return len(self._adjacency)

    @property
    def edge_count(self) -> int:
        return self._edge_count

    @property
    def labels(self) -> tuple[str, ...]:
        return self._resolver.labels

    @property
    def resolver(self) -> NodeLabelResolver:
        return self._resolver

    def check_node(self, x: int) -> None:
        if not 0 <= x < len(self._adjacency):
            raise UnknownNodeError(x)

    def neighbors(self, x: int) -> frozenset[int]:
        self.check_node(x)
        return self._adjacency[x]

    def sorted_neighbors(self, x: int) -> tuple[int, ...]:
        self.check_node(x)
        return self._sorted[x]

    def degree(self, x: int) -> int:
        return len(self.neighbors(x))

    def has_edge(self, x: int, y: int) -> bool:
        self.check_node(y)
        return y in self.neighbors(x)

    def edges(self) -> Iterator[tuple[int, int]]:
        """Yield every edge once as (x, y) with x < y, lexicographically."""
        for x, row in enumerate(self._sorted):
            for y in row:
                if y > x:
                    yield (x, y)

    @cached_property
    def degrees(self) -> np.ndarray:
        k = np.fromiter(
            (len(s) for s in self._adjacency), dtype=np.int64, count=len(self)
        )
        k.flags.writeable = False
        return k

    @cached_property
    def edge_array(self) -> np.ndarray:
        """(|E|, 2) int64 array of canonical edges in lexicographic order."""
        arr = np.array(list(self.edges()), dtype=np.int64).reshape(-1, 2)
        arr.flags.writeable = False
        return arr

    @cached_property
    def adjacency_matrix(self) -> sp.csr_matrix:
        n = self.node_count
        indptr = np.zeros(n + 1, dtype=np.int64)
        indptr[1:] = np.cumsum(self.degrees)
        indices = np.fromiter(
            (y for row in self._sorted for y in row),
            dtype=np.int64,
            count=int(indptr[-1]),
        )
        data = np.ones(len(indices), dtype=np.int64)
        return sp.csr_matrix((data, indices, indptr), shape=(n, n))

    def __len__(self) -> int:
        return len(self._adjacency)

    def node_id(self, label: str) -> int:
        return self._resolver.get_id_by_label(label)

    def label(self, x: int) -> str:
        return self._resolver.get_label_by_id(x)


@dataclass(frozen=True)
class EdgeListOptions:
    comment_prefixes: tuple[str, ...] = ("#", "%")
    label_mode: LabelMode = "auto"


class EdgeListParseResult(NamedTuple):
    graph: Graph
    self_loops_dropped: int
    duplicates_merged: int


def _assign_ids(
    seen: list[str], label_mode: LabelMode
) -> tuple[list[str], dict[str, int]]:
    if label_mode != "string":
        try:
            values = {label: int(label) for label in seen}
        except ValueError:
            pass
        else:
            # "07" and "7" collapse to one integer label
            ordered = sorted(set(values.values()))
            index = {v: i for i, v in enumerate(ordered)}
            ids = {label: index[v] for label, v in values.items()}
            return [str(v) for v in ordered], ids
    return seen, {label: i for i, label in enumerate(seen)}


def parse_edge_list(
    source: Iterable[str], options: EdgeListOptions | None = None
) -> EdgeListParseResult:
    """Parse whitespace separated edge-list lines.

    Direction is discarded, self-loops are dropped and repeated edges are
    merged. Tokens after the second one on a line are ignored. Node ids are
    assigned in numeric label order when every label is an integer (or
    ``label_mode="int"``), otherwise in order of first appearance.
    """
    options = options or EdgeListOptions()
    raw_pairs: list[tuple[str, str]] = []
    seen: dict[str, None] = {}
    for line_number, line in enumerate(source, start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith(options.comment_prefixes):
            continue
        tokens = stripped.split()
        if len(tokens) < 2:
            raise EdgeListError(
                "expected two node labels", line_number, line.rstrip("\n")
            )
        u, v = tokens[0], tokens[1]
        if options.label_mode == "int":
            try:
                int(u), int(v)
            except ValueError:
                raise EdgeListError(
                    "non-integer node label", line_number, line.rstrip("\n")
                ) from None
        seen.setdefault(u)
        seen.setdefault(v)
        raw_pairs.append((u, v))

    labels, ids = _assign_ids(list(seen), options.label_mode)

    self_loops = 0
    duplicates = 0
    edges: set[tuple[int, int]] = set()
    for u, v in raw_pairs:
        x, y = ids[u], ids[v]
        if x == y:
            self_loops += 1
            continue
        pair = (x, y) if x < y else (y, x)
        if pair in edges:
            duplicates += 1
            continue
        edges.add(pair)

    if not edges:
        raise EmptyGraphError("edge list contains no edges")
    graph = Graph(labels, sorted(edges))
    return EdgeListParseResult(graph, self_loops, duplicates)


def load_edge_list(
    source: Iterable[str], options: EdgeListOptions | None = None
) -> Graph:
    result = parse_edge_list(source, options)
    logger.info(
        "Loaded %d nodes and %d edges (%d self-loops dropped, "
        "%d duplicates merged)",
        result.graph.node_count,
        result.graph.edge_count,
        result.self_loops_dropped,
        result.duplicates_merged,
    )
    return result.graph


def read_edge_list(path: str, options: EdgeListOptions | None = None) -> Graph:
    with open(path, encoding="utf-8") as f:
        try:
            return load_edge_list(f, options)
        except EdgeListError as e:
            raise e.with_path(path) from None


def common_neighbors(g: Graph, x: int, y: int) -> frozenset[int]:
    if x == y:
        raise ValueError("common_neighbors needs two distinct nodes")
    return g.neighbors(x) & g.neighbors(y)


@dataclass(frozen=True)
class NetworkStats:
    """Whole-network statistics, fields in the column order of the report."""

    n_nodes: int
    n_links: int
    avg_shortest_distance: float
    avg_degree: float
    heterogeneity: float
    avg_node_clustering: float
    avg_link_clustering: float
    assortativity: float
    density: float

    def as_rows(self) -> list[tuple[str, float]]:
        return [(f.name, getattr(self, f.name)) for f in fields(self)]


def average_shortest_distance(g: Graph) -> float:
    """Mean hop distance over ordered pairs that can reach each other."""
    a = g.adjacency_matrix
    total = 0.0
    reachable = 0
    for start in range(0, g.node_count, _DISTANCE_BLOCK):
        sources = np.arange(start, min(start + _DISTANCE_BLOCK, g.node_count))
        d = shortest_path(a, directed=False, unweighted=True, indices=sources)
        finite = np.isfinite(d) & (d > 0)
        total += float(d[finite].sum())
        reachable += int(finite.sum())
    if reachable == 0:
        return 0.0
    return total / reachable


def degree_assortativity(g: Graph) -> float:
    k = g.degrees.astype(np.float64)
    e = g.edge_array
    # both orientations of every edge
    a = np.concatenate([k[e[:, 0]], k[e[:, 1]]])
    b = np.concatenate([k[e[:, 1]], k[e[:, 0]]])
    da = a - a.mean()
    db = b - b.mean()
    var = float(np.sqrt((da * da).sum() * (db * db).sum()))
    if var == 0.0:
        return 0.0
    return float((da * db).sum() / var)


def density(g: Graph) -> float:
    n = g.node_count
    return 2.0 * g.edge_count / (n * (n - 1))


def network_stats(g: Graph) -> NetworkStats:
    if g.node_count < 2:
        raise EmptyGraphError("network statistics need at least two nodes")
    if g.edge_count == 0:
        raise EmptyGraphError("network statistics need at least one edge")
    profile = ClusteringProfile.build(g)
    k = g.degrees.astype(np.float64)
    mean_k = float(k.mean())
    return NetworkStats(
        n_nodes=g.node_count,
        n_links=g.edge_count,
        avg_shortest_distance=average_shortest_distance(g),
        avg_degree=2.0 * g.edge_count / g.node_count,
        heterogeneity=float((k * k).mean()) / (mean_k * mean_k),
        avg_node_clustering=profile.mean_node_clustering(),
        avg_link_clustering=profile.mean_link_clustering(),
        assortativity=degree_assortativity(g),
        density=density(g),
    )
