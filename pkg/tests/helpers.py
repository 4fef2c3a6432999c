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

"""Graph builders and brute-force reference implementations for tests.

Nothing here calls into alc_linkpred beyond building a ``Graph``; the
reference scores follow the index definitions with plain loops.
"""

from __future__ import annotations

import itertools
import math

import numpy as np

from alc_linkpred.graph import Graph
from alc_linkpred.indices import IndexKind

EPS = 1e-9


def make_graph(n: int, edges: list[tuple[int, int]]) -> Graph:
    return Graph([str(i) for i in range(n)], edges)


def erdos_renyi(n: int, p: float, seed: int) -> Graph:
    rng = np.random.default_rng(seed)
    edges = [
        (x, y)
        for x, y in itertools.combinations(range(n), 2)
        if rng.random() < p
    ]
    return make_graph(n, edges)


def er_corpus(size: int, seed: int = 0) -> list[Graph]:
    """Erdős–Rényi graphs with n <= 40 and p cycling through .1, .3, .5."""
    rng = np.random.default_rng(seed)
    graphs = []
    for i in range(size):
        n = int(rng.integers(5, 41))
        p = (0.1, 0.3, 0.5)[i % 3]
        graphs.append(erdos_renyi(n, p, seed * 100_003 + i))
    return graphs


def adjacency_sets(g: Graph) -> list[set[int]]:
    return [set(g.neighbors(x)) for x in range(g.node_count)]


def brute_triangles(adj: list[set[int]], z: int) -> int:
    count = 0
    for u in adj[z]:
        for v in adj[z]:
            if u < v and v in adj[u]:
                count += 1
    return count


def brute_node_clustering(adj: list[set[int]], z: int) -> float:
    k = len(adj[z])
    if k < 2:
        return 0.0
    return 2 * brute_triangles(adj, z) / (k * (k - 1))


def brute_shared(adj: list[set[int]], x: int, z: int) -> int:
    return sum(1 for w in adj[x] if w in adj[z])


def brute_alc(adj: list[set[int]], x: int, z: int) -> float:
    return brute_shared(adj, x, z) / (len(adj[z]) - 1)


def clamp(p: float) -> float:
    return min(max(p, EPS), 1.0 - EPS)


class NaiveScorer:
    """Reference implementation of every index by direct enumeration."""

    def __init__(self, g: Graph, epsilon_lp: float = 0.01) -> None:
        self.adj = adjacency_sets(g)
        n = len(self.adj)
        m = sum(len(s) for s in self.adj) // 2
        self.rho = clamp(2 * m / (n * (n - 1)))
        self.epsilon_lp = epsilon_lp
        dense = np.zeros((n, n))
        for x, row in enumerate(self.adj):
            for y in row:
                dense[x, y] = 1.0
        self.a3 = dense @ dense @ dense

    def common(self, x: int, y: int) -> list[int]:
        return sorted(z for z in self.adj[x] if z in self.adj[y])

    def c(self, z: int) -> float:
        return brute_node_clustering(self.adj, z)

    def score(self, kind: IndexKind, x: int, y: int) -> float:
        adj = self.adj
        cn = self.common(x, y)
        if kind is IndexKind.CN:
            return float(len(cn))
        if kind is IndexKind.LOCAL_PATH:
            return len(cn) + self.epsilon_lp * self.a3[x, y]
        if kind is IndexKind.RA:
            return sum(1.0 / len(adj[z]) for z in cn)
        if kind is IndexKind.CRA:
            total = 0.0
            for z in cn:
                gamma = sum(1 for w in cn if w in adj[z])
                total += gamma / len(adj[z])
            return total
        if kind is IndexKind.CCLP:
            return sum(self.c(z) for z in cn)
        if kind is IndexKind.LNBCN:
            total = 0.0
            for z in cn:
                c = clamp(self.c(z))
                total += math.log(c / (1 - c))
                total += math.log((1 - self.rho) / self.rho)
            return total
        if kind is IndexKind.MI:
            total = 0.0
            for z in cn:
                total += -math.log(self.rho) + math.log(clamp(self.c(z)))
            return total + math.log(self.rho)

        def oriented(seed: int) -> list[float]:
            return [brute_alc(adj, seed, z) for z in cn]

        if kind is IndexKind.ACC:
            return max(sum(oriented(x)), sum(oriented(y)))
        if kind is IndexKind.ALNB:
            best = 0.0
            for seed in (x, y):
                product = 1.0
                for lc in oriented(seed):
                    p1 = clamp(lc)
                    product *= ((1 - self.rho) * p1) / (self.rho * (1 - p1))
                best = product if seed == x else max(best, product)
            return best
        total_x = sum(
            -math.log(self.rho) + math.log(clamp(lc)) for lc in oriented(x)
        )
        total_y = sum(
            -math.log(self.rho) + math.log(clamp(lc)) for lc in oriented(y)
        )
        return max(total_x, total_y)
