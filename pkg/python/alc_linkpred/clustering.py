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

"""Node clustering and asymmetric link clustering coefficients."""

from __future__ import annotations

import logging
from typing import TYPE_CHECKING

import numpy as np
import pandas as pd
import scipy.sparse as sp

from .errors import DegenerateDegreeError, NotAnEdgeError

if TYPE_CHECKING:
    from .graph import Graph

logger = logging.getLogger(__name__)


def _readonly(arr: np.ndarray) -> np.ndarray:
    arr.flags.writeable = False
    return arr


class ClusteringProfile:
    """Per-node triangle counts and per-edge shared-neighbour counts.

    Built once per training graph. ``shared_matrix`` has exactly the
    sparsity pattern of the adjacency matrix and stores
    ``|Γ(x) ∩ Γ(z)|`` for every oriented edge (x, z); ``alc_matrix`` holds
    ``LC[x, z] = shared[x, z] / (k_z - 1)`` on the same pattern (0 where
    ``k_z = 1``).
    """

    def __init__(self, graph: Graph, shared: sp.csr_matrix) -> None:
        self._graph = graph
        self._shared = shared
        k = graph.degrees
        self._triangles = _readonly(
            np.asarray(shared.sum(axis=1), dtype=np.int64).ravel() // 2
        )
        pairs = k * (k - 1)
        c = np.zeros(len(k), dtype=np.float64)
        np.divide(2 * self._triangles, pairs, out=c, where=k >= 2)
        self._node_coefficients = _readonly(c)

        denom = (k - 1)[shared.indices]
        lc = np.zeros(len(shared.data), dtype=np.float64)
        np.divide(shared.data, denom, out=lc, where=denom > 0)
        self._alc = sp.csr_matrix(
            (lc, shared.indices, shared.indptr), shape=shared.shape
        )

    @classmethod
    def build(cls, graph: Graph) -> ClusteringProfile:
        a = graph.adjacency_matrix
        # A + (A @ A) ∘ A keeps A's pattern even where no neighbour is shared
        shared = (a + (a @ a).multiply(a)).tocsr()
        shared.sort_indices()
        shared.data -= 1
        logger.debug(
            "Built clustering profile over %d nodes and %d edges",
            graph.node_count,
            graph.edge_count,
        )
        return cls(graph, shared)

    @property
    def graph(self) -> Graph:
        return self._graph

    @property
    def degrees(self) -> np.ndarray:
        return self._graph.degrees

    @property
    def triangles(self) -> np.ndarray:
        return self._triangles

    @property
    def node_coefficients(self) -> np.ndarray:
        return self._node_coefficients

    @property
    def shared_matrix(self) -> sp.csr_matrix:
        return self._shared

    @property
    def alc_matrix(self) -> sp.csr_matrix:
        return self._alc

    def total_triangles(self) -> int:
        return int(self._triangles.sum()) // 3

    def triangle_count(self, z: int) -> int:
        self._graph.check_node(z)
        return int(self._triangles[z])

    def shared_neighbors(self, x: int, z: int) -> int:
        """|Γ(x) ∩ Γ(z)| for an existing edge (x, z)."""
        if not self._graph.has_edge(x, z):
            raise NotAnEdgeError(f"({x}, {z}) is not an edge")
        row = slice(self._shared.indptr[x], self._shared.indptr[x + 1])
        pos = np.searchsorted(self._shared.indices[row], z)
        return int(self._shared.data[row][pos])

    def node_clustering(self, z: int) -> float:
        self._graph.check_node(z)
        k = int(self._graph.degrees[z])
        if k < 2:
            return 0.0
        return int(self._triangles[z]) / (k * (k - 1) / 2)

    def alc(self, x: int, z: int) -> float:
        shared = self.shared_neighbors(x, z)
        k = int(self._graph.degrees[z])
        if k < 2:
            raise DegenerateDegreeError(
                f"LC[{x}, {z}] is undefined because node {z} has degree 1"
            )
        return shared / (k - 1)

    def mean_node_clustering(self) -> float:
        return float(self._node_coefficients.mean())

    def mean_link_clustering(self) -> float:
        """Mean of LC over both orientations of every edge."""
        if self._alc.nnz == 0:
            return 0.0
        return float(self._alc.data.mean())

    def dump_nodes(self) -> pd.DataFrame:
        return pd.DataFrame(
            {
                "node": list(self._graph.labels),
                "k": self._graph.degrees,
                "t": self._triangles,
                "C": self._node_coefficients,
            }
        )

    def dump_links(self) -> pd.DataFrame:
        coo = self._alc.tocoo()
        labels = np.asarray(self._graph.labels, dtype=object)
        return pd.DataFrame(
            {"x": labels[coo.row], "z": labels[coo.col], "LC": coo.data}
        )


def node_clustering(profile: ClusteringProfile, z: int) -> float:
    return profile.node_clustering(z)


def alc(profile: ClusteringProfile, x: int, z: int) -> float:
    return profile.alc(x, z)
