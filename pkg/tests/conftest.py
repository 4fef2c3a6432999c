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

from __future__ import annotations

import itertools
import logging
import os
from pathlib import Path

import pytest
from helpers import er_corpus, make_graph

from alc_linkpred.graph import Graph, parse_edge_list

GREF_EDGES = "1 2\n1 3\n2 3\n2 4\n3 4\n4 5\n"


@pytest.fixture(autouse=True)
def _restore_logger_levels():
    """Undo logger level changes made by cli._setup_logging between tests."""
    names = ["alc_linkpred", "alc_linkpred.cli"]
    saved = {n: logging.getLogger(n).level for n in names}
    yield
    for n, level in saved.items():
        logging.getLogger(n).setLevel(level)


@pytest.fixture
def gref() -> Graph:
    """Nodes 1..5 (ids 0..4); two triangles sharing edge 2-3, pendant 5."""
    return parse_edge_list(GREF_EDGES.splitlines()).graph


@pytest.fixture
def gref_file(tmp_path: Path) -> Path:
    path = tmp_path / "gref.txt"
    path.write_text(GREF_EDGES)
    return path


@pytest.fixture
def k4() -> Graph:
    return make_graph(4, list(itertools.combinations(range(4), 2)))


@pytest.fixture
def k4_minus_e() -> Graph:
    edges = [e for e in itertools.combinations(range(4), 2) if e != (0, 1)]
    return make_graph(4, edges)


@pytest.fixture
def star() -> Graph:
    return make_graph(6, [(0, i) for i in range(1, 6)])


@pytest.fixture
def karate() -> Graph:
    nx = pytest.importorskip("networkx")
    g = nx.karate_club_graph()
    lines = [f"{u} {v}" for u, v in g.edges()]
    return parse_edge_list(lines).graph


@pytest.fixture
def karate_file(tmp_path: Path) -> Path:
    nx = pytest.importorskip("networkx")
    path = tmp_path / "karate.txt"
    path.write_text(
        "".join(f"{u} {v}\n" for u, v in nx.karate_club_graph().edges())
    )
    return path


@pytest.fixture(scope="session")
def small_corpus() -> list[Graph]:
    return er_corpus(40, seed=1)


@pytest.fixture(scope="session")
def full_corpus() -> list[Graph]:
    return er_corpus(200, seed=2)


@pytest.fixture(scope="session")
def dolphins_path() -> Path:
    candidates = [
        os.environ.get("ALC_LINKPRED_DOLPHINS"),
        str(Path(__file__).resolve().parent.parent / "data" / "dolphins.txt"),
    ]
    for candidate in candidates:
        if candidate and Path(candidate).is_file():
            return Path(candidate)
    if os.environ.get("ALC_LINKPRED_REQUIRE_DOLPHINS"):
        pytest.fail("Dolphins edge list required but not found")
    pytest.skip("Dolphins edge list not available")
