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

import math

import numpy as np
import pytest
from helpers import NaiveScorer, make_graph

from alc_linkpred.clustering import ClusteringProfile
from alc_linkpred.errors import ConfigError, ScoringError
from alc_linkpred.graph import Graph
from alc_linkpred.indices import (
    IndexConfig,
    IndexKind,
    ScoredPair,
    candidate_distance,
    candidate_pairs,
    score_all_candidates,
    score_pair,
    score_pairs,
)

ALL_KINDS = list(IndexKind)


def _score(g: Graph, kind: IndexKind, x: int, y: int, **kwargs) -> float:
    profile = ClusteringProfile.build(g)
    return score_pair(g, profile, IndexConfig(kind, **kwargs), x, y)


def _batch(g: Graph, kind: IndexKind, xs, ys, **kwargs) -> np.ndarray:
    profile = ClusteringProfile.build(g)
    return score_pairs(
        g,
        profile,
        IndexConfig(kind, **kwargs),
        np.asarray(xs, dtype=np.int64),
        np.asarray(ys, dtype=np.int64),
    )


# Gref ids: label - 1
GOLDEN = [
    (IndexKind.CN, (0, 3), 2.0),
    (IndexKind.CN, (1, 4), 1.0),
    (IndexKind.LOCAL_PATH, (0, 3), 2.02),
    (IndexKind.LOCAL_PATH, (0, 4), 0.02),
    (IndexKind.RA, (0, 3), 2 / 3),
    (IndexKind.CRA, (0, 3), 2 / 3),
    (IndexKind.CRA, (1, 4), 0.0),
    (IndexKind.CCLP, (0, 3), 4 / 3),
    (IndexKind.LNBCN, (0, 3), 0.5754),
    (IndexKind.MI, (0, 3), -0.3001),
    (IndexKind.ACC, (0, 3), 1.0),
    (IndexKind.ACC, (1, 4), 0.5),
    (IndexKind.ALNB, (0, 3), 0.4444),
    (IndexKind.AMI, (0, 3), -0.3646),
]


class TestGoldenValues:
    @pytest.mark.parametrize("kind, pair, expected", GOLDEN)
    def test_per_pair(self, gref: Graph, kind, pair, expected) -> None:
        assert _score(gref, kind, *pair) == pytest.approx(expected, abs=1e-4)

    @pytest.mark.parametrize("kind, pair, expected", GOLDEN)
    def test_batch(self, gref: Graph, kind, pair, expected) -> None:
        scores = _batch(gref, kind, [pair[0]], [pair[1]])
        assert scores[0] == pytest.approx(expected, abs=1e-4)

    def test_cn_over_all_non_edges(self, gref: Graph) -> None:
        candidates = candidate_pairs(gref)
        pairs = list(zip(candidates.xs.tolist(), candidates.ys.tolist()))
        assert pairs == [(0, 3), (0, 4), (1, 4), (2, 4)]
        scores = _batch(gref, IndexKind.CN, candidates.xs, candidates.ys)
        assert scores.tolist() == [2.0, 0.0, 1.0, 1.0]

    def test_no_common_neighbour_scores(self, gref: Graph) -> None:
        # (1, 5) share no neighbour
        assert _score(gref, IndexKind.CN, 0, 4) == 0.0
        assert _score(gref, IndexKind.ACC, 0, 4) == 0.0
        assert _score(gref, IndexKind.ALNB, 0, 4) == 1.0
        assert _score(gref, IndexKind.AMI, 0, 4) == 0.0
        assert _score(gref, IndexKind.MI, 0, 4) == pytest.approx(math.log(0.6))


class TestIndexKind:
    def test_parse_accepts_display_names(self) -> None:
        assert IndexKind.parse("LocalPath") is IndexKind.LOCAL_PATH
        assert IndexKind.parse(" ACC ") is IndexKind.ACC

    def test_parse_lists_valid_names(self) -> None:
        with pytest.raises(ConfigError) as info:
            IndexKind.parse("adamic")
        assert "cclp" in str(info.value)

    def test_parse_list(self) -> None:
        assert IndexKind.parse_list("acc,cclp,acc") == (
            IndexKind.ACC,
            IndexKind.CCLP,
        )
        assert IndexKind.parse_list("all") == tuple(IndexKind)

    def test_counterparts(self) -> None:
        alc = [k for k in IndexKind if k.is_alc]
        assert alc == [IndexKind.ACC, IndexKind.ALNB, IndexKind.AMI]

    def test_config_validation(self) -> None:
        with pytest.raises(ConfigError):
            IndexConfig(IndexKind.LOCAL_PATH, epsilon_lp=0.0)
        with pytest.raises(ConfigError):
            IndexConfig(IndexKind.MI, clamp_eps=0.7)
        with pytest.raises(ConfigError):
            IndexConfig(IndexKind.MI, log_base=1.0)


class TestOracle:
    @pytest.mark.parametrize("kind", ALL_KINDS, ids=lambda k: k.value)
    def test_batch_matches_naive(self, small_corpus, kind) -> None:
        for g in small_corpus:
            naive = NaiveScorer(g)
            candidates = candidate_pairs(g)
            scores = _batch(g, kind, candidates.xs, candidates.ys)
            for x, y, s in zip(
                candidates.xs.tolist(), candidates.ys.tolist(), scores
            ):
                assert s == pytest.approx(
                    naive.score(kind, x, y), rel=1e-10, abs=1e-10
                )

    @pytest.mark.parametrize("kind", ALL_KINDS, ids=lambda k: k.value)
    def test_per_pair_matches_naive(self, small_corpus, kind) -> None:
        for g in small_corpus[:10]:
            naive = NaiveScorer(g)
            profile = ClusteringProfile.build(g)
            config = IndexConfig(kind)
            candidates = candidate_pairs(g)
            for x, y in zip(candidates.xs.tolist(), candidates.ys.tolist()):
                assert score_pair(g, profile, config, x, y) == pytest.approx(
                    naive.score(kind, x, y), rel=1e-10, abs=1e-10
                )

    @pytest.mark.slow
    @pytest.mark.parametrize("kind", ALL_KINDS, ids=lambda k: k.value)
    def test_full_corpus(self, full_corpus, kind) -> None:
        for g in full_corpus:
            naive = NaiveScorer(g)
            candidates = candidate_pairs(g)
            scores = _batch(g, kind, candidates.xs, candidates.ys)
            expected = [
                naive.score(kind, x, y)
                for x, y in zip(candidates.xs.tolist(), candidates.ys.tolist())
            ]
            assert scores.tolist() == pytest.approx(
                expected, rel=1e-10, abs=1e-10
            )


class TestProperties:
    @pytest.mark.parametrize("kind", ALL_KINDS, ids=lambda k: k.value)
    def test_symmetric_and_finite(
        self, small_corpus, star, k4_minus_e, kind
    ) -> None:
        # the star makes every common neighbour have C = 0
        for g in [*small_corpus, star, k4_minus_e]:
            candidates = candidate_pairs(g)
            forward = _batch(g, kind, candidates.xs, candidates.ys)
            backward = _batch(g, kind, candidates.ys, candidates.xs)
            assert np.isfinite(forward).all()
            np.testing.assert_allclose(forward, backward, rtol=1e-12)

    def test_per_pair_symmetry(self, gref: Graph) -> None:
        profile = ClusteringProfile.build(gref)
        for kind in IndexKind:
            config = IndexConfig(kind)
            for x, y in [(0, 3), (0, 4), (1, 4), (2, 4)]:
                assert score_pair(gref, profile, config, x, y) == (
                    pytest.approx(score_pair(gref, profile, config, y, x))
                )

    def test_many_clustered_common_neighbours_stay_finite(self) -> None:
        edges = [(0, z) for z in range(2, 12)] + [(1, z) for z in range(2, 12)]
        edges += [(z, z + 1) for z in range(2, 11)]
        g = make_graph(12, edges)
        for kind in (IndexKind.ALNB, IndexKind.AMI, IndexKind.ACC):
            assert math.isfinite(_score(g, kind, 0, 1))
            assert np.isfinite(_batch(g, kind, [0], [1])).all()

    @pytest.mark.parametrize(
        "kind", [IndexKind.LNBCN, IndexKind.MI, IndexKind.AMI]
    )
    def test_log_base_does_not_change_the_order(
        self, small_corpus, kind
    ) -> None:
        for g in small_corpus[:10]:
            candidates = candidate_pairs(g)
            natural = _batch(g, kind, candidates.xs, candidates.ys)
            binary = _batch(
                g, kind, candidates.xs, candidates.ys, log_base=2.0
            )
            np.testing.assert_allclose(
                binary, natural / math.log(2.0), rtol=1e-9, atol=1e-12
            )
            order = np.argsort(-natural, kind="stable")
            assert (np.diff(binary[order]) <= 1e-9).all()

    @pytest.mark.parametrize("n,k", [(9, 4), (12, 6), (11, 4), (10, 2)])
    def test_acc_sides_agree_on_ring_lattices(self, n, k) -> None:
        edges = {
            (min(x, (x + s) % n), max(x, (x + s) % n))
            for x in range(n)
            for s in range(1, k // 2 + 1)
        }
        g = make_graph(n, sorted(edges))
        assert {g.degree(x) for x in range(n)} == {k}
        profile = ClusteringProfile.build(g)
        candidates = candidate_pairs(g, 2)
        for x, y in zip(candidates.xs.tolist(), candidates.ys.tolist()):
            shared = g.neighbors(x) & g.neighbors(y)
            x_side = sum(profile.alc(x, z) for z in shared)
            y_side = sum(profile.alc(y, z) for z in shared)
            assert x_side == pytest.approx(y_side)
            assert _score(g, IndexKind.ACC, x, y) == pytest.approx(x_side)

    def test_alnb_log_cap(self) -> None:
        hub = 400
        edges = [(0, z) for z in range(2, hub)]
        edges += [(1, z) for z in range(2, hub)]
        edges += [(z, z + 1) for z in range(2, hub - 1)]
        g = make_graph(hub, edges)
        score = _batch(g, IndexKind.ALNB, [0], [1])[0]
        assert math.isfinite(score)
        assert score > 1e300

    def test_chunking_and_threads_do_not_change_scores(
        self, small_corpus
    ) -> None:
        g = max(small_corpus, key=lambda g: g.node_count)
        profile = ClusteringProfile.build(g)
        config = IndexConfig(IndexKind.AMI)
        candidates = candidate_pairs(g)
        whole = score_pairs(g, profile, config, *candidates)
        chunked = score_pairs(
            g, profile, config, *candidates, threads=4, chunk_size=7
        )
        np.testing.assert_array_equal(whole, chunked)


class TestCandidates:
    def test_all_pairs_are_non_edges(self, small_corpus) -> None:
        for g in small_corpus:
            c = candidate_pairs(g)
            n = g.node_count
            assert len(c) == n * (n - 1) // 2 - g.edge_count
            assert all(
                x < y and not g.has_edge(x, y)
                for x, y in zip(c.xs.tolist(), c.ys.tolist())
            )

    def test_distance_two_keeps_every_positive_score(
        self, small_corpus
    ) -> None:
        for g in small_corpus:
            full = candidate_pairs(g)
            near = candidate_pairs(g, 2)
            scores = _batch(g, IndexKind.CN, full.xs, full.ys)
            positive = {
                (x, y)
                for x, y, s in zip(full.xs.tolist(), full.ys.tolist(), scores)
                if s > 0
            }
            assert positive == set(zip(near.xs.tolist(), near.ys.tolist()))

    def test_distance_three_for_local_path(self, gref: Graph) -> None:
        assert candidate_distance(IndexKind.LOCAL_PATH, True) == 3
        assert candidate_distance(IndexKind.CN, True) == 2
        assert candidate_distance(IndexKind.CN, False) is None
        near = candidate_pairs(gref, 3)
        assert (0, 4) in set(zip(near.xs.tolist(), near.ys.tolist()))

    def test_unsupported_distance(self, gref: Graph) -> None:
        with pytest.raises(ConfigError):
            candidate_pairs(gref, 4)


class TestScoreAllCandidates:
    def test_output_is_canonical_and_order_free(self, gref: Graph) -> None:
        profile = ClusteringProfile.build(gref)
        config = IndexConfig(IndexKind.CN)
        forward = list(
            score_all_candidates(gref, profile, config, [(3, 0), (1, 4)])
        )
        backward = list(
            score_all_candidates(gref, profile, config, [(4, 1), (0, 3)])
        )
        assert forward == backward == [
            ScoredPair(0, 3, 2.0),
            ScoredPair(1, 4, 1.0),
        ]

    def test_duplicates_are_kept(self, gref: Graph) -> None:
        profile = ClusteringProfile.build(gref)
        config = IndexConfig(IndexKind.CN)
        scored = list(
            score_all_candidates(
                gref, profile, config, [(3, 0), (0, 3), (1, 4), (0, 3)]
            )
        )
        assert scored == [
            ScoredPair(0, 3, 2.0),
            ScoredPair(0, 3, 2.0),
            ScoredPair(0, 3, 2.0),
            ScoredPair(1, 4, 1.0),
        ]

    def test_invalid_pair_reports_the_pair(self, gref: Graph) -> None:
        profile = ClusteringProfile.build(gref)
        config = IndexConfig(IndexKind.CN)
        with pytest.raises(ScoringError) as info:
            list(score_all_candidates(gref, profile, config, [(2, 2)]))
        assert info.value.pair == (2, 2)
