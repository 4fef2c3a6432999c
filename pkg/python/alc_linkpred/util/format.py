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

from typing import Iterable

from ..indices import IndexKind, ScoredPair
from .labels import NodeLabelResolver


class PredictionTextFormatter:
    def __init__(
        self,
        resolver: NodeLabelResolver,
    ) -> None:
        self._resolver = resolver

    def gen_pair_text(self, pair: ScoredPair) -> str:
        x = self._resolver.get_label_by_id(pair.x)
        y = self._resolver.get_label_by_id(pair.y)
        return f"{x} -- {y}\t{pair.score:.6g}"

    def gen_partner_text(self, node: int, pair: ScoredPair) -> str:
        partner = pair.y if pair.x == node else pair.x
        label = self._resolver.get_label_by_id(partner)
        return f"{label}\t{pair.score:.6g}"

    def gen_ranking_text(
        self,
        kind: IndexKind,
        pairs: Iterable[ScoredPair],
        node: int | None = None,
    ) -> str:
        if node is None:
            title = f"Top {kind.display_name} candidates"
            lines = [self.gen_pair_text(p) for p in pairs]
        else:
            label = self._resolver.get_label_by_id(node)
            title = f"Top {kind.display_name} candidates for {label}"
            lines = [self.gen_partner_text(node, p) for p in pairs]
        if not lines:
            return f"{title}: none\n"
        ranked = [f"{rank:>4}  {line}" for rank, line in enumerate(lines, 1)]
        return "\n".join([f"{title}:", *ranked]) + "\n"
