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

import difflib
from typing import Sequence

from ..errors import UnknownNodeError


class NodeLabelResolver:
    """Bijection between dense node ids and the labels read from a file."""

    def __init__(self, labels: Sequence[str]) -> None:
        self._labels = tuple(labels)
        self._ids = {label: i for i, label in enumerate(self._labels)}
        if len(self._ids) != len(self._labels):
            raise ValueError("Node labels must be unique")

    def __len__(self) -> int:
        return len(self._labels)

    @property
    def labels(self) -> tuple[str, ...]:
        return self._labels

    def get_label_by_id(self, node_id: int) -> str:
        if not 0 <= node_id < len(self._labels):
            raise UnknownNodeError(node_id)
        return self._labels[node_id]

    def get_id_by_label(self, label: str) -> int:
        try:
            return self._ids[label]
        except KeyError:
            raise UnknownNodeError(
                label, self.nearest_labels(label)
            ) from None

    def nearest_labels(self, label: str, n: int = 5) -> list[str]:
        return difflib.get_close_matches(label, self._labels, n=n, cutoff=0.5)
