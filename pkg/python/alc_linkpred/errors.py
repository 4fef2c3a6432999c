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

from typing import Sequence


class LinkPredError(Exception):
    """Base class of every error raised by alc_linkpred."""


class EdgeListError(LinkPredError, ValueError):
    def __init__(
        self,
        message: str,
        line_number: int | None = None,
        line: str | None = None,
        path: str | None = None,
    ) -> None:
        self.message = message
        self.line_number = line_number
        self.line = line
        self.path = path
        super().__init__(self._describe())

    def _describe(self) -> str:
        where = self.path if self.path is not None else "<stream>"
        if self.line_number is not None:
            where = f"{where}:{self.line_number}"
        text = f"{where}: {self.message}"
        if self.line is not None:
            text += f" (line: {self.line!r})"
        return text

    def with_path(self, path: str) -> EdgeListError:
        return type(self)(self.message, self.line_number, self.line, path)


class EmptyGraphError(EdgeListError):
    pass


class UnknownNodeError(LinkPredError, LookupError):
    def __init__(self, node: object, suggestions: Sequence[str] = ()) -> None:
        self.node = node
        self.suggestions = tuple(suggestions)
        message = f"Unknown node: {node!r}"
        if self.suggestions:
            message += f" (nearest: {', '.join(self.suggestions)})"
        super().__init__(message)


class NotAnEdgeError(LinkPredError, ValueError):
    pass


class DegenerateDegreeError(LinkPredError, ValueError):
    pass


class ScoringError(LinkPredError):
    def __init__(self, pair: tuple[int, int], cause: Exception) -> None:
        self.pair = pair
        self.cause = cause
        super().__init__(f"Failed to score pair {pair}: {cause}")


class EvaluationError(LinkPredError, ValueError):
    pass


class ConfigError(LinkPredError, ValueError):
    pass
