#
# Copyright (c) 2026, AdapterRL Authors.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
#

from collections import deque
from dataclasses import dataclass
from typing import Callable, Optional

from ..env.actions import Direction
from ..env.game import GameState
from ..env.units import Position

GoalPredicate = Callable[[Position], bool]


@dataclass(frozen=True)
class PathfindResult:
    first_step: Optional[Direction]
    distance: Optional[int]

    @property
    def reachable(self) -> bool:
        return self.distance is not None


UNREACHABLE = PathfindResult(None, None)


def bfs_first_step(state: GameState, start: Position, goal: GoalPredicate) -> PathfindResult:
    """First direction of a shortest path from ``start`` to the nearest cell matching ``goal``.

    Paths run over free cells (see :meth:`GameState.is_free`); goal cells themselves may be
    occupied or blocked. Neighbours expand in N, E, S, W order and the first goal discovered wins.
    """
    if not state.map.in_bounds(start):
        raise ValueError(f"start {start} is outside the map")
    if goal(start):
        return PathfindResult(None, 0)

    visited = {start}
    frontier = deque()
    for direction in Direction:
        cell = direction.apply(start)
        if not state.map.in_bounds(cell) or cell in visited:
            continue
        visited.add(cell)
        if goal(cell):
            return PathfindResult(direction, 1)
        if state.is_free(cell):
            frontier.append((cell, direction, 1))

    while frontier:
        cell, first, distance = frontier.popleft()
        for direction in Direction:
            nxt = direction.apply(cell)
            if not state.map.in_bounds(nxt) or nxt in visited:
                continue
            visited.add(nxt)
            if goal(nxt):
                return PathfindResult(first, distance + 1)
            if state.is_free(nxt):
                frontier.append((nxt, first, distance + 1))

    return UNREACHABLE
