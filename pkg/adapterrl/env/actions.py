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

from dataclasses import dataclass
from enum import IntEnum
from typing import Dict, Optional, Tuple

from .units import Position, UnitKind


class Direction(IntEnum):
    N = 0
    E = 1
    S = 2
    W = 3

    @property
    def delta(self) -> Tuple[int, int]:
        return _DELTAS[self]

    def apply(self, position: Position) -> Position:
        dx, dy = _DELTAS[self]
        return position[0] + dx, position[1] + dy


# x grows to the east, y grows to the south
_DELTAS = {
    Direction.N: (0, -1),
    Direction.E: (1, 0),
    Direction.S: (0, 1),
    Direction.W: (-1, 0),
}


class ActionKind(IntEnum):
    MOVE = 0
    HARVEST = 1
    RETURN = 2
    ATTACK = 3
    PRODUCE_WORKER = 4
    PRODUCE_LIGHT = 5
    PRODUCE_BARRACKS = 6

    @property
    def produces(self) -> Optional[UnitKind]:
        return _PRODUCES.get(self)


_PRODUCES: Dict[ActionKind, UnitKind] = {
    ActionKind.PRODUCE_WORKER: UnitKind.WORKER,
    ActionKind.PRODUCE_LIGHT: UnitKind.LIGHT,
    ActionKind.PRODUCE_BARRACKS: UnitKind.BARRACKS,
}

NUM_DIRECTIONS = len(Direction)
NUM_ACTIONS = 1 + len(ActionKind) * NUM_DIRECTIONS
NOOP_INDEX = 0


@dataclass(frozen=True)
class Action:
    """Flat discrete action of the active unit.

    Index 0 is the noop, indices 1..28 enumerate ``kind x direction`` in kind-then-direction order.
    """

    kind: Optional[ActionKind] = None
    direction: Optional[Direction] = None

    def __post_init__(self):
        if (self.kind is None) != (self.direction is None):
            raise ValueError("kind and direction must be both set or both None")

    @property
    def is_noop(self) -> bool:
        return self.kind is None

    def encode(self) -> int:
        if self.kind is None:
            return NOOP_INDEX
        return 1 + int(self.kind) * NUM_DIRECTIONS + int(self.direction)  # type: ignore

    @classmethod
    def decode(cls, index: int) -> "Action":
        index = int(index)
        if not 0 <= index < NUM_ACTIONS:
            raise ValueError(f"action index {index} outside [0, {NUM_ACTIONS - 1}]")
        if index == NOOP_INDEX:
            return NOOP
        kind, direction = divmod(index - 1, NUM_DIRECTIONS)
        return cls(ActionKind(kind), Direction(direction))

    def __str__(self) -> str:
        if self.kind is None:
            return "noop"
        return f"{self.kind.name.lower()}_{self.direction.name}"  # type: ignore


NOOP = Action()
