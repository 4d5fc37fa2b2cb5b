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
from enum import Enum, IntEnum
from typing import Dict, Optional, Tuple

Position = Tuple[int, int]


class Player(IntEnum):
    P0 = 0
    P1 = 1

    @property
    def opponent(self) -> "Player":
        return Player(1 - self.value)

    @classmethod
    def parse(cls, value) -> "Player":
        if isinstance(value, Player):
            return value
        if isinstance(value, str):
            return cls[value.strip().upper()]
        return cls(int(value))


class UnitKind(Enum):
    BASE = "b"
    BARRACKS = "k"
    WORKER = "w"
    LIGHT = "l"

    @property
    def glyph(self) -> str:
        return self.value

    @property
    def stats(self) -> "UnitStats":
        return UNIT_STATS[self]

    @property
    def max_hp(self) -> int:
        return UNIT_STATS[self].max_hp

    @property
    def attack_damage(self) -> int:
        return UNIT_STATS[self].attack_damage

    @property
    def cost(self) -> Optional[int]:
        return UNIT_STATS[self].cost

    @property
    def mobile(self) -> bool:
        return UNIT_STATS[self].mobile

    @classmethod
    def from_glyph(cls, glyph: str) -> "UnitKind":
        return cls(glyph)


@dataclass(frozen=True)
class UnitStats:
    max_hp: int
    attack_damage: int
    cost: Optional[int]
    mobile: bool


UNIT_STATS: Dict[UnitKind, UnitStats] = {
    UnitKind.BASE: UnitStats(max_hp=10, attack_damage=0, cost=None, mobile=False),
    UnitKind.BARRACKS: UnitStats(max_hp=4, attack_damage=0, cost=5, mobile=False),
    UnitKind.WORKER: UnitStats(max_hp=1, attack_damage=1, cost=1, mobile=True),
    UnitKind.LIGHT: UnitStats(max_hp=4, attack_damage=2, cost=2, mobile=True),
}

# producer kind -> produced kind
PRODUCTION: Dict[UnitKind, UnitKind] = {
    UnitKind.BASE: UnitKind.WORKER,
    UnitKind.BARRACKS: UnitKind.LIGHT,
    UnitKind.WORKER: UnitKind.BARRACKS,
}


@dataclass(frozen=True)
class Unit:
    """A live unit. Units are immutable; the game replaces them when they change."""

    id: int
    player: Player
    kind: UnitKind
    position: Position
    hp: int
    carrying: int = 0

    def __post_init__(self):
        if not 1 <= self.hp <= self.kind.max_hp:
            raise ValueError(f"hp {self.hp} out of range for {self.kind.name}")
        if self.carrying not in (0, 1) or (self.carrying and self.kind is not UnitKind.WORKER):
            raise ValueError(f"{self.kind.name} cannot carry {self.carrying} resources")

    @property
    def token(self) -> str:
        return f"{self.kind.glyph}{int(self.player)}"
