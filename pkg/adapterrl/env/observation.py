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

from typing import Optional, Union

import numpy as np

from .game import GameState
from .units import Player, Unit, UnitKind

# plane order of the per-cell features
PLANES = (
    "base",
    "barracks",
    "worker",
    "light",
    "own",
    "enemy",
    "hp",
    "carrying",
    "resource",
    "wall",
    "active",
)
NUM_PLANES = len(PLANES)
NUM_SCALARS = 3

_KIND_PLANE = {
    UnitKind.BASE: 0,
    UnitKind.BARRACKS: 1,
    UnitKind.WORKER: 2,
    UnitKind.LIGHT: 3,
}


def observation_size(width: int, height: int) -> int:
    return NUM_PLANES * width * height + NUM_SCALARS


def encode_observation(
    state: GameState, player: Union[Player, str, int], active: Optional[Unit] = None
) -> np.ndarray:
    """Flat float64 feature vector of ``state`` seen from ``player``.

    Layout is plane-major: ``NUM_PLANES`` planes of ``height x width`` cells (row-major), then
    ``[own stockpile / 10, enemy stockpile / 10, tick / max_ticks]``.

    Parameters
    ----------
    state: GameState
        State to encode.
    player: Player
        The side whose units count as "own".
    active: Unit, optional
        Unit to mark in the active plane. Defaults to the state's active unit when ``player``
        is the side currently declaring.
    """
    player = Player.parse(player)
    spec = state.map
    planes = np.zeros((NUM_PLANES, spec.height, spec.width), dtype=np.float64)

    for x, y in spec.walls:
        planes[9, y, x] = 1.0
    scale = float(max(spec.max_resource_amount, 1))
    for (x, y), amount in state.resources.items():
        if amount > 0:
            planes[8, y, x] = amount / scale

    for unit in state.units.values():
        x, y = unit.position
        planes[_KIND_PLANE[unit.kind], y, x] = 1.0
        planes[4 if unit.player is player else 5, y, x] = 1.0
        planes[6, y, x] = unit.hp / unit.kind.max_hp
        planes[7, y, x] = float(unit.carrying)

    if active is None and state.ongoing and state.acting_player is player:
        if state.active_cursor < len(state.turn_order):
            active = state.units.get(state.turn_order[state.active_cursor])
    if active is not None:
        x, y = active.position
        planes[10, y, x] = 1.0

    scalars = np.array(
        [
            state.stockpile[player] / 10.0,
            state.stockpile[player.opponent] / 10.0,
            state.tick / spec.max_ticks,
        ],
        dtype=np.float64,
    )
    return np.concatenate([planes.reshape(-1), scalars])
