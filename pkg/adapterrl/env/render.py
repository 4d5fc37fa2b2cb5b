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

from typing import List

from .game import GameState


def render_ascii(state: GameState, header: bool = True) -> str:
    """Draw ``state`` with the map-file alphabet; live units are drawn over the terrain.

    Resource cells show their remaining amount (``r3``); a depleted resource cell is drawn as ``.``.
    """
    spec = state.map
    lines: List[str] = []
    if header:
        lines.append(
            f"tick {state.tick}/{spec.max_ticks}  "
            f"stockpile P0={state.stockpile[0]} P1={state.stockpile[1]}  "
            f"{state.terminal.value}"
        )
    cells = [[_terrain(state, (x, y)) for x in range(spec.width)] for y in range(spec.height)]
    for unit in state.units.values():
        x, y = unit.position
        cells[y][x] = unit.token
    width = max(len(c) for row in cells for c in row)
    for row in cells:
        lines.append(" ".join(c.ljust(width) for c in row).rstrip())
    return "\n".join(lines)


def _terrain(state: GameState, position) -> str:
    if position in state.map.walls:
        return "#"
    amount = state.resources.get(position, 0)
    if amount > 0:
        return f"r{amount}"
    return "."
