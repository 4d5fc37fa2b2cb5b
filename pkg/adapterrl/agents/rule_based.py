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

from typing import Optional

import numpy as np

from ..env.actions import NOOP, Action, ActionKind, Direction
from ..env.game import GameState, legal_actions
from ..env.units import Position, Unit, UnitKind
from .base import AgentInterface, agent_registry
from .pathfinding import bfs_first_step

WORKER_CAP = 4


@agent_registry.register_with_multiple_names("rule_based", "rule-based")
class RuleBasedAgent(AgentInterface):
    """Priority-ladder scripted AI with breadth-first pathfinding.

    Workers fight when an enemy is adjacent, otherwise run the harvest/return loop, build one
    Barracks once no resource is left in reach and finally march on the enemy. Lights attack or
    advance. The Base trains workers up to ``WORKER_CAP`` and the Barracks trains Lights.

    A movement rule whose target is unreachable falls through to the next rule. Whatever the
    ladder picks is checked against the legality mask and replaced by the noop if illegal.
    """

    name = "rule_based"

    def act(
        self, state: GameState, unit: Unit, rng: Optional[np.random.Generator] = None
    ) -> Action:
        mask = legal_actions(state, unit)
        action = self._choose(state, unit, mask)
        if action is None or not mask[action.encode()]:
            return NOOP
        return action

    def _choose(self, state: GameState, unit: Unit, mask: np.ndarray) -> Optional[Action]:
        if unit.kind is UnitKind.WORKER:
            return self._worker(state, unit, mask)
        if unit.kind is UnitKind.LIGHT:
            return _first_legal(mask, ActionKind.ATTACK) or self._toward_enemy(state, unit)
        if unit.kind is UnitKind.BASE:
            if _worker_count(state, unit) < WORKER_CAP:
                return _first_legal(mask, ActionKind.PRODUCE_WORKER)
            return None
        if unit.kind is UnitKind.BARRACKS:
            return _first_legal(mask, ActionKind.PRODUCE_LIGHT)
        return None

    def _worker(self, state: GameState, unit: Unit, mask: np.ndarray) -> Optional[Action]:
        attack = _first_legal(mask, ActionKind.ATTACK)
        if attack is not None:
            return attack

        if unit.carrying:
            ret = _first_legal(mask, ActionKind.RETURN)
            if ret is not None:
                return ret
            move = _move_toward(state, unit, lambda p: _is_own_base(state, unit, p))
            if move is not None:
                return move
        else:
            harvest = _first_legal(mask, ActionKind.HARVEST)
            if harvest is not None:
                return harvest
            move = _move_toward(state, unit, lambda p: state.resource_at(p) > 0)
            if move is not None:
                return move

        barracks_cost = UnitKind.BARRACKS.cost or 0
        if state.stockpile[unit.player] >= barracks_cost and not _barracks_count(state, unit):
            build = _first_legal(mask, ActionKind.PRODUCE_BARRACKS)
            if build is not None:
                return build

        return self._toward_enemy(state, unit)

    @staticmethod
    def _toward_enemy(state: GameState, unit: Unit) -> Optional[Action]:
        def is_enemy(position: Position) -> bool:
            other = state.unit_at(position)
            return other is not None and other.player is not unit.player

        return _move_toward(state, unit, is_enemy)


def _first_legal(mask: np.ndarray, kind: ActionKind) -> Optional[Action]:
    for direction in Direction:
        action = Action(kind, direction)
        if mask[action.encode()]:
            return action
    return None


def _move_toward(state: GameState, unit: Unit, goal) -> Optional[Action]:
    result = bfs_first_step(state, unit.position, goal)
    if result.first_step is None:
        return None
    return Action(ActionKind.MOVE, result.first_step)


def _is_own_base(state: GameState, unit: Unit, position: Position) -> bool:
    other = state.unit_at(position)
    return other is not None and other.player is unit.player and other.kind is UnitKind.BASE


def _count(state: GameState, unit: Unit, kind: UnitKind, produce: ActionKind) -> int:
    """Own units of ``kind``, plus those already declared for production this tick."""
    live = sum(1 for u in state.live_units(unit.player) if u.kind is kind)
    queued = sum(
        1
        for unit_id, action in state.pending.items()
        if action.kind is produce and state.units[unit_id].player is unit.player
    )
    return live + queued


def _worker_count(state: GameState, unit: Unit) -> int:
    return _count(state, unit, UnitKind.WORKER, ActionKind.PRODUCE_WORKER)


def _barracks_count(state: GameState, unit: Unit) -> int:
    return _count(state, unit, UnitKind.BARRACKS, ActionKind.PRODUCE_BARRACKS)
