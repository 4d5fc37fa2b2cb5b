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

import copy
import dataclasses
import logging
from collections import defaultdict
from dataclasses import dataclass, field
from enum import Enum
from typing import TYPE_CHECKING, Any, Dict, List, Optional, Tuple, Union

import numpy as np

from .actions import NUM_ACTIONS, Action, ActionKind, Direction
from .maps import MapSpec
from .units import PRODUCTION, Player, Position, Unit, UnitKind

if TYPE_CHECKING:  # pragma: no cover
    from ..agents.base import AgentInterface

LOG = logging.getLogger("adapterrl")

HARVEST_SHAPING = 0.02
PRODUCTION_SHAPING = 0.05


class ContractViolationError(ValueError):
    """A caller broke a precondition (dead unit, unit of the wrong side, ...)."""


class IllegalActionError(ValueError):
    pass


class GameOverError(RuntimeError):
    pass


class TerminalStatus(Enum):
    ONGOING = "ongoing"
    P0_WIN = "P0_win"
    P1_WIN = "P1_win"
    DRAW = "draw"

    @property
    def winner(self) -> Optional[Player]:
        if self is TerminalStatus.P0_WIN:
            return Player.P0
        if self is TerminalStatus.P1_WIN:
            return Player.P1
        return None


@dataclass
class GameState:
    """Full mini-RTS world.

    During a tick every live unit *declares* one action: first the learner's units in id order
    (one per :func:`step` call, ``active_cursor`` walks ``turn_order``), then the embedded
    opponent's. Declarations are applied together when the tick resolves.
    """

    map: MapSpec
    tick: int
    units: Dict[int, Unit]
    stockpile: List[int]
    resources: Dict[Position, int]
    learner: Player
    turn_order: Tuple[int, ...]
    active_cursor: int
    rng_seed: int
    terminal: TerminalStatus = TerminalStatus.ONGOING
    acting_player: Player = Player.P0
    pending: Dict[int, Action] = field(default_factory=dict)
    positions: Dict[Position, int] = field(default_factory=dict)
    next_unit_id: int = 0
    spent: List[int] = field(default_factory=lambda: [0, 0])
    reward_shaping: bool = False
    opponent: Any = field(default=None, compare=False, repr=False)
    opponent_rng: Optional[np.random.Generator] = field(default=None, compare=False, repr=False)

    @property
    def ongoing(self) -> bool:
        return self.terminal is TerminalStatus.ONGOING

    @property
    def opponent_player(self) -> Player:
        return self.learner.opponent

    @property
    def active_unit(self) -> Unit:
        if not self.ongoing:
            raise GameOverError("the game is over, no unit is active")
        return self.units[self.turn_order[self.active_cursor]]

    def unit_at(self, position: Position) -> Optional[Unit]:
        unit_id = self.positions.get(position)
        return None if unit_id is None else self.units[unit_id]

    def live_units(self, player: Player) -> List[Unit]:
        return [u for u in self.units.values() if u.player is player]

    def resource_at(self, position: Position) -> int:
        return self.resources.get(position, 0)

    def is_free(self, position: Position) -> bool:
        """In bounds, not a wall, no resource left and no unit."""
        return (
            self.map.in_bounds(position)
            and position not in self.map.walls
            and self.resources.get(position, 0) <= 0
            and position not in self.positions
        )

    def copy(self) -> "GameState":
        return dataclasses.replace(
            self,
            units=dict(self.units),
            stockpile=list(self.stockpile),
            resources=dict(self.resources),
            pending=dict(self.pending),
            positions=dict(self.positions),
            spent=list(self.spent),
        )


@dataclass
class StepResult:
    next_state: GameState
    reward: float
    done: int
    info: Dict[str, Any] = field(default_factory=dict)


def reset(
    map_spec: MapSpec,
    seed: int,
    opponent: "AgentInterface",
    learner: Union[Player, str, int] = Player.P0,
    reward_shaping: bool = False,
) -> GameState:
    """Start an episode on ``map_spec``; deterministic for a fixed (map, seed)."""
    map_spec.validate()
    learner = Player.parse(learner)
    units: Dict[int, Unit] = {}
    positions: Dict[Position, int] = {}
    for unit_id, placement in enumerate(map_spec.initial_units):
        units[unit_id] = Unit(
            unit_id, placement.player, placement.kind, placement.position, placement.kind.max_hp
        )
        positions[placement.position] = unit_id

    state = GameState(
        map=map_spec,
        tick=0,
        units=units,
        stockpile=[map_spec.initial_stockpile, map_spec.initial_stockpile],
        resources=dict(map_spec.resources),
        learner=learner,
        turn_order=(),
        active_cursor=0,
        rng_seed=seed,
        positions=positions,
        next_unit_id=len(units),
        reward_shaping=reward_shaping,
        opponent=opponent,
        opponent_rng=np.random.default_rng(seed),
    )
    _begin_tick(state)
    return state


def legal_actions(state: GameState, unit: Unit) -> np.ndarray:
    """Boolean mask over the 29 actions of ``unit``; the noop is always legal.

    Earlier declarations of the same side in this tick are taken into account: cells targeted by
    declared moves/production are reserved, and so are declared production costs and harvests.
    """
    live = state.units.get(unit.id)
    if live is None or live != unit:
        raise ContractViolationError(f"unit {unit.id} is not alive in this state")
    if unit.player is not state.acting_player:
        raise ContractViolationError(
            f"unit {unit.id} belongs to {unit.player.name}, "
            f"but {state.acting_player.name} is declaring"
        )

    reserved_cells, reserved_stock, reserved_harvest = _reservations(state, unit)
    stockpile = state.stockpile[unit.player] - reserved_stock
    mask = np.zeros(NUM_ACTIONS, dtype=bool)
    mask[0] = True

    kind = unit.kind
    produced = PRODUCTION.get(kind)
    for direction in Direction:
        target = direction.apply(unit.position)
        if not state.map.in_bounds(target):
            continue
        free = state.is_free(target) and target not in reserved_cells
        occupant = state.unit_at(target)

        if kind.mobile and free:
            mask[Action(ActionKind.MOVE, direction).encode()] = True
        if kind is UnitKind.WORKER:
            if unit.carrying == 0 and state.resource_at(target) - reserved_harvest[target] > 0:
                mask[Action(ActionKind.HARVEST, direction).encode()] = True
            if (
                unit.carrying
                and occupant is not None
                and occupant.player is unit.player
                and occupant.kind is UnitKind.BASE
            ):
                mask[Action(ActionKind.RETURN, direction).encode()] = True
        if kind.attack_damage > 0 and occupant is not None and occupant.player is not unit.player:
            mask[Action(ActionKind.ATTACK, direction).encode()] = True
        if produced is not None and free and stockpile >= produced.cost:
            mask[Action(_PRODUCE_ACTION[produced], direction).encode()] = True

    return mask


def step(state: GameState, action: Union[Action, int]) -> StepResult:
    """Declare ``action`` for the active unit and return the successor state.

    The input state is left untouched. When the last learner unit has declared, the opponent
    declares for all of its units and the tick resolves.
    """
    if not state.ongoing:
        raise GameOverError(f"step called on a finished game ({state.terminal.value})")
    index = action.encode() if isinstance(action, Action) else int(action)
    unit = state.active_unit
    if not 0 <= index < NUM_ACTIONS or not legal_actions(state, unit)[index]:
        raise IllegalActionError(
            f"action {index} ({Action.decode(index) if 0 <= index < NUM_ACTIONS else '?'}) "
            f"is illegal for unit {unit.id} ({unit.kind.name} at {unit.position})"
        )

    next_state = state.copy()
    next_state.pending[unit.id] = Action.decode(index)
    next_state.active_cursor += 1

    reward = 0.0
    tick_completed = next_state.active_cursor >= len(next_state.turn_order)
    if tick_completed:
        reward = _finish_tick(next_state)

    info = {
        "winner": next_state.terminal.winner,
        "terminal": next_state.terminal,
        "tick_completed": tick_completed,
    }
    return StepResult(next_state, reward, int(not next_state.ongoing), info)


class RtsEnv:
    """Stateful, gym-like wrapper around :func:`reset` / :func:`step` with auto side selection.

    Parameters
    ----------
    map_spec: MapSpec
        The map to play on.
    opponent: AgentInterface
        Agent driving the non-learner side.
    seed: int
        Seed of the first episode; episode ``k`` uses ``seed + k``.
    learner: str
        ``"P0"``, ``"P1"`` or ``"alternate"`` (switch sides on every reset).
    reward_shaping: bool
        Enable the small dense rewards for harvesting, returning and producing.
    """

    def __init__(
        self,
        map_spec: MapSpec,
        opponent: "AgentInterface",
        seed: int = 0,
        learner: str = "P0",
        reward_shaping: bool = False,
    ):
        if learner not in ("P0", "P1", "alternate"):
            raise ValueError(f"learner must be P0, P1 or alternate, got {learner!r}")
        self.map_spec = map_spec
        self.opponent = opponent
        self.seed = seed
        self.learner = learner
        self.reward_shaping = reward_shaping
        self.episodes = 0
        self.state: Optional[GameState] = None

    def reset(self) -> GameState:
        if self.learner == "alternate":
            side = Player(self.episodes % 2)
        else:
            side = Player.parse(self.learner)
        self.state = reset(
            self.map_spec,
            self.seed + self.episodes,
            self.opponent,
            learner=side,
            reward_shaping=self.reward_shaping,
        )
        self.episodes += 1
        return self.state

    def step(self, action: Union[Action, int]) -> StepResult:
        if self.state is None:
            raise GameOverError("call reset() before step()")
        result = step(self.state, action)
        self.state = result.next_state
        return result

    @property
    def active_unit(self) -> Unit:
        return self.state.active_unit  # type: ignore

    def legal_mask(self) -> np.ndarray:
        return legal_actions(self.state, self.active_unit)  # type: ignore


_PRODUCE_ACTION = {
    UnitKind.WORKER: ActionKind.PRODUCE_WORKER,
    UnitKind.LIGHT: ActionKind.PRODUCE_LIGHT,
    UnitKind.BARRACKS: ActionKind.PRODUCE_BARRACKS,
}


def _reservations(state: GameState, unit: Unit):
    cells = set()
    stock = 0
    harvest: Dict[Position, int] = defaultdict(int)
    for unit_id, declared in state.pending.items():
        other = state.units[unit_id]
        if unit_id == unit.id or other.player is not unit.player or declared.is_noop:
            continue
        target = declared.direction.apply(other.position)  # type: ignore
        if declared.kind is ActionKind.MOVE:
            cells.add(target)
        elif declared.kind is ActionKind.HARVEST:
            harvest[target] += 1
        elif declared.kind.produces is not None:  # type: ignore
            cells.add(target)
            stock += declared.kind.produces.cost  # type: ignore
    return cells, stock, harvest


def _begin_tick(state: GameState):
    state.pending = {}
    state.active_cursor = 0
    state.acting_player = state.learner
    state.turn_order = tuple(u.id for u in state.units.values() if u.player is state.learner)


def _finish_tick(state: GameState) -> float:
    opponent_player = state.opponent_player
    state.acting_player = opponent_player
    if state.opponent is None:
        raise ContractViolationError("the game has no opponent agent")
    state.opponent_rng = copy.deepcopy(state.opponent_rng)
    for unit in state.live_units(opponent_player):
        declared = state.opponent.act(state, unit, rng=state.opponent_rng)
        index = declared.encode() if isinstance(declared, Action) else int(declared)
        if not legal_actions(state, unit)[index]:
            raise IllegalActionError(
                f"opponent {type(state.opponent).__name__} declared illegal action {index} "
                f"for unit {unit.id}"
            )
        state.pending[unit.id] = Action.decode(index)

    shaping = _resolve(state)

    learner_alive = any(u.player is state.learner for u in state.units.values())
    opponent_alive = any(u.player is opponent_player for u in state.units.values())
    state.tick += 1
    reward = 0.0
    if not learner_alive and not opponent_alive:
        state.terminal = TerminalStatus.DRAW
    elif not opponent_alive:
        state.terminal = _win_status(state.learner)
        reward = 1.0
    elif not learner_alive:
        state.terminal = _win_status(opponent_player)
        reward = -1.0
    elif state.tick >= state.map.max_ticks:
        state.terminal = TerminalStatus.DRAW

    if state.ongoing:
        _begin_tick(state)
    else:
        state.pending = {}
        state.turn_order = ()
        state.active_cursor = 0

    if state.reward_shaping:
        reward += shaping
    return reward


def _win_status(player: Player) -> TerminalStatus:
    return TerminalStatus.P0_WIN if player is Player.P0 else TerminalStatus.P1_WIN


def _resolve(state: GameState) -> float:
    """Apply every declared action of the tick; returns the learner's shaping reward."""
    declared = sorted(
        (uid, a) for uid, a in state.pending.items() if not a.is_noop and uid in state.units
    )
    shaping = 0.0

    damage: Dict[int, int] = defaultdict(int)
    for unit_id, action in declared:
        if action.kind is ActionKind.ATTACK:
            attacker = state.units[unit_id]
            target = state.unit_at(action.direction.apply(attacker.position))  # type: ignore
            if target is not None and target.player is not attacker.player:
                damage[target.id] += attacker.kind.attack_damage
    for target_id in sorted(damage):
        target = state.units[target_id]
        if target.hp - damage[target_id] > 0:
            state.units[target_id] = dataclasses.replace(target, hp=target.hp - damage[target_id])
        else:
            _remove(state, target)

    for unit_id, action in declared:
        unit = state.units.get(unit_id)
        if unit is None:
            continue
        target = action.direction.apply(unit.position)  # type: ignore

        if action.kind is ActionKind.MOVE:
            if state.is_free(target):
                del state.positions[unit.position]
                state.positions[target] = unit_id
                state.units[unit_id] = dataclasses.replace(unit, position=target)

    for unit_id, action in declared:
        unit = state.units.get(unit_id)
        if unit is None or action.kind is not ActionKind.HARVEST:
            continue
        target = action.direction.apply(unit.position)  # type: ignore
        if unit.carrying == 0 and state.resources.get(target, 0) > 0:
            state.resources[target] -= 1
            state.units[unit_id] = dataclasses.replace(unit, carrying=1)
            if unit.player is state.learner:
                shaping += HARVEST_SHAPING

    for unit_id, action in declared:
        unit = state.units.get(unit_id)
        if unit is None or action.kind is not ActionKind.RETURN:
            continue
        base = state.unit_at(action.direction.apply(unit.position))  # type: ignore
        if (
            unit.carrying
            and base is not None
            and base.player is unit.player
            and base.kind is UnitKind.BASE
        ):
            state.stockpile[unit.player] += 1
            state.units[unit_id] = dataclasses.replace(unit, carrying=0)
            if unit.player is state.learner:
                shaping += HARVEST_SHAPING

    for unit_id, action in declared:
        unit = state.units.get(unit_id)
        produced = action.kind.produces  # type: ignore
        if unit is None or produced is None:
            continue
        target = action.direction.apply(unit.position)  # type: ignore
        if PRODUCTION.get(unit.kind) is produced and state.is_free(target):
            if state.stockpile[unit.player] >= produced.cost:
                state.stockpile[unit.player] -= produced.cost
                state.spent[unit.player] += produced.cost
                new_id = state.next_unit_id
                state.next_unit_id += 1
                state.units[new_id] = Unit(new_id, unit.player, produced, target, produced.max_hp)
                state.positions[target] = new_id
                if unit.player is state.learner:
                    shaping += PRODUCTION_SHAPING

    return shaping


def _remove(state: GameState, unit: Unit):
    del state.units[unit.id]
    del state.positions[unit.position]
    if unit.carrying:
        # the carried unit is dropped where the worker fell
        state.resources[unit.position] = state.resources.get(unit.position, 0) + unit.carrying
