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

import json
import logging
import os
from dataclasses import asdict, dataclass
from typing import Callable, Optional, Union

import numpy as np
from tqdm.auto import tqdm

from .agents.base import AgentInterface, is_valid_agent_spec, parse_agent
from .env.game import GameState, TerminalStatus, reset, step
from .env.maps import MapSpec, resolve_map
from .env.units import Player

LOG = logging.getLogger("adapterrl")

FrameCallback = Callable[[GameState], None]


@dataclass
class EvalReport:
    learner: str
    opponent: str
    map: str
    games: int
    wins: int
    draws: int
    losses: int
    seed: int
    greedy: bool = False

    @property
    def winrate(self) -> float:
        return (self.wins + 0.5 * self.draws) / self.games

    def to_dict(self) -> dict:
        return {**asdict(self), "winrate": self.winrate}

    def to_json(self, path: str):
        directory = os.path.dirname(os.path.abspath(path))
        os.makedirs(directory, exist_ok=True)
        with open(path, "w", encoding="utf8") as f:
            json.dump(self.to_dict(), f, indent=2, sort_keys=True)

    def __str__(self) -> str:
        return (
            f"{self.learner} vs {self.opponent} on {self.map}: {self.games} games, "
            f"{self.wins} wins / {self.draws} draws / {self.losses} losses, "
            f"winrate {self.winrate:.3f}"
        )


def load_learner(
    spec: Union[str, AgentInterface],
    temperature: Optional[float] = None,
    greedy: bool = False,
) -> AgentInterface:
    """An agent spec, or the path of a trained adapter checkpoint (played as an AdaptedAgent)."""
    if isinstance(spec, AgentInterface) or is_valid_agent_spec(spec):
        return parse_agent(spec)
    if os.path.exists(spec):
        from .torch.adapter import AdaptedAgent

        return AdaptedAgent.from_checkpoint(spec, temperature=temperature, greedy=greedy)
    raise ValueError(f"{spec!r} is neither an agent spec nor an existing checkpoint file")


def play_episode(
    learner: AgentInterface,
    opponent: AgentInterface,
    map_spec: MapSpec,
    seed: int,
    learner_side: Player = Player.P0,
    rng: Optional[np.random.Generator] = None,
    on_frame: Optional[FrameCallback] = None,
) -> GameState:
    """Play one game to the end and return the terminal state.

    ``on_frame`` is called with the initial state and after every completed tick.
    """
    state = reset(map_spec, seed, opponent, learner=learner_side)
    if on_frame is not None:
        on_frame(state)
    while state.ongoing:
        action = learner.act(state, state.active_unit, rng)
        result = step(state, action)
        state = result.next_state
        if on_frame is not None and result.info["tick_completed"]:
            on_frame(state)
    return state


def run_eval(
    checkpoint_or_agent: Union[str, AgentInterface],
    opponent: Union[str, AgentInterface],
    map_spec: Union[str, MapSpec],
    games: int,
    seed: int,
    greedy: bool = False,
    temperature: Optional[float] = None,
    progress: bool = False,
) -> EvalReport:
    """Play ``games`` seeded games; game ``i`` uses env seed ``seed + i`` and puts the learner on
    P0 for even ``i`` and on P1 for odd ``i``.

    Draws count half in the winrate.
    """
    if games < 1:
        raise ValueError(f"games must be at least 1, got {games}")
    learner = load_learner(checkpoint_or_agent, temperature=temperature, greedy=greedy)
    opponent = parse_agent(opponent)
    if isinstance(map_spec, str):
        map_spec = resolve_map(map_spec)

    wins = draws = losses = 0
    for i in tqdm(range(games), desc="eval", disable=not progress, leave=False):
        side = Player.P0 if i % 2 == 0 else Player.P1
        rng = np.random.default_rng([seed, i])
        final = play_episode(learner, opponent, map_spec, seed + i, side, rng)
        winner = final.terminal.winner
        if final.terminal is TerminalStatus.DRAW:
            draws += 1
        elif winner is side:
            wins += 1
        else:
            losses += 1

    report = EvalReport(
        learner=learner.spec,
        opponent=opponent.spec,
        map=map_spec.name,
        games=games,
        wins=wins,
        draws=draws,
        losses=losses,
        seed=seed,
        greedy=greedy,
    )
    LOG.info(str(report))
    return report
