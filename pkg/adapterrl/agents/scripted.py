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

from ..env.actions import NOOP, NUM_ACTIONS, Action
from ..env.game import GameState, legal_actions
from ..env.units import Unit
from .base import AgentInterface, agent_registry


@agent_registry.register_with_multiple_names("passive", "noop")
class PassiveAgent(AgentInterface):
    name = "passive"

    def act(
        self, state: GameState, unit: Unit, rng: Optional[np.random.Generator] = None
    ) -> Action:
        return NOOP


@agent_registry.register("random")
class RandomAgent(AgentInterface):
    """Uniform over the legal actions, drawing from the caller's generator."""

    name = "random"

    def act(
        self, state: GameState, unit: Unit, rng: Optional[np.random.Generator] = None
    ) -> Action:
        if rng is None:
            raise ValueError("RandomAgent needs a numpy Generator")
        legal = np.flatnonzero(legal_actions(state, unit))
        return Action.decode(int(legal[rng.integers(len(legal))]))


@agent_registry.register_with_multiple_names("uniform_logits", "scratch")
class UniformLogitsAgent(AgentInterface):
    """Distribution-level baseline: all-zero base logits, so the mixed policy is the adapter alone.

    ``act`` (only used when the agent plays directly) returns the lowest legal index.
    """

    name = "uniform_logits"

    def act(
        self, state: GameState, unit: Unit, rng: Optional[np.random.Generator] = None
    ) -> Action:
        return Action.decode(int(np.argmax(legal_actions(state, unit))))

    def base_logits(
        self,
        state: GameState,
        unit: Unit,
        tau: float,
        rng: Optional[np.random.Generator] = None,
    ) -> np.ndarray:
        return np.zeros(NUM_ACTIONS, dtype=np.float64)
