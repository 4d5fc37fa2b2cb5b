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

from ..agents.base import AgentInterface, parse_agent
from ..env.actions import Action
from ..env.game import GameState, legal_actions
from ..env.observation import encode_observation
from ..env.units import Unit
from ..mixer import MixedDistribution, combine_to_probabilities, sample_categorical
from .checkpoint import load_checkpoint
from .network import PolicyParameters, numpy_forward


class AdaptedAgent(AgentInterface):
    """A frozen base agent steered by adapter parameters.

    Samples from ``softmax(base_logits / tau + adj)`` over the legal actions, or takes its argmax
    when ``greedy``.

    Parameters
    ----------
    base_agent: AgentInterface
        The frozen agent being adapted.
    params: PolicyParameters
        Adapter weights.
    temperature: float
        Temperature applied to the base agent's one-hot logits.
    greedy: bool
        Take the most likely action instead of sampling.
    """

    def __init__(
        self,
        base_agent: AgentInterface,
        params: PolicyParameters,
        temperature: float,
        greedy: bool = False,
    ):
        self.base_agent = base_agent
        self.params = params
        self.temperature = temperature
        self.greedy = greedy

    @classmethod
    def from_checkpoint(
        cls,
        path: str,
        base_agent: Optional[str] = None,
        temperature: Optional[float] = None,
        greedy: bool = False,
    ) -> "AdaptedAgent":
        """Rebuild the agent a training run saved; base agent and temperature come from the
        checkpoint metadata unless given."""
        checkpoint = load_checkpoint(path)
        meta = checkpoint.metadata
        base = parse_agent(base_agent or meta.get("base_agent", "rule_based"))
        tau = temperature if temperature is not None else float(meta.get("temperature", 1.0))
        return cls(base, checkpoint.params, tau, greedy=greedy)

    @property
    def spec(self) -> str:
        mode = "greedy" if self.greedy else "sampled"
        return f"adapted({self.base_agent.spec}, tau={self.temperature}, {mode})"

    def distribution(
        self, state: GameState, unit: Unit, rng: Optional[np.random.Generator] = None
    ) -> MixedDistribution:
        observation = encode_observation(state, unit.player, active=unit)
        adj, _ = numpy_forward(self.params, observation)
        base = self.base_agent.base_logits(state, unit, self.temperature, rng=rng)
        return combine_to_probabilities(base, adj, legal_actions(state, unit))

    def act(
        self, state: GameState, unit: Unit, rng: Optional[np.random.Generator] = None
    ) -> Action:
        dist = self.distribution(state, unit, rng)
        if self.greedy:
            return Action.decode(dist.argmax())
        if rng is None:
            raise ValueError("sampling an AdaptedAgent needs a numpy Generator (or greedy=True)")
        index, _ = sample_categorical(dist, rng)
        return Action.decode(index)
