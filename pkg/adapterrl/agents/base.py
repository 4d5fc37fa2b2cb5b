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

import abc
from typing import Optional, Union

import numpy as np

from ..env.actions import NUM_ACTIONS, Action
from ..env.game import GameState
from ..env.units import Unit
from ..mixer import onehot_temperature_logits
from ..utils.registry import Registry

agent_registry: Registry = Registry.class_registry("agents")

CHECKPOINT_PREFIX = "checkpoint:"


class AgentInterface(abc.ABC):
    """A frozen decision-maker: maps ``(state, unit)`` to a legal action.

    Agents hold no mutable state after construction; the only source of randomness is the
    generator passed by the caller.
    """

    name: str = "agent"

    @abc.abstractmethod
    def act(
        self, state: GameState, unit: Unit, rng: Optional[np.random.Generator] = None
    ) -> Action:
        """Legal action for ``unit``, which belongs to the side currently declaring."""

    def base_logits(
        self,
        state: GameState,
        unit: Unit,
        tau: float,
        rng: Optional[np.random.Generator] = None,
    ) -> np.ndarray:
        """Temperature-scaled one-hot of :meth:`act`."""
        return onehot_temperature_logits(self.act(state, unit, rng).encode(), NUM_ACTIONS, tau)

    @property
    def spec(self) -> str:
        return self.name

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self.spec!r})"


def parse_agent(spec: Union[str, AgentInterface]) -> AgentInterface:
    """Build an agent from a spec string.

    Parameters
    ----------
    spec: str or AgentInterface
        A registered name (``rule_based``, ``passive``, ``random``, ``uniform_logits``) or
        ``checkpoint:<path>``. Agent instances are returned unchanged.
    """
    if isinstance(spec, AgentInterface):
        return spec
    spec = spec.strip()
    if spec.startswith(CHECKPOINT_PREFIX):
        from .checkpoint import CheckpointAgent

        return CheckpointAgent.from_path(spec[len(CHECKPOINT_PREFIX) :])
    return agent_registry[spec]


def is_valid_agent_spec(spec: str) -> bool:
    spec = spec.strip()
    return spec.startswith(CHECKPOINT_PREFIX) or spec in agent_registry
