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

from ..env.actions import Action
from ..env.game import GameState, legal_actions
from ..env.observation import encode_observation
from ..env.units import Unit
from .base import CHECKPOINT_PREFIX, AgentInterface


class CheckpointAgent(AgentInterface):
    """Neural base agent: greedy argmax over the masked policy-head logits of a saved adapter."""

    def __init__(self, params, path: str = ""):
        self.params = params
        self.path = path

    @classmethod
    def from_path(cls, path: str) -> "CheckpointAgent":
        from ..torch.checkpoint import load_checkpoint

        return cls(load_checkpoint(path).params, path)

    @property
    def name(self) -> str:  # type: ignore[override]
        return f"{CHECKPOINT_PREFIX}{self.path}"

    def act(
        self, state: GameState, unit: Unit, rng: Optional[np.random.Generator] = None
    ) -> Action:
        from ..torch.checkpoint import CheckpointShapeError
        from ..torch.network import numpy_forward

        observation = encode_observation(state, unit.player, active=unit)
        if len(observation) != self.params.config.input_dim:
            raise CheckpointShapeError(
                f"checkpoint {self.path or '<in-memory>'} expects observations of length "
                f"{self.params.config.input_dim}, map {state.map.name} produces {len(observation)}"
            )
        logits, _ = numpy_forward(self.params, observation)
        masked = np.where(legal_actions(state, unit), logits, -np.inf)
        return Action.decode(int(np.argmax(masked)))
