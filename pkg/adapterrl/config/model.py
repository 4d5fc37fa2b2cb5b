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

import math
from dataclasses import dataclass, field
from typing import List, Optional

from .errors import ConfigError

ACTION_COUNT = 29
ACTIVATIONS = ("tanh", "relu")


@dataclass
class MixerConfig:
    temperature: float = field(
        default=0.01,
        metadata={"help": "Temperature dividing the base agent's one-hot logit."},
    )
    action_count: int = field(default=ACTION_COUNT, metadata={"help": "Size of the action space."})
    mask_policy: str = field(
        default="mask_combined_logits",
        metadata={"help": "How illegal actions are removed; only mask_combined_logits exists."},
    )

    def validate(self):
        if not (self.temperature > 0 and math.isfinite(self.temperature)):
            raise ConfigError(f"mixer.temperature must be positive, got {self.temperature}")
        if self.action_count < 1:
            raise ConfigError(f"mixer.action_count must be at least 1, got {self.action_count}")
        if self.mask_policy != "mask_combined_logits":
            raise ConfigError(f"unknown mixer.mask_policy {self.mask_policy!r}")
        return self


@dataclass
class NetConfig:
    """
    Shape of the adapter networks.

    Parameters
    ----------
    input_dim: Optional[int]
        Observation length. ``None`` means it is derived from the map at train time.
    hidden_sizes: List[int]
        Width of every hidden layer.
        by default [512, 512, 512]
    activation: str
        ``tanh`` or ``relu``.
    shared_trunk: bool
        Share the hidden layers between the policy and the value head instead of
        using two separate networks.
        by default False
    """

    input_dim: Optional[int] = field(
        default=None, metadata={"help": "Observation length (derived from the map when unset)."}
    )
    hidden_sizes: List[int] = field(
        default_factory=lambda: [512, 512, 512], metadata={"help": "Hidden layer widths."}
    )
    activation: str = field(default="tanh", metadata={"help": "Hidden activation: tanh or relu."})
    action_count: int = field(default=ACTION_COUNT, metadata={"help": "Policy head outputs."})
    shared_trunk: bool = field(
        default=False, metadata={"help": "Share hidden layers between policy and value heads."}
    )

    def validate(self):
        if self.input_dim is not None and self.input_dim < 1:
            raise ConfigError(f"net.input_dim must be positive, got {self.input_dim}")
        if not self.hidden_sizes:
            raise ConfigError("net.hidden_sizes needs at least one hidden layer")
        if any(size < 1 for size in self.hidden_sizes):
            raise ConfigError(f"net.hidden_sizes must be positive, got {self.hidden_sizes}")
        if self.activation not in ACTIVATIONS:
            raise ConfigError(f"net.activation must be one of {ACTIVATIONS}")
        if self.action_count < 1:
            raise ConfigError("net.action_count must be at least 1")
        return self

    def with_input_dim(self, input_dim: int) -> "NetConfig":
        return NetConfig(
            input_dim=input_dim,
            hidden_sizes=list(self.hidden_sizes),
            activation=self.activation,
            action_count=self.action_count,
            shared_trunk=self.shared_trunk,
        )

    def to_dict(self) -> dict:
        return {
            "input_dim": self.input_dim,
            "hidden_sizes": list(self.hidden_sizes),
            "activation": self.activation,
            "action_count": self.action_count,
            "shared_trunk": self.shared_trunk,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "NetConfig":
        return cls(**data).validate()
