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

from dataclasses import dataclass, field

from .errors import ConfigError


@dataclass
class PpoConfig:
    """
    Hyper-parameters of the PPO adaptation loop.

    Parameters
    ----------
    gamma: float
        Discount factor, in (0, 1].
        by default 0.99
    gae_lambda: float
        GAE smoothing parameter, in (0, 1].
        by default 0.95
    clip_eps: float
        PPO ratio clipping range.
        by default 0.2
    value_coef: float
        Weight of the value loss in the combined objective.
        by default 1.0
    entropy_coef: float
        Weight of the entropy bonus; 0 disables it.
        by default 0.01
    iterations: int
        Number of collect/update iterations (N).
    samples_per_iteration: int
        Transitions collected per iteration (T); must be divisible by ``minibatch_size``
        and ``num_envs``.
    """

    gamma: float = field(default=0.99, metadata={"help": "Discount factor."})
    gae_lambda: float = field(default=0.95, metadata={"help": "GAE lambda."})
    clip_eps: float = field(default=0.2, metadata={"help": "PPO clipping coefficient."})
    value_coef: float = field(default=1.0, metadata={"help": "Value loss coefficient."})
    entropy_coef: float = field(default=0.01, metadata={"help": "Entropy bonus coefficient."})
    learning_rate: float = field(default=2.5e-4, metadata={"help": "Adam learning rate."})
    adam_beta1: float = field(default=0.9, metadata={"help": "Adam first-moment decay."})
    adam_beta2: float = field(default=0.999, metadata={"help": "Adam second-moment decay."})
    adam_eps: float = field(default=1e-8, metadata={"help": "Adam epsilon."})
    iterations: int = field(default=100, metadata={"help": "Training iterations (N)."})
    samples_per_iteration: int = field(
        default=2048, metadata={"help": "Transitions collected per iteration (T)."}
    )
    epochs: int = field(default=4, metadata={"help": "Optimization epochs per iteration (K)."})
    minibatch_size: int = field(default=256, metadata={"help": "Minibatch size."})
    normalize_advantages: bool = field(
        default=True,
        metadata={"help": "Normalize advantages to zero mean and unit std per iteration."},
    )
    num_envs: int = field(
        default=4, metadata={"help": "Environments stepped in lockstep during collection."}
    )
    learner_side: str = field(
        default="alternate",
        metadata={"help": "Side played by the adapter: P0, P1 or alternate (every episode)."},
    )
    reward_shaping: bool = field(
        default=False,
        metadata={"help": "Small dense rewards for harvesting, returning and producing."},
    )
    checkpoint_every: int = field(
        default=10, metadata={"help": "Write a checkpoint every this many iterations."}
    )
    log_wall_clock: bool = field(
        default=False,
        metadata={
            "help": "Record elapsed seconds in the metrics CSV. "
            "Leave off to keep the CSV byte-identical across identical runs."
        },
    )

    def validate(self):
        for name in ("gamma", "gae_lambda"):
            value = getattr(self, name)
            if not 0.0 < value <= 1.0:
                raise ConfigError(f"trainer.{name} must be in (0, 1], got {value}")
        if self.clip_eps <= 0:
            raise ConfigError(f"trainer.clip_eps must be positive, got {self.clip_eps}")
        if self.value_coef < 0 or self.entropy_coef < 0:
            raise ConfigError("trainer.value_coef and trainer.entropy_coef must be non-negative")
        if self.learning_rate <= 0:
            raise ConfigError(f"trainer.learning_rate must be positive, got {self.learning_rate}")
        for name in ("iterations", "samples_per_iteration", "epochs", "minibatch_size"):
            if getattr(self, name) < 1:
                raise ConfigError(f"trainer.{name} must be at least 1")
        if self.num_envs < 1:
            raise ConfigError("trainer.num_envs must be at least 1")
        if self.samples_per_iteration % self.minibatch_size:
            raise ConfigError(
                f"trainer.samples_per_iteration ({self.samples_per_iteration}) must be divisible "
                f"by trainer.minibatch_size ({self.minibatch_size})"
            )
        if self.samples_per_iteration % self.num_envs:
            raise ConfigError(
                f"trainer.samples_per_iteration ({self.samples_per_iteration}) must be divisible "
                f"by trainer.num_envs ({self.num_envs})"
            )
        if self.learner_side not in ("P0", "P1", "alternate"):
            raise ConfigError(
                f"trainer.learner_side must be P0, P1 or alternate, got {self.learner_side!r}"
            )
        if self.checkpoint_every < 1:
            raise ConfigError("trainer.checkpoint_every must be at least 1")
        return self
