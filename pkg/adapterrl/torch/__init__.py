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

from .adapter import AdaptedAgent
from .checkpoint import (
    Checkpoint,
    CheckpointError,
    CheckpointShapeError,
    CheckpointVersionError,
    CorruptCheckpointError,
    decode_checkpoint,
    load_checkpoint,
    save_checkpoint,
)
from .losses import (
    DTYPE,
    LossInfo,
    Minibatch,
    NonFiniteError,
    PpoLoss,
    clip_objective,
    masked_entropy,
    masked_log_softmax,
    ppo_loss,
    ppo_loss_gradients,
    value_objective,
)
from .network import (
    PolicyParameters,
    backward,
    forward,
    init_params,
    numpy_forward,
    parameter_shapes,
    zero_params,
)
from .optim import adam_step
from .rollout import (
    EpisodeRecord,
    RolloutBatch,
    collect_rollout,
    compute_gae,
    normalize_advantages,
)
from .trainer import IterationMetrics, Trainer, TrainingDivergedError, train, train_iteration

__all__ = [
    "AdaptedAgent",
    "Checkpoint",
    "CheckpointError",
    "CheckpointShapeError",
    "CheckpointVersionError",
    "CorruptCheckpointError",
    "decode_checkpoint",
    "load_checkpoint",
    "save_checkpoint",
    "DTYPE",
    "LossInfo",
    "Minibatch",
    "NonFiniteError",
    "PpoLoss",
    "clip_objective",
    "masked_entropy",
    "masked_log_softmax",
    "ppo_loss",
    "ppo_loss_gradients",
    "value_objective",
    "PolicyParameters",
    "backward",
    "forward",
    "init_params",
    "numpy_forward",
    "parameter_shapes",
    "zero_params",
    "adam_step",
    "EpisodeRecord",
    "RolloutBatch",
    "collect_rollout",
    "compute_gae",
    "normalize_advantages",
    "IterationMetrics",
    "Trainer",
    "TrainingDivergedError",
    "train",
    "train_iteration",
]
