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

import csv
import os
import time
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Tuple

import numpy as np
from tqdm.auto import tqdm
from transformers.trainer_utils import PREFIX_CHECKPOINT_DIR
from transformers.utils import logging

from ..agents.base import AgentInterface, parse_agent
from ..config.experiment import ExperimentConfig
from ..config.trainer import PpoConfig
from ..env.game import RtsEnv
from ..env.maps import MapSpec, resolve_map
from ..env.observation import observation_size
from .checkpoint import save_checkpoint
from .losses import NonFiniteError, PpoLoss
from .network import PolicyParameters, backward, init_params
from .optim import adam_step
from .rollout import RolloutBatch, collect_rollout, normalize_advantages

logger = logging.get_logger(__name__)

METRICS_FILE = "metrics.csv"
FINAL_CHECKPOINT = "final.arl"
METRICS_HEADER = [
    "iteration",
    "steps",
    "winrate",
    "mean_reward",
    "policy_loss",
    "value_loss",
    "entropy",
    "clip_frac",
    "mean_ratio",
    "seconds",
]
ENV_SEED_STRIDE = 1_000_003


class TrainingDivergedError(RuntimeError):
    def __init__(self, iteration: int, message: str, diagnostics: Optional[Dict[str, Any]] = None):
        self.iteration = iteration
        self.diagnostics = diagnostics or {}
        super().__init__(f"training diverged at iteration {iteration}: {message}")


@dataclass
class IterationMetrics:
    iteration: int = 0
    steps: int = 0
    winrate: float = 0.0
    mean_reward: float = 0.0
    policy_loss: float = 0.0
    value_loss: float = 0.0
    entropy: float = 0.0
    clip_frac: float = 0.0
    mean_ratio: float = 1.0
    max_ratio: float = 1.0
    seconds: float = 0.0
    episodes: int = 0

    def csv_row(self) -> List[str]:
        return [
            str(self.iteration),
            str(self.steps),
            *(f"{getattr(self, name):.8g}" for name in METRICS_HEADER[2:]),
        ]

    def postfix(self) -> Dict[str, str]:
        return {
            "winrate": f"{self.winrate:.3f}",
            "pi": f"{self.policy_loss:.4f}",
            "v": f"{self.value_loss:.4f}",
            "H": f"{self.entropy:.3f}",
        }


def train_iteration(
    params: PolicyParameters,
    batch: RolloutBatch,
    cfg: PpoConfig,
    rng: np.random.Generator,
) -> Tuple[PolicyParameters, IterationMetrics]:
    """K epochs of shuffled minibatch Adam updates on one rollout.

    ``params`` is the snapshot the batch was collected with; it is not modified, and the returned
    parameters become the next snapshot.
    """
    advantages = batch.advantages
    if cfg.normalize_advantages:
        advantages = normalize_advantages(advantages)
    data = batch.as_minibatch(advantages)
    spec = PpoLoss.from_config(cfg)

    infos = []
    size = len(batch)
    minibatch_size = min(cfg.minibatch_size, size)
    for _ in range(cfg.epochs):
        order = rng.permutation(size)
        for start in range(0, size, minibatch_size):
            grads, info = backward(params, data.take(order[start : start + minibatch_size]), spec)
            params = adam_step(
                params, grads, cfg.learning_rate, cfg.adam_beta1, cfg.adam_beta2, cfg.adam_eps
            )
            infos.append(info)

    if not params.is_finite():
        raise NonFiniteError("parameters became non-finite after the Adam update")

    metrics = IterationMetrics(
        steps=size,
        winrate=batch.winrate,
        mean_reward=batch.mean_episode_reward,
        policy_loss=float(np.mean([i.policy_loss for i in infos])),
        value_loss=float(np.mean([i.value_loss for i in infos])),
        entropy=float(np.mean([i.entropy for i in infos])),
        clip_frac=float(np.mean([i.clip_frac for i in infos])),
        mean_ratio=float(np.mean([i.mean_ratio for i in infos])),
        max_ratio=float(np.max([i.max_ratio for i in infos])),
        episodes=batch.num_episodes,
    )
    return params, metrics


@dataclass
class TrainResult:
    params: PolicyParameters
    metrics: List[IterationMetrics] = field(default_factory=list)
    checkpoint_path: str = ""
    metrics_path: str = ""


class Trainer:
    """
    Adapts a frozen base agent with PPO against a fixed opponent.

    Parameters
    ----------
    map_spec: MapSpec
        Map every training episode is played on.
    base_agent: AgentInterface
        The frozen agent whose action distribution is adjusted.
    opponent: AgentInterface
        Agent embedded in the environment as the other side.
    config: ExperimentConfig
        Mixer, network and PPO settings; ``net.input_dim`` is derived from the map when unset.
    seed: int
        Seeds the parameters, the sampling generator and the environments.
    out_dir: str
        Receives ``metrics.csv``, periodic ``checkpoint-<iteration>.arl`` files and ``final.arl``.
    progress: bool
        Show a tqdm progress bar.
    """

    def __init__(
        self,
        map_spec: MapSpec,
        base_agent: AgentInterface,
        opponent: AgentInterface,
        config: ExperimentConfig,
        seed: int,
        out_dir: str,
        progress: bool = True,
    ):
        self.map_spec = map_spec
        self.base_agent = base_agent
        self.opponent = opponent
        self.config = config
        self.seed = seed
        self.out_dir = out_dir
        self.progress = progress

        input_dim = observation_size(map_spec.width, map_spec.height)
        net = config.net
        if net.input_dim is not None and net.input_dim != input_dim:
            raise ValueError(
                f"net.input_dim={net.input_dim} does not match map {map_spec.name} "
                f"(observation length {input_dim})"
            )
        self.net_config = net.with_input_dim(input_dim)

    @property
    def metrics_path(self) -> str:
        return os.path.join(self.out_dir, METRICS_FILE)

    def create_envs(self) -> List[RtsEnv]:
        cfg = self.config.trainer
        return [
            RtsEnv(
                self.map_spec,
                self.opponent,
                seed=self.seed + ENV_SEED_STRIDE * i,
                learner=cfg.learner_side,
                reward_shaping=cfg.reward_shaping,
            )
            for i in range(cfg.num_envs)
        ]

    def train(self) -> TrainResult:
        cfg = self.config.trainer
        os.makedirs(self.out_dir, exist_ok=True)
        logger.info(
            f"Training adapter on {self.map_spec.name}: base={self.base_agent.spec}, "
            f"opponent={self.opponent.spec}, tau={self.config.mixer.temperature}, "
            f"seed={self.seed}, "
            f"N={cfg.iterations}, T={cfg.samples_per_iteration}"
        )

        params = init_params(self.net_config, self.seed)
        rng = np.random.default_rng(self.seed)
        envs = self.create_envs()
        result = TrainResult(params, metrics_path=self.metrics_path)

        steps = 0
        start = time.perf_counter()
        with open(self.metrics_path, "w", newline="", encoding="utf8") as f:
            writer = csv.writer(f, lineterminator="\n")
            writer.writerow(METRICS_HEADER)
            bar = tqdm(
                range(1, cfg.iterations + 1),
                desc=f"seed {self.seed}",
                disable=not self.progress,
                leave=False,
            )
            for iteration in bar:
                try:
                    batch = collect_rollout(
                        envs,
                        self.base_agent,
                        params,
                        self.config.mixer,
                        cfg.samples_per_iteration,
                        rng,
                        gamma=cfg.gamma,
                        gae_lambda=cfg.gae_lambda,
                    )
                except NonFiniteError as e:
                    raise TrainingDivergedError(iteration, str(e), {"phase": "collect"}) from e
                try:
                    params, metrics = train_iteration(params, batch, cfg, rng)
                except NonFiniteError as e:
                    raise TrainingDivergedError(
                        iteration,
                        str(e),
                        {"winrate": batch.winrate, "episodes": batch.num_episodes},
                    ) from e

                steps += len(batch)
                metrics.iteration = iteration
                metrics.steps = steps
                metrics.seconds = time.perf_counter() - start if cfg.log_wall_clock else 0.0
                if not batch.num_episodes:
                    logger.warning(
                        f"Iteration {iteration} finished no episode; winrate is reported as 0"
                    )
                writer.writerow(metrics.csv_row())
                f.flush()
                result.metrics.append(metrics)
                bar.set_postfix(metrics.postfix())
                logger.info(
                    f"iteration {iteration}/{cfg.iterations} steps={steps} "
                    f"winrate={metrics.winrate:.3f} episodes={metrics.episodes} "
                    f"policy_loss={metrics.policy_loss:.5f} value_loss={metrics.value_loss:.5f} "
                    f"entropy={metrics.entropy:.4f} clip_frac={metrics.clip_frac:.3f}"
                )

                if iteration % cfg.checkpoint_every == 0 and iteration != cfg.iterations:
                    filename = f"{PREFIX_CHECKPOINT_DIR}-{iteration}.arl"
                    self._save_checkpoint(params, iteration, filename)

        result.params = params
        result.checkpoint_path = self._save_checkpoint(params, cfg.iterations, FINAL_CHECKPOINT)
        return result

    def _save_checkpoint(self, params: PolicyParameters, iteration: int, filename: str) -> str:
        path = os.path.join(self.out_dir, filename)
        save_checkpoint(params, self.metadata(iteration), path)
        logger.info(f"Saved checkpoint {path}")
        return path

    def metadata(self, iteration: int) -> Dict[str, Any]:
        return {
            "iteration": iteration,
            "seed": self.seed,
            "map": self.map_spec.name,
            "base_agent": self.base_agent.spec,
            "opponent": self.opponent.spec,
            "temperature": self.config.mixer.temperature,
        }


def train(
    map_spec,
    base_agent,
    opponent,
    cfg: ExperimentConfig,
    seed: int,
    out_dir: str,
    progress: bool = True,
) -> TrainResult:
    """Run a full adaptation: ``map_spec`` may be a name/path, the agents may be spec strings."""
    if isinstance(map_spec, str):
        map_spec = resolve_map(map_spec)
    trainer = Trainer(
        map_spec,
        parse_agent(base_agent),
        parse_agent(opponent),
        cfg,
        seed,
        out_dir,
        progress=progress,
    )
    return trainer.train()
