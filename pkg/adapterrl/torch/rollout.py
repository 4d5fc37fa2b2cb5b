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

import logging
from dataclasses import dataclass, field
from typing import List, Sequence, Tuple

import numpy as np
import torch

from ..agents.base import AgentInterface
from ..config.model import MixerConfig
from ..env.game import RtsEnv, legal_actions
from ..env.observation import encode_observation
from ..mixer import combine_to_probabilities, sample_categorical
from .losses import DTYPE, Minibatch, NonFiniteError
from .network import PolicyParameters, forward

LOG = logging.getLogger("adapterrl")

WIN, DRAW, LOSS = "win", "draw", "loss"


@dataclass
class EpisodeRecord:
    outcome: str
    reward: float
    decisions: int
    ticks: int


@dataclass
class RolloutBatch:
    """T transitions gathered under one parameter snapshot, in collection order."""

    observations: np.ndarray
    actions: np.ndarray
    masks: np.ndarray
    base_logits: np.ndarray
    rewards: np.ndarray
    dones: np.ndarray
    log_probs: np.ndarray
    values: np.ndarray
    env_ids: np.ndarray
    advantages: np.ndarray
    returns: np.ndarray
    episodes: List[EpisodeRecord] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.actions)

    @property
    def num_episodes(self) -> int:
        return len(self.episodes)

    @property
    def winrate(self) -> float:
        """Wins plus half the draws over finished episodes (0.0 when none finished)."""
        if not self.episodes:
            return 0.0
        wins = sum(e.outcome == WIN for e in self.episodes)
        draws = sum(e.outcome == DRAW for e in self.episodes)
        return (wins + 0.5 * draws) / len(self.episodes)

    @property
    def mean_episode_reward(self) -> float:
        if not self.episodes:
            return 0.0
        return float(np.mean([e.reward for e in self.episodes]))

    def as_minibatch(self, advantages: np.ndarray) -> Minibatch:
        """The whole batch as tensors, with ``advantages`` (possibly normalized) in place."""
        return Minibatch(
            observations=torch.as_tensor(self.observations, dtype=DTYPE),
            actions=torch.as_tensor(self.actions, dtype=torch.long),
            masks=torch.as_tensor(self.masks, dtype=torch.bool),
            base_logits=torch.as_tensor(self.base_logits, dtype=DTYPE),
            old_log_probs=torch.as_tensor(self.log_probs, dtype=DTYPE),
            advantages=torch.as_tensor(advantages, dtype=DTYPE),
            returns=torch.as_tensor(self.returns, dtype=DTYPE),
        )


def compute_gae(
    rewards: Sequence[float],
    values: Sequence[float],
    dones: Sequence[int],
    bootstrap_value: float,
    gamma: float,
    gae_lambda: float,
) -> Tuple[np.ndarray, np.ndarray]:
    """Generalized advantage estimates and returns of one trajectory.

    ``dones[t] == 1`` cuts both the bootstrap and the advantage sum after step ``t``;
    ``bootstrap_value`` is the value of the state following the last step.
    """
    rewards = np.asarray(rewards, dtype=np.float64)
    values = np.asarray(values, dtype=np.float64)
    dones = np.asarray(dones, dtype=np.float64)
    if not len(rewards) == len(values) == len(dones):
        raise ValueError(
            f"rewards, values and dones differ in length: "
            f"{len(rewards)}, {len(values)}, {len(dones)}"
        )

    advantages = np.zeros_like(rewards)
    running = 0.0
    next_value = float(bootstrap_value)
    for t in reversed(range(len(rewards))):
        nonterminal = 1.0 - dones[t]
        delta = rewards[t] + gamma * next_value * nonterminal - values[t]
        running = delta + gamma * gae_lambda * nonterminal * running
        advantages[t] = running
        next_value = values[t]
    return advantages, values + advantages


def normalize_advantages(advantages: np.ndarray, eps: float = 1e-8) -> np.ndarray:
    advantages = np.asarray(advantages, dtype=np.float64)
    return (advantages - advantages.mean()) / (advantages.std() + eps)


def collect_rollout(
    envs: List[RtsEnv],
    base_agent: AgentInterface,
    params: PolicyParameters,
    mixer_cfg: MixerConfig,
    T: int,
    rng: np.random.Generator,
    gamma: float = 0.99,
    gae_lambda: float = 0.95,
) -> RolloutBatch:
    """Step ``envs`` in lockstep through the mixed policy until ``T`` decisions are stored.

    Each round visits the environments in order and takes one decision in each, so every
    environment contributes ``T / len(envs)`` transitions (the first ones one more when ``T`` does
    not divide evenly). Finished episodes reset automatically.
    """
    if not envs:
        raise ValueError("collect_rollout needs at least one environment")
    tau = mixer_cfg.temperature
    for env in envs:
        if env.state is None or not env.state.ongoing:
            env.reset()

    observations, actions, masks, base_logits = [], [], [], []
    rewards, dones, log_probs, values, env_ids = [], [], [], [], []
    episodes: List[EpisodeRecord] = []
    running_reward = [0.0] * len(envs)
    running_decisions = [0] * len(envs)

    while len(actions) < T:
        active = list(enumerate(envs))[: T - len(actions)]
        batch_obs = np.stack(
            [encode_observation(env.state, env.state.learner) for _, env in active]  # type: ignore
        )
        adj_batch, value_batch = forward(params, batch_obs)
        if not (torch.isfinite(adj_batch).all() and torch.isfinite(value_batch).all()):
            raise NonFiniteError("non-finite adapter output while collecting samples")
        adj_batch, value_batch = adj_batch.numpy(), value_batch.numpy()

        for row, (i, env) in enumerate(active):
            state = env.state
            unit = state.active_unit  # type: ignore
            mask = legal_actions(state, unit)  # type: ignore
            base = base_agent.base_logits(state, unit, tau, rng=rng)  # type: ignore
            dist = combine_to_probabilities(base, adj_batch[row], mask)
            action, logp = sample_categorical(dist, rng)
            learner = state.learner  # type: ignore
            result = env.step(action)

            observations.append(batch_obs[row])
            actions.append(action)
            masks.append(mask)
            base_logits.append(base)
            rewards.append(result.reward)
            dones.append(result.done)
            log_probs.append(logp)
            values.append(value_batch[row])
            env_ids.append(i)

            running_reward[i] += result.reward
            running_decisions[i] += 1
            if result.done:
                winner = result.info["winner"]
                outcome = DRAW if winner is None else (WIN if winner is learner else LOSS)
                episodes.append(
                    EpisodeRecord(
                        outcome, running_reward[i], running_decisions[i], result.next_state.tick
                    )
                )
                running_reward[i] = 0.0
                running_decisions[i] = 0
                env.reset()

    env_ids_arr = np.asarray(env_ids, dtype=np.int64)
    rewards_arr = np.asarray(rewards, dtype=np.float64)
    dones_arr = np.asarray(dones, dtype=np.int64)
    values_arr = np.asarray(values, dtype=np.float64)

    final_obs = np.stack(
        [encode_observation(env.state, env.state.learner) for env in envs]  # type: ignore
    )
    _, bootstrap = forward(params, final_obs)
    advantages = np.zeros(len(actions), dtype=np.float64)
    returns = np.zeros(len(actions), dtype=np.float64)
    for i in range(len(envs)):
        idx = np.flatnonzero(env_ids_arr == i)
        if not len(idx):
            continue
        adv, ret = compute_gae(
            rewards_arr[idx],
            values_arr[idx],
            dones_arr[idx],
            float(bootstrap[i]),
            gamma,
            gae_lambda,
        )
        advantages[idx] = adv
        returns[idx] = ret

    return RolloutBatch(
        observations=np.stack(observations),
        actions=np.asarray(actions, dtype=np.int64),
        masks=np.stack(masks),
        base_logits=np.stack(base_logits),
        rewards=rewards_arr,
        dones=dones_arr,
        log_probs=np.asarray(log_probs, dtype=np.float64),
        values=values_arr,
        env_ids=env_ids_arr,
        advantages=advantages,
        returns=returns,
        episodes=episodes,
    )
