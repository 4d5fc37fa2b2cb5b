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

"""Clipped-surrogate PPO objective over the mixed (base + adjustment) policy.

Besides the loss values, :func:`ppo_loss_gradients` returns the exact gradients of the combined
loss with respect to the adjustment logits and the value predictions; the network backward pass
starts from there.
"""

from dataclasses import dataclass

import torch

from ..config.trainer import PpoConfig

DTYPE = torch.float64


class NonFiniteError(FloatingPointError):
    """A logit, ratio or gradient stopped being finite."""


@dataclass(frozen=True)
class PpoLoss:
    """Coefficients of ``L = -clip_objective + value_coef * mse - entropy_coef * entropy``."""

    clip_eps: float = 0.2
    value_coef: float = 1.0
    entropy_coef: float = 0.01

    @classmethod
    def from_config(cls, config: PpoConfig) -> "PpoLoss":
        return cls(config.clip_eps, config.value_coef, config.entropy_coef)


@dataclass
class Minibatch:
    observations: torch.Tensor
    actions: torch.Tensor
    masks: torch.Tensor
    base_logits: torch.Tensor
    old_log_probs: torch.Tensor
    advantages: torch.Tensor
    returns: torch.Tensor

    def __len__(self) -> int:
        return int(self.actions.shape[0])

    def take(self, indices) -> "Minibatch":
        index = torch.as_tensor(indices, dtype=torch.long)
        return Minibatch(
            self.observations[index],
            self.actions[index],
            self.masks[index],
            self.base_logits[index],
            self.old_log_probs[index],
            self.advantages[index],
            self.returns[index],
        )


@dataclass
class LossInfo:
    loss: float
    policy_loss: float
    value_loss: float
    entropy: float
    clip_frac: float
    mean_ratio: float
    max_ratio: float


def _as_tensor(values) -> torch.Tensor:
    return torch.as_tensor(values, dtype=DTYPE)


def masked_log_softmax(logits: torch.Tensor, masks: torch.Tensor) -> torch.Tensor:
    """Row-wise log-softmax over the legal entries; illegal entries get ``-inf``."""
    masked = logits.masked_fill(~masks, float("-inf"))
    return masked - torch.logsumexp(masked, dim=-1, keepdim=True)


def masked_entropy(log_probs: torch.Tensor, masks: torch.Tensor) -> torch.Tensor:
    safe = torch.where(masks, log_probs, torch.zeros_like(log_probs))
    return -(log_probs.exp() * safe).sum(-1)


def clip_objective(logp_new, logp_old, advantages, clip_eps: float) -> torch.Tensor:
    """Negated mean of ``min(rho * A, clip(rho, 1 - eps, 1 + eps) * A)``.

    ``rho = exp(logp_new - logp_old)``; a non-finite ratio raises :class:`NonFiniteError`.
    """
    logp_new, logp_old, advantages = map(_as_tensor, (logp_new, logp_old, advantages))
    _check_lengths(logp_new, logp_old, advantages)
    ratio = _ratio(logp_new, logp_old)
    surrogate = torch.minimum(
        ratio * advantages, ratio.clamp(1.0 - clip_eps, 1.0 + clip_eps) * advantages
    )
    return -surrogate.mean()


def value_objective(v_pred, v_old, advantages) -> torch.Tensor:
    """Mean squared error against the fixed GAE return ``v_old + advantages``."""
    v_pred, v_old, advantages = map(_as_tensor, (v_pred, v_old, advantages))
    _check_lengths(v_pred, v_old, advantages)
    return ((v_pred - (v_old + advantages)) ** 2).mean()


def ppo_loss_gradients(
    adj_logits: torch.Tensor, values: torch.Tensor, batch: Minibatch, spec: PpoLoss
):
    """Combined loss plus ``dL/d adj_logits`` and ``dL/d values``.

    The base logits only shift the combined logits, so they carry no gradient.
    """
    size = len(batch)
    masks = batch.masks
    log_probs = masked_log_softmax(batch.base_logits + adj_logits, masks)
    probs = log_probs.exp()
    logp = log_probs.gather(1, batch.actions.view(-1, 1)).squeeze(1)
    ratio = _ratio(logp, batch.old_log_probs)

    advantages = batch.advantages
    unclipped = ratio * advantages
    clipped = ratio.clamp(1.0 - spec.clip_eps, 1.0 + spec.clip_eps) * advantages
    policy_loss = -torch.minimum(unclipped, clipped).mean()
    # the min only passes gradient through the unclipped branch
    d_logp = torch.where(unclipped <= clipped, unclipped, torch.zeros_like(unclipped))

    onehot = torch.zeros_like(probs)
    onehot.scatter_(1, batch.actions.view(-1, 1), 1.0)
    d_logits = -(d_logp / size).unsqueeze(1) * (onehot - probs)

    entropy = masked_entropy(log_probs, masks)
    if spec.entropy_coef:
        safe_log = torch.where(masks, log_probs, torch.zeros_like(log_probs))
        d_entropy = -probs * (safe_log + entropy.unsqueeze(1))
        d_logits = d_logits - (spec.entropy_coef / size) * d_entropy

    residual = values - batch.returns
    value_loss = (residual**2).mean()
    d_values = (2.0 * spec.value_coef / size) * residual

    loss = policy_loss + spec.value_coef * value_loss - spec.entropy_coef * entropy.mean()
    if not torch.isfinite(loss):
        raise NonFiniteError(f"PPO loss is not finite ({float(loss)})")

    info = LossInfo(
        loss=float(loss),
        policy_loss=float(policy_loss),
        value_loss=float(value_loss),
        entropy=float(entropy.mean()),
        clip_frac=float(((ratio - 1.0).abs() > spec.clip_eps).to(DTYPE).mean()),
        mean_ratio=float(ratio.mean()),
        max_ratio=float(ratio.max()),
    )
    return info, d_logits, d_values


def ppo_loss(adj_logits: torch.Tensor, values: torch.Tensor, batch: Minibatch, spec: PpoLoss):
    """Combined loss as a tensor; differentiable by autograd when the inputs require grad."""
    log_probs = masked_log_softmax(batch.base_logits + adj_logits, batch.masks)
    logp = log_probs.gather(1, batch.actions.view(-1, 1)).squeeze(1)
    policy_loss = clip_objective(logp, batch.old_log_probs, batch.advantages, spec.clip_eps)
    value_loss = ((values - batch.returns) ** 2).mean()
    entropy = masked_entropy(log_probs, batch.masks).mean()
    return policy_loss + spec.value_coef * value_loss - spec.entropy_coef * entropy


def _ratio(logp_new: torch.Tensor, logp_old: torch.Tensor) -> torch.Tensor:
    ratio = torch.exp(logp_new - logp_old)
    if not torch.isfinite(ratio).all():
        raise NonFiniteError("probability ratio is not finite; the policy has diverged")
    return ratio


def _check_lengths(*tensors: torch.Tensor):
    lengths = {tuple(t.shape) for t in tensors}
    if len(lengths) != 1:
        raise ValueError(f"inputs must have equal shapes, got {sorted(lengths)}")
