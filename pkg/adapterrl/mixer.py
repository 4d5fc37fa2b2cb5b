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

"""Mixing a frozen base agent's action with adapter adjustment logits.

The base agent's deterministic action ``a`` becomes the one-hot logit vector ``e_a / tau``; the
adapter contributes adjustment logits and the sampling distribution is
``softmax(e_a / tau + adj)`` restricted to the legal actions.
"""

import math
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np


@dataclass(frozen=True)
class MixedDistribution:
    base_logits: np.ndarray
    adjustment_logits: np.ndarray
    probabilities: np.ndarray
    log_probabilities: np.ndarray
    mask: np.ndarray

    @property
    def size(self) -> int:
        return len(self.probabilities)

    def log_prob(self, index: int) -> float:
        return float(self.log_probabilities[index])

    def entropy(self) -> float:
        p = self.probabilities[self.mask]
        return float(-np.sum(p * self.log_probabilities[self.mask]))

    def argmax(self) -> int:
        """Most likely action; ties go to the lowest index."""
        return int(np.argmax(self.probabilities))


def onehot_temperature_logits(action: int, n: int, tau: float) -> np.ndarray:
    """``1 / tau`` at ``action`` and 0 elsewhere."""
    if tau <= 0 or not math.isfinite(tau):
        raise ValueError(f"temperature must be a positive finite number, got {tau}")
    if not 0 <= action < n:
        raise ValueError(f"action index {action} outside [0, {n - 1}]")
    logits = np.zeros(n, dtype=np.float64)
    logits[action] = 1.0 / tau
    return logits


def combine_to_probabilities(
    base_logits: np.ndarray, adj_logits: np.ndarray, mask: Optional[np.ndarray] = None
) -> MixedDistribution:
    """Softmax of ``base_logits + adj_logits`` over the legal entries of ``mask``.

    Parameters
    ----------
    base_logits: np.ndarray
        Already temperature-scaled base logits.
    adj_logits: np.ndarray
        Adjustment logits of the adapter, same length.
    mask: np.ndarray, optional
        Boolean legality mask; masked entries get probability exactly 0. Defaults to all legal.
    """
    base_logits = np.asarray(base_logits, dtype=np.float64)
    adj_logits = np.asarray(adj_logits, dtype=np.float64)
    if base_logits.shape != adj_logits.shape or base_logits.ndim != 1:
        raise ValueError(
            f"base and adjustment logits must be 1-d of equal length, "
            f"got {base_logits.shape} and {adj_logits.shape}"
        )
    if mask is None:
        mask = np.ones(base_logits.shape, dtype=bool)
    mask = np.asarray(mask, dtype=bool)
    if mask.shape != base_logits.shape:
        raise ValueError(f"mask shape {mask.shape} does not match logits {base_logits.shape}")
    if not mask.any():
        raise ValueError("every action is masked")
    if not (np.isfinite(base_logits).all() and np.isfinite(adj_logits).all()):
        raise ValueError("logits must be finite")

    combined = base_logits + adj_logits
    shifted = combined - combined[mask].max()
    exp = np.where(mask, np.exp(np.where(mask, shifted, 0.0)), 0.0)
    total = exp.sum()
    probabilities = exp / total
    with np.errstate(divide="ignore"):
        log_probabilities = np.where(mask, shifted - np.log(total), -np.inf)

    return MixedDistribution(
        base_logits=base_logits,
        adjustment_logits=adj_logits,
        probabilities=probabilities,
        log_probabilities=log_probabilities,
        mask=mask,
    )


def sample_categorical(dist: MixedDistribution, rng: np.random.Generator) -> Tuple[int, float]:
    """Inverse-CDF sample in index order; returns ``(index, log p(index))``."""
    cdf = np.cumsum(dist.probabilities)
    u = rng.random()
    index = int(np.searchsorted(cdf, u, side="right"))
    if index >= dist.size or dist.probabilities[index] == 0.0:
        # u fell past the rounded total; take the last action with mass
        index = int(np.flatnonzero(dist.probabilities > 0.0)[-1])
    return index, dist.log_prob(index)


def continuous_combine(
    a_base: float, a_adj_shift: float, tau: float, rng: np.random.Generator
) -> Tuple[float, float]:
    """Continuous-action mixing: sample ``Normal(a_base, tau)`` and shift it by ``a_adj_shift``.

    Returns the shifted action and the Gaussian log-density of the pre-shift sample.
    """
    if tau <= 0 or not math.isfinite(tau):
        raise ValueError(f"temperature must be a positive finite number, got {tau}")
    sample = float(rng.normal(a_base, tau))
    z = (sample - a_base) / tau
    log_density = -0.5 * z * z - math.log(tau) - 0.5 * math.log(2.0 * math.pi)
    return sample + a_adj_shift, log_density
