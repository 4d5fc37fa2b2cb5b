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

from collections import OrderedDict
from typing import Mapping

import torch

from .network import PolicyParameters


def adam_step(
    params: PolicyParameters,
    gradients: Mapping[str, torch.Tensor],
    lr: float,
    beta1: float = 0.9,
    beta2: float = 0.999,
    eps: float = 1e-8,
) -> PolicyParameters:
    """One bias-corrected Adam update; returns new parameters and leaves ``params`` untouched."""
    if set(gradients) != set(params.tensors):
        missing = sorted(set(params.tensors) ^ set(gradients))
        raise ValueError(f"gradients and parameters disagree on names: {missing}")

    step = params.step + 1
    correction1 = 1.0 - beta1**step
    correction2 = 1.0 - beta2**step
    tensors, adam_m, adam_v = OrderedDict(), OrderedDict(), OrderedDict()
    for name, value in params.tensors.items():
        grad = gradients[name]
        if grad.shape != value.shape:
            raise ValueError(
                f"gradient for {name} has shape {tuple(grad.shape)}, expected {tuple(value.shape)}"
            )
        m = beta1 * params.adam_m[name] + (1.0 - beta1) * grad
        v = beta2 * params.adam_v[name] + (1.0 - beta2) * grad * grad
        tensors[name] = value - lr * (m / correction1) / ((v / correction2).sqrt() + eps)
        adam_m[name] = m
        adam_v[name] = v

    return PolicyParameters(params.config, tensors, adam_m, adam_v, step)
