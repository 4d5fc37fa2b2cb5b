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

"""Feedforward adapter networks with hand-written backpropagation.

Parameters live in a flat ordered dict of float64 tensors, e.g. ``policy.0.weight`` ...
``policy.3.bias`` and ``value.0.weight`` ... for two separate networks, or ``trunk.{i}``,
``policy_head`` and ``value_head`` with a shared trunk. Weights use the ``(out, in)`` layout
of ``torch.nn.Linear``.
"""

import logging
import math
from collections import OrderedDict
from dataclasses import dataclass, field
from typing import Dict, List, NamedTuple, Tuple

import numpy as np
import torch

from ..config.model import NetConfig
from ..utils.registry import Registry
from .losses import DTYPE, LossInfo, Minibatch, NonFiniteError, PpoLoss, ppo_loss_gradients

LOG = logging.getLogger("adapterrl")

HIDDEN_GAIN = math.sqrt(2.0)
POLICY_GAIN = 0.01
VALUE_GAIN = 1.0

activation_registry: Registry = Registry("torch.activations")


@activation_registry.register("tanh")
class Tanh:
    @staticmethod
    def forward(pre: torch.Tensor) -> torch.Tensor:
        return torch.tanh(pre)

    @staticmethod
    def derivative(pre: torch.Tensor, out: torch.Tensor) -> torch.Tensor:
        return 1.0 - out * out


@activation_registry.register("relu")
class ReLU:
    @staticmethod
    def forward(pre: torch.Tensor) -> torch.Tensor:
        return pre.clamp_min(0.0)

    @staticmethod
    def derivative(pre: torch.Tensor, out: torch.Tensor) -> torch.Tensor:
        return (pre > 0).to(DTYPE)


class LayerSpec(NamedTuple):
    name: str
    in_dim: int
    out_dim: int
    gain: float


def layer_specs(config: NetConfig) -> List[LayerSpec]:
    """Every linear layer in declaration order."""
    if config.input_dim is None:
        raise ValueError("NetConfig.input_dim must be set before building parameters")
    sizes = [config.input_dim] + list(config.hidden_sizes)
    depth = len(config.hidden_sizes)
    if config.shared_trunk:
        specs = [LayerSpec(f"trunk.{i}", sizes[i], sizes[i + 1], HIDDEN_GAIN) for i in range(depth)]
        specs.append(LayerSpec("policy_head", sizes[-1], config.action_count, POLICY_GAIN))
        specs.append(LayerSpec("value_head", sizes[-1], 1, VALUE_GAIN))
        return specs

    specs = []
    for prefix, out_dim, gain in (
        ("policy", config.action_count, POLICY_GAIN),
        ("value", 1, VALUE_GAIN),
    ):
        specs.extend(
            LayerSpec(f"{prefix}.{i}", sizes[i], sizes[i + 1], HIDDEN_GAIN) for i in range(depth)
        )
        specs.append(LayerSpec(f"{prefix}.{depth}", sizes[-1], out_dim, gain))
    return specs


def parameter_shapes(config: NetConfig) -> "OrderedDict[str, Tuple[int, ...]]":
    shapes: "OrderedDict[str, Tuple[int, ...]]" = OrderedDict()
    for spec in layer_specs(config):
        shapes[f"{spec.name}.weight"] = (spec.out_dim, spec.in_dim)
        shapes[f"{spec.name}.bias"] = (spec.out_dim,)
    return shapes


@dataclass
class PolicyParameters:
    """Adapter weights plus the Adam state that goes with them."""

    config: NetConfig
    tensors: "OrderedDict[str, torch.Tensor]"
    adam_m: "OrderedDict[str, torch.Tensor]" = field(default_factory=OrderedDict)
    adam_v: "OrderedDict[str, torch.Tensor]" = field(default_factory=OrderedDict)
    step: int = 0

    def __post_init__(self):
        for name, tensor in self.tensors.items():
            if name not in self.adam_m:
                self.adam_m[name] = torch.zeros_like(tensor)
            if name not in self.adam_v:
                self.adam_v[name] = torch.zeros_like(tensor)

    @property
    def names(self) -> List[str]:
        return list(self.tensors)

    @property
    def num_parameters(self) -> int:
        return sum(t.numel() for t in self.tensors.values())

    def __getitem__(self, name: str) -> torch.Tensor:
        return self.tensors[name]

    def copy(self) -> "PolicyParameters":
        return PolicyParameters(
            self.config,
            OrderedDict((k, v.clone()) for k, v in self.tensors.items()),
            OrderedDict((k, v.clone()) for k, v in self.adam_m.items()),
            OrderedDict((k, v.clone()) for k, v in self.adam_v.items()),
            self.step,
        )

    def is_finite(self) -> bool:
        return all(bool(torch.isfinite(t).all()) for t in self.tensors.values())


def orthogonal(shape: Tuple[int, int], gain: float, generator: torch.Generator) -> torch.Tensor:
    rows, cols = shape
    flat = torch.randn(rows, cols, generator=generator, dtype=DTYPE)
    if rows < cols:
        flat = flat.T
    q, r = torch.linalg.qr(flat)
    q = q * torch.sign(torch.diagonal(r))
    if rows < cols:
        q = q.T
    return gain * q.contiguous()


def init_params(config: NetConfig, seed: int) -> PolicyParameters:
    """Orthogonal init (gain sqrt(2) hidden, 0.01 policy head, 1.0 value head), zero biases."""
    config.validate()
    generator = torch.Generator().manual_seed(int(seed))
    tensors: "OrderedDict[str, torch.Tensor]" = OrderedDict()
    for spec in layer_specs(config):
        weight = orthogonal((spec.out_dim, spec.in_dim), spec.gain, generator)
        tensors[f"{spec.name}.weight"] = weight
        tensors[f"{spec.name}.bias"] = torch.zeros(spec.out_dim, dtype=DTYPE)
    return PolicyParameters(config, tensors)


def zero_params(config: NetConfig) -> PolicyParameters:
    config.validate()
    shapes = parameter_shapes(config)
    return PolicyParameters(
        config, OrderedDict((k, torch.zeros(s, dtype=DTYPE)) for k, s in shapes.items())
    )


class _Hidden(NamedTuple):
    inputs: torch.Tensor
    pre: torch.Tensor
    out: torch.Tensor


@dataclass
class ForwardCache:
    inputs: torch.Tensor
    policy_hidden: List[_Hidden]
    value_hidden: List[_Hidden]
    adj_logits: torch.Tensor
    values: torch.Tensor


def forward(params: PolicyParameters, observation) -> Tuple[torch.Tensor, torch.Tensor]:
    """Adjustment logits and value estimate.

    Parameters
    ----------
    params: PolicyParameters
    observation: array-like
        One observation ``(input_dim,)`` or a batch ``(B, input_dim)``.

    Returns
    -------
    (adj_logits, value): ``(29,)`` and ``()`` tensors, or ``(B, 29)`` and ``(B,)`` for a batch.
    """
    x = torch.as_tensor(observation, dtype=DTYPE)
    single = x.dim() == 1
    cache = forward_cached(params, x.unsqueeze(0) if single else x)
    if single:
        return cache.adj_logits[0], cache.values[0]
    return cache.adj_logits, cache.values


def forward_cached(params: PolicyParameters, inputs: torch.Tensor) -> ForwardCache:
    config = params.config
    if inputs.dim() != 2 or inputs.shape[1] != config.input_dim:
        raise ValueError(
            f"expected observations of length {config.input_dim}, got shape {tuple(inputs.shape)}"
        )
    activation = activation_registry[config.activation]
    depth = len(config.hidden_sizes)

    if config.shared_trunk:
        trunk = _hidden_stack(params, "trunk", inputs, depth, activation)
        last = trunk[-1].out
        adj = _linear(params, "policy_head", last)
        values = _linear(params, "value_head", last).squeeze(1)
        return ForwardCache(inputs, trunk, [], adj, values)

    policy = _hidden_stack(params, "policy", inputs, depth, activation)
    value = _hidden_stack(params, "value", inputs, depth, activation)
    adj = _linear(params, f"policy.{depth}", policy[-1].out)
    values = _linear(params, f"value.{depth}", value[-1].out).squeeze(1)
    return ForwardCache(inputs, policy, value, adj, values)


def backward(
    params: PolicyParameters, minibatch: Minibatch, loss_spec: PpoLoss
) -> Tuple["OrderedDict[str, torch.Tensor]", LossInfo]:
    """Exact gradients of the combined PPO loss on ``minibatch`` for every parameter."""
    cache = forward_cached(params, minibatch.observations)
    _check_finite(cache.adj_logits, "policy output")
    _check_finite(cache.values, "value output")
    info, d_adj, d_values = ppo_loss_gradients(cache.adj_logits, cache.values, minibatch, loss_spec)

    config = params.config
    activation = activation_registry[config.activation]
    depth = len(config.hidden_sizes)
    grads: Dict[str, torch.Tensor] = {}

    if config.shared_trunk:
        last = cache.policy_hidden[-1].out
        d_last = _linear_backward(params, "policy_head", last, d_adj, grads)
        d_last = d_last + _linear_backward(
            params, "value_head", last, d_values.unsqueeze(1), grads
        )
        _hidden_backward(params, "trunk", cache.policy_hidden, d_last, activation, grads)
    else:
        for prefix, hidden, d_out in (
            ("policy", cache.policy_hidden, d_adj),
            ("value", cache.value_hidden, d_values.unsqueeze(1)),
        ):
            d_last = _linear_backward(params, f"{prefix}.{depth}", hidden[-1].out, d_out, grads)
            _hidden_backward(params, prefix, hidden, d_last, activation, grads)

    ordered = OrderedDict((name, grads[name]) for name in params.tensors)
    return ordered, info


def _linear(params: PolicyParameters, name: str, x: torch.Tensor) -> torch.Tensor:
    return x @ params.tensors[f"{name}.weight"].T + params.tensors[f"{name}.bias"]


def _hidden_stack(params, prefix: str, x: torch.Tensor, depth: int, activation) -> List[_Hidden]:
    layers = []
    for i in range(depth):
        pre = _linear(params, f"{prefix}.{i}", x)
        out = activation.forward(pre)
        layers.append(_Hidden(x, pre, out))
        x = out
    return layers


def _linear_backward(params, name: str, x: torch.Tensor, d_out: torch.Tensor, grads):
    _check_finite(d_out, name)
    grads[f"{name}.weight"] = d_out.T @ x
    grads[f"{name}.bias"] = d_out.sum(0)
    return d_out @ params.tensors[f"{name}.weight"]


def _hidden_backward(params, prefix: str, hidden: List[_Hidden], d_out, activation, grads):
    for i in reversed(range(len(hidden))):
        layer = hidden[i]
        d_pre = d_out * activation.derivative(layer.pre, layer.out)
        d_out = _linear_backward(params, f"{prefix}.{i}", layer.inputs, d_pre, grads)


def _check_finite(tensor: torch.Tensor, where: str):
    if not torch.isfinite(tensor).all():
        raise NonFiniteError(f"non-finite values in layer {where}")


def numpy_forward(params: PolicyParameters, observation: np.ndarray) -> Tuple[np.ndarray, float]:
    """Single-observation forward returning numpy / float, for agents acting in the env."""
    adj, value = forward(params, observation)
    return adj.numpy(), float(value)

