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
from collections import OrderedDict

import numpy as np
import pytest

from adapterrl.config import NetConfig

pytorch = pytest.importorskip("torch")
art = pytest.importorskip("adapterrl.torch")

INPUT_DIM = 10

LOSS = art.PpoLoss(clip_eps=0.2, value_coef=0.5, entropy_coef=0.01)


def relative_error(analytic, numeric):
    scale = max(float(analytic.abs().max()), float(numeric.abs().max()), 1e-6)
    return float((analytic - numeric).abs().max()) / scale


def finite_difference_gradients(params, batch, spec, h=1e-5):
    def loss_value():
        adj, values = art.forward(params, batch.observations)
        return float(art.ppo_loss(adj, values, batch, spec))

    numeric = OrderedDict()
    for name, tensor in params.tensors.items():
        flat = tensor.view(-1)
        grad = pytorch.zeros_like(flat)
        for i in range(flat.numel()):
            original = float(flat[i])
            flat[i] = original + h
            plus = loss_value()
            flat[i] = original - h
            minus = loss_value()
            flat[i] = original
            grad[i] = (plus - minus) / (2 * h)
        numeric[name] = grad.view_as(tensor)
    return numeric


@pytest.mark.parametrize("shared_trunk", [False, True])
@pytest.mark.parametrize("seed", range(5))
def test_backward_matches_finite_differences(minibatch_factory, seed, shared_trunk):
    config = NetConfig(input_dim=INPUT_DIM, hidden_sizes=[8, 6], shared_trunk=shared_trunk)
    params = art.init_params(config, seed)
    batch = minibatch_factory(params, seed)

    analytic, _ = art.backward(params, batch, LOSS)
    numeric = finite_difference_gradients(params, batch, LOSS)

    assert list(analytic) == params.names
    for name in params.names:
        assert relative_error(analytic[name], numeric[name]) < 1e-4, name


@pytest.mark.parametrize("activation", ["tanh", "relu"])
@pytest.mark.parametrize("shared_trunk", [False, True])
def test_backward_matches_autograd(minibatch_factory, activation, shared_trunk):
    config = NetConfig(
        input_dim=INPUT_DIM, hidden_sizes=[8, 6], activation=activation, shared_trunk=shared_trunk
    )
    params = art.init_params(config, 3)
    batch = minibatch_factory(params, 3)
    leaves = OrderedDict(
        (name, tensor.clone().requires_grad_(True)) for name, tensor in params.tensors.items()
    )

    adj, values = art.forward(art.PolicyParameters(config, leaves), batch.observations)
    art.ppo_loss(adj, values, batch, LOSS).backward()
    analytic, info = art.backward(params, batch, LOSS)

    for name, leaf in leaves.items():
        assert pytorch.allclose(analytic[name], leaf.grad, rtol=1e-8, atol=1e-12), name
    assert info.loss == pytest.approx(float(art.ppo_loss(adj, values, batch, LOSS)), rel=1e-12)


def test_zero_advantages_leave_the_policy_gradient_at_zero(tiny_params, minibatch_factory):
    batch = minibatch_factory(tiny_params, 0)
    batch.advantages = pytorch.zeros_like(batch.advantages)
    spec = art.PpoLoss(clip_eps=0.2, value_coef=1.0, entropy_coef=0.0)

    grads, _ = art.backward(tiny_params, batch, spec)

    for name, grad in grads.items():
        if name.startswith("policy."):
            assert pytorch.count_nonzero(grad) == 0, name
    assert pytorch.count_nonzero(grads["value.2.weight"]) > 0


def test_value_gradient_scales_with_its_coefficient(tiny_params, minibatch_factory):
    batch = minibatch_factory(tiny_params, 1)

    single, _ = art.backward(tiny_params, batch, art.PpoLoss(0.2, 1.0, 0.01))
    double, _ = art.backward(tiny_params, batch, art.PpoLoss(0.2, 2.0, 0.01))

    for name in tiny_params.names:
        expected = 2 * single[name] if name.startswith("value.") else single[name]
        assert pytorch.allclose(double[name], expected, rtol=1e-12, atol=0.0), name


def test_init_is_deterministic(tiny_net_config):
    first = art.init_params(tiny_net_config, 7)
    second = art.init_params(tiny_net_config, 7)
    other = art.init_params(tiny_net_config, 8)

    for name in first.names:
        assert pytorch.equal(first[name], second[name])
    assert not pytorch.equal(first["policy.0.weight"], other["policy.0.weight"])


def test_init_is_orthogonal_with_the_documented_gains(tiny_params):
    hidden = tiny_params["policy.0.weight"]
    head = tiny_params["policy.2.weight"]

    assert pytorch.allclose(hidden @ hidden.T, 2.0 * pytorch.eye(8, dtype=art.DTYPE), atol=1e-10)
    assert pytorch.allclose(head.T @ head, 1e-4 * pytorch.eye(6, dtype=art.DTYPE), atol=1e-12)
    assert pytorch.count_nonzero(tiny_params["policy.0.bias"]) == 0
    assert tiny_params.num_parameters == sum(
        math.prod(shape) for shape in art.parameter_shapes(tiny_params.config).values()
    )


def test_fresh_policy_head_is_nearly_silent():
    params = art.init_params(NetConfig(input_dim=30, hidden_sizes=[64, 64]), 0)
    observations = np.random.default_rng(0).uniform(size=(100, 30))

    adj, _ = art.forward(params, observations)

    assert float(adj.abs().max()) < 0.1


def test_zero_parameters_output_zeros(tiny_net_config):
    params = art.zero_params(tiny_net_config)

    adj, value = art.forward(params, np.ones(INPUT_DIM))

    assert adj.shape == (29,)
    assert value.shape == ()
    assert pytorch.count_nonzero(adj) == 0
    assert float(value) == 0.0


def test_hand_built_network():
    params = art.zero_params(NetConfig(input_dim=2, hidden_sizes=[1]))
    params.tensors["policy.0.weight"][:] = pytorch.tensor([[0.5, -0.25]])
    params.tensors["policy.0.bias"][:] = 0.1
    params.tensors["policy.1.weight"][3, 0] = 2.0
    params.tensors["policy.1.bias"][7] = -1.0
    params.tensors["value.0.weight"][:] = pytorch.tensor([[1.0, 1.0]])
    params.tensors["value.1.weight"][0, 0] = 3.0
    params.tensors["value.1.bias"][0] = 0.5

    adj, value = art.numpy_forward(params, np.array([0.4, 0.8]))

    hidden = math.tanh(0.5 * 0.4 - 0.25 * 0.8 + 0.1)
    assert adj[3] == pytest.approx(2.0 * hidden)
    assert adj[7] == pytest.approx(-1.0)
    assert np.count_nonzero(adj) == 2
    assert value == pytest.approx(3.0 * math.tanh(1.2) + 0.5)


def test_batched_forward_matches_single_rows(tiny_params):
    observations = np.random.default_rng(1).normal(size=(4, INPUT_DIM))

    adj, values = art.forward(tiny_params, observations)

    assert adj.shape == (4, 29) and values.shape == (4,)
    for row in range(4):
        single_adj, single_value = art.forward(tiny_params, observations[row])
        assert pytorch.allclose(adj[row], single_adj, rtol=0, atol=1e-14)
        assert float(values[row]) == pytest.approx(float(single_value), abs=1e-14)


def test_forward_rejects_wrong_observation_length(tiny_params):
    with pytest.raises(ValueError):
        art.forward(tiny_params, np.zeros(INPUT_DIM + 1))


def test_non_finite_weights_are_reported(tiny_params, minibatch_factory):
    batch = minibatch_factory(tiny_params, 2)
    broken = tiny_params.copy()
    broken.tensors["policy.2.weight"][0, 0] = float("inf")

    with pytest.raises(art.NonFiniteError, match="policy output"):
        art.backward(broken, batch, LOSS)
    assert not broken.is_finite()
    assert tiny_params.is_finite()
