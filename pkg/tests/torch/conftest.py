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

import numpy as np
import pytest

pytorch = pytest.importorskip("torch")
art = pytest.importorskip("adapterrl.torch")

from adapterrl.config import NetConfig  # noqa: E402

INPUT_DIM = 10
BATCH_SIZE = 12


@pytest.fixture
def tiny_net_config():
    return NetConfig(input_dim=INPUT_DIM, hidden_sizes=[8, 6])


@pytest.fixture
def tiny_params(tiny_net_config):
    return art.init_params(tiny_net_config, seed=0)


def make_minibatch(params, seed, tau=0.5, batch_size=BATCH_SIZE):
    """Random minibatch whose old log-probabilities sit near the current policy's."""
    rng = np.random.default_rng(seed)
    n = params.config.action_count
    masks = rng.random((batch_size, n)) < 0.5
    masks[:, 0] = True
    observations = rng.normal(size=(batch_size, params.config.input_dim))
    base_logits = np.zeros((batch_size, n))
    actions = np.zeros(batch_size, dtype=np.int64)
    for row in range(batch_size):
        legal = np.flatnonzero(masks[row])
        base_logits[row, rng.choice(legal)] = 1.0 / tau
        actions[row] = rng.choice(legal)

    adj, _ = art.forward(params, observations)
    log_probs = art.masked_log_softmax(
        pytorch.as_tensor(base_logits) + adj, pytorch.as_tensor(masks)
    )
    current = log_probs.gather(1, pytorch.as_tensor(actions).view(-1, 1)).squeeze(1).numpy()
    offsets = rng.choice([-0.5, -0.05, 0.0, 0.05, 0.5], size=batch_size)

    return art.Minibatch(
        observations=pytorch.as_tensor(observations, dtype=art.DTYPE),
        actions=pytorch.as_tensor(actions),
        masks=pytorch.as_tensor(masks),
        base_logits=pytorch.as_tensor(base_logits, dtype=art.DTYPE),
        old_log_probs=pytorch.as_tensor(current + offsets, dtype=art.DTYPE),
        advantages=pytorch.as_tensor(rng.normal(size=batch_size), dtype=art.DTYPE),
        returns=pytorch.as_tensor(rng.normal(size=batch_size), dtype=art.DTYPE),
    )


@pytest.fixture
def minibatch_factory():
    return make_minibatch
