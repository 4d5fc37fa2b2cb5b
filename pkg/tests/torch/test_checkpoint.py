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

from adapterrl.config import NetConfig

pytorch = pytest.importorskip("torch")
art = pytest.importorskip("adapterrl.torch")
checkpoint = pytest.importorskip("adapterrl.torch.checkpoint")


@pytest.fixture
def trained_params(tiny_params, minibatch_factory):
    grads, _ = art.backward(tiny_params, minibatch_factory(tiny_params, 0), art.PpoLoss())
    return art.adam_step(tiny_params, grads, lr=0.01)


def test_round_trip_keeps_weights_moments_and_metadata(tmpdir, trained_params):
    path = str(tmpdir.join("adapter.arl"))
    meta = {"map": "basesWorkers8x8A", "temperature": 0.01, "seed": 3}

    art.save_checkpoint(trained_params, meta, path)
    loaded = art.load_checkpoint(path)

    assert loaded.metadata == meta
    assert loaded.config == trained_params.config
    assert loaded.params.step == 1
    for name in trained_params.names:
        assert pytorch.equal(loaded.params[name], trained_params[name])
        assert pytorch.equal(loaded.params.adam_m[name], trained_params.adam_m[name])
        assert pytorch.equal(loaded.params.adam_v[name], trained_params.adam_v[name])

    observations = np.random.default_rng(0).normal(size=(100, trained_params.config.input_dim))
    before = art.forward(trained_params, observations)
    after = art.forward(loaded.params, observations)
    assert pytorch.equal(before[0], after[0]) and pytorch.equal(before[1], after[1])


def test_file_starts_with_the_magic_and_version(tmpdir, tiny_params):
    path = str(tmpdir.join("adapter.arl"))

    art.save_checkpoint(tiny_params, None, path)

    with open(path, "rb") as f:
        assert f.read(8) == b"ARLCKPT1"
    assert art.load_checkpoint(path).metadata == {}


def test_truncated_file_is_corrupt(tmpdir, tiny_params):
    path = str(tmpdir.join("adapter.arl"))
    art.save_checkpoint(tiny_params, {}, path)
    with open(path, "rb") as f:
        blob = f.read()

    for cut in (4, 20, len(blob) // 2, len(blob) - 1):
        with pytest.raises(art.CorruptCheckpointError):
            art.decode_checkpoint(blob[:cut])


def test_trailing_bytes_are_corrupt(tmpdir, tiny_params):
    path = str(tmpdir.join("adapter.arl"))
    art.save_checkpoint(tiny_params, {}, path)
    with open(path, "rb") as f:
        blob = f.read()

    with pytest.raises(art.CorruptCheckpointError, match="trailing"):
        art.decode_checkpoint(blob + b"\0")


def test_other_versions_are_refused(tmpdir, tiny_params):
    path = str(tmpdir.join("adapter.arl"))
    art.save_checkpoint(tiny_params, {}, path)
    with open(path, "rb") as f:
        blob = f.read()

    with pytest.raises(art.CheckpointVersionError):
        art.decode_checkpoint(b"ARLCKPT2" + blob[8:])


def test_garbage_is_not_a_checkpoint(tmpdir):
    path = tmpdir.join("garbage.arl")
    path.write_binary(b"not a checkpoint at all")

    with pytest.raises(art.CorruptCheckpointError):
        art.load_checkpoint(str(path))


def test_arrays_that_disagree_with_the_header(tmpdir, tiny_params):
    wider = NetConfig(input_dim=tiny_params.config.input_dim, hidden_sizes=[9, 6])
    mislabeled = art.PolicyParameters(wider, tiny_params.tensors)
    path = str(tmpdir.join("adapter.arl"))
    art.save_checkpoint(mislabeled, {}, path)

    with pytest.raises(art.CheckpointShapeError):
        art.load_checkpoint(path)


def test_checkpoint_errors_share_a_base_class():
    for error in (
        art.CheckpointVersionError,
        art.CorruptCheckpointError,
        art.CheckpointShapeError,
    ):
        assert issubclass(error, art.CheckpointError)
    assert checkpoint.VERSION == 1
