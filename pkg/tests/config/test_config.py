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

import glob
import os

import pytest

from adapterrl.config import (
    ConfigError,
    ExperimentConfig,
    MixerConfig,
    NetConfig,
    PpoConfig,
    SweepConfig,
    read_config,
    write_config,
)

CONFIG_DIR = os.path.join(os.path.dirname(__file__), "..", "..", "configs")


def test_defaults_validate():
    config = ExperimentConfig().validate()

    assert config.mixer.temperature == 0.01
    assert config.net.hidden_sizes == [512, 512, 512]
    assert config.trainer.clip_eps == 0.2
    assert config.trainer.log_wall_clock is False
    assert config.sweep_maps == ["basesWorkers8x8A"]


def test_full_scale_trainer_settings_are_accepted():
    PpoConfig(iterations=500, samples_per_iteration=8192, minibatch_size=256, num_envs=8).validate()


@pytest.mark.parametrize(
    "changes, message",
    [
        ({"samples_per_iteration": 1000, "minibatch_size": 256}, "minibatch_size"),
        ({"samples_per_iteration": 1024, "minibatch_size": 256, "num_envs": 3}, "num_envs"),
        ({"gamma": 0.0}, "gamma"),
        ({"gae_lambda": 1.5}, "gae_lambda"),
        ({"clip_eps": 0.0}, "clip_eps"),
        ({"entropy_coef": -0.1}, "entropy_coef"),
        ({"learning_rate": 0.0}, "learning_rate"),
        ({"epochs": 0}, "epochs"),
        ({"learner_side": "P2"}, "learner_side"),
        ({"checkpoint_every": 0}, "checkpoint_every"),
    ],
)
def test_invalid_trainer_settings(changes, message):
    with pytest.raises(ConfigError, match=message):
        PpoConfig(**changes).validate()


@pytest.mark.parametrize("temperature", [0.0, -1.0, float("inf"), float("nan")])
def test_mixer_temperature_must_be_positive_and_finite(temperature):
    with pytest.raises(ConfigError, match="temperature"):
        MixerConfig(temperature=temperature).validate()


def test_mixer_only_knows_one_mask_policy():
    with pytest.raises(ConfigError, match="mask_policy"):
        MixerConfig(mask_policy="mask_adjustments").validate()


@pytest.mark.parametrize(
    "changes",
    [
        {"hidden_sizes": []},
        {"hidden_sizes": [64, 0]},
        {"activation": "sigmoid"},
        {"input_dim": 0},
        {"action_count": 0},
    ],
)
def test_invalid_net_settings(changes):
    with pytest.raises(ConfigError):
        NetConfig(**changes).validate()


def test_net_config_dict_and_input_dim():
    net = NetConfig(hidden_sizes=[8], activation="relu", shared_trunk=True)
    sized = net.with_input_dim(707)

    assert sized.input_dim == 707 and net.input_dim is None
    assert NetConfig.from_dict(sized.to_dict()) == sized


def test_sweep_settings():
    with pytest.raises(ConfigError):
        SweepConfig(taus=[]).validate()
    with pytest.raises(ConfigError):
        SweepConfig(taus=[0.1, 0.0]).validate()
    with pytest.raises(ConfigError):
        SweepConfig(workers=0).validate()


def test_text_form_reproduces_the_config():
    config = ExperimentConfig(
        seeds=[3, 5],
        greedy_eval=True,
        mixer=MixerConfig(temperature=0.1),
        net=NetConfig(input_dim=707, hidden_sizes=[32, 16], activation="relu"),
        trainer=PpoConfig(adam_eps=1e-08, samples_per_iteration=512, minibatch_size=128),
        sweep=SweepConfig(taus=[0.5, 2.0], maps=["basesWorkers8x8A", "noresources"]),
    )

    assert ExperimentConfig.from_text(config.to_text()) == config


def test_text_form_ignores_comments_and_keeps_defaults():
    config = ExperimentConfig.from_text(
        "# adapter run\n\nmixer.temperature = 0.5  # warmer\ntrainer.reward_shaping = yes\n"
    )

    assert config.mixer.temperature == 0.5
    assert config.trainer.reward_shaping is True
    assert config.trainer.gamma == 0.99


@pytest.mark.parametrize(
    "text, message",
    [
        ("mixer.temperature = 0.1\nmixer.colour = red\n", "line 2: unknown key"),
        ("optimizer.lr = 0.1\n", "line 1: unknown section"),
        ("temperature = 0.1\n", "line 1: key 'temperature' has no section"),
        ("\nmixer.temperature\n", "line 2: expected"),
        ("trainer.iterations = many\n", "line 1: bad value"),
        ("trainer.normalize_advantages = maybe\n", "line 1: bad value"),
        ("experiment.mixer = 3\n", "line 1: unknown key"),
    ],
)
def test_malformed_text_names_the_line(text, message):
    with pytest.raises(ConfigError, match=message):
        ExperimentConfig.from_text(text)


def test_validation_checks_referenced_files(tmpdir):
    with pytest.raises(ConfigError, match="does not exist"):
        ExperimentConfig(base_agent=f"checkpoint:{tmpdir.join('missing.arl')}").validate()
    with pytest.raises(ConfigError, match="unknown agent spec"):
        ExperimentConfig(opponent="grandmaster").validate()
    with pytest.raises(ConfigError, match="cannot be loaded"):
        ExperimentConfig(map="atlantis").validate()


def test_read_and_write_config(tmpdir):
    path = str(tmpdir.join("run.cfg"))
    config = ExperimentConfig(seeds=[7], trainer=PpoConfig(iterations=3))

    write_config(config, path)

    assert read_config(path) == config


@pytest.mark.parametrize("path", sorted(glob.glob(os.path.join(CONFIG_DIR, "*.cfg"))))
def test_bundled_configs_validate(path):
    config = read_config(path)

    assert config.mixer.action_count == 29


def test_bundled_configs_exist():
    names = {os.path.basename(p) for p in glob.glob(os.path.join(CONFIG_DIR, "*.cfg"))}

    assert {"adapter_8x8.cfg", "scratch_8x8.cfg", "sweep_8x8.cfg", "full_scale.cfg"} <= names
