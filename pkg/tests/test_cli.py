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

import json
import os

import pytest
from click.testing import CliRunner

from adapterrl.cli import cli
from adapterrl.config import ExperimentConfig, NetConfig, PpoConfig, write_config

pytest.importorskip("torch")


@pytest.fixture
def runner():
    return CliRunner()


@pytest.fixture
def tiny_config_path(tmpdir):
    path = str(tmpdir.join("tiny.cfg"))
    config = ExperimentConfig(
        opponent="passive",
        seeds=[0],
        eval_games=2,
        net=NetConfig(hidden_sizes=[8]),
        trainer=PpoConfig(
            iterations=1, samples_per_iteration=32, minibatch_size=16, epochs=1, num_envs=2
        ),
    )
    write_config(config, path)
    return path


def test_maps_lists_bundled_maps(runner):
    result = runner.invoke(cli, ["maps"])

    assert result.exit_code == 0
    names = result.output.split()
    assert "basesWorkers8x8A" in names
    assert "noresources" in names


def test_eval_prints_and_writes_a_report(runner, tmpdir):
    out = str(tmpdir.join("eval.json"))

    result = runner.invoke(
        cli, ["eval", "--opponent", "passive", "--games", "2", "--seed", "1", "--out", out]
    )

    assert result.exit_code == 0, result.output
    assert "rule_based vs passive" in result.output
    with open(out) as f:
        assert json.load(f)["games"] == 2


def test_eval_rejects_unknown_learners(runner):
    result = runner.invoke(cli, ["eval", "--learner", "grandmaster", "--games", "1"])

    assert result.exit_code != 0
    assert "neither an agent spec" in result.output


def test_play_prints_frames(runner):
    result = runner.invoke(
        cli, ["play", "--opponent", "passive", "--max-frames", "2", "--side", "P1"]
    )

    assert result.exit_code == 0, result.output
    assert result.output.count("b0") == 2
    assert "result: P1_win" in result.output


def test_bad_config_is_a_usage_error(runner, tmpdir):
    path = str(tmpdir.join("bad.cfg"))
    with open(path, "w") as f:
        f.write("mixer.colour = red\n")

    result = runner.invoke(cli, ["train", "--config", path, "--out", str(tmpdir.join("run"))])

    assert result.exit_code == 2
    assert "unknown key" in result.output


@pytest.mark.parametrize("tau", ["abc", "0", "0.5,-1"])
def test_bad_temperatures_are_rejected(runner, tmpdir, tau):
    result = runner.invoke(cli, ["train", "--out", str(tmpdir.join("run")), "--tau", tau])

    assert result.exit_code == 2


@pytest.mark.parametrize("command", ["train", "eval", "play"])
def test_single_run_commands_take_one_temperature(runner, tmpdir, command):
    args = [command, "--tau", "0.01,0.1,1"]
    if command == "train":
        args += ["--out", str(tmpdir.join("run"))]

    result = runner.invoke(cli, args)

    assert result.exit_code == 2
    assert "single temperature" in result.output
    assert not os.path.exists(str(tmpdir.join("run")))


def test_train_writes_a_run(runner, tmpdir, tiny_config_path):
    out_dir = str(tmpdir.join("run"))

    result = runner.invoke(
        cli, ["train", "--config", tiny_config_path, "--out", out_dir, "--no-progress"]
    )

    assert result.exit_code == 0, result.output
    assert "final iteration 1" in result.output
    assert os.path.exists(os.path.join(out_dir, "summary.csv"))
    assert os.path.exists(os.path.join(out_dir, "seed0", "final.arl"))


def test_train_tau_and_seed_overrides(runner, tmpdir, tiny_config_path):
    out_dir = str(tmpdir.join("run"))

    result = runner.invoke(
        cli,
        [
            "train",
            "--config",
            tiny_config_path,
            "--out",
            out_dir,
            "--seed",
            "5",
            "--tau",
            "0.5",
            "--no-progress",
        ],
    )

    assert result.exit_code == 0, result.output
    with open(os.path.join(out_dir, "config.cfg")) as f:
        text = f.read()
    assert "experiment.seeds = 5" in text
    assert "mixer.temperature = 0.5" in text
