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
from types import SimpleNamespace

import pytest

from adapterrl import evaluation
from adapterrl.agents import RuleBasedAgent
from adapterrl.env import Player, TerminalStatus
from adapterrl.evaluation import EvalReport, load_learner, play_episode, run_eval


def test_rule_based_self_play_is_even():
    report = run_eval("rule_based", "rule_based", "basesWorkers8x8A", games=20, seed=0)

    assert report.games == 20
    assert report.wins + report.draws + report.losses == 20
    assert 0.4 <= report.winrate <= 0.6


def test_rule_based_mirror_games_ignore_seed_and_learner_side(acceptance_map):
    agent = RuleBasedAgent()

    outcomes = {
        play_episode(agent, agent, acceptance_map, seed, side).terminal
        for seed in (0, 7)
        for side in (Player.P0, Player.P1)
    }

    assert len(outcomes) == 1
    assert TerminalStatus.ONGOING not in outcomes


def test_passive_loses_to_rule_based():
    report = run_eval("passive", "rule_based", "basesWorkers8x8A", games=4, seed=0)

    assert report.winrate <= 0.05


@pytest.mark.parametrize("games", [0, -3])
def test_needs_at_least_one_game(games):
    with pytest.raises(ValueError, match="games"):
        run_eval("rule_based", "passive", "basesWorkers8x8A", games=games, seed=0)


def test_sides_alternate_and_seeds_advance(monkeypatch):
    calls = []

    def fake_episode(learner, opponent, map_spec, seed, learner_side, rng, on_frame=None):
        calls.append((seed, learner_side))
        return SimpleNamespace(terminal=TerminalStatus.P0_WIN)

    monkeypatch.setattr(evaluation, "play_episode", fake_episode)
    report = run_eval("passive", "passive", "basesWorkers8x8A", games=5, seed=10)

    assert calls == [
        (10, Player.P0),
        (11, Player.P1),
        (12, Player.P0),
        (13, Player.P1),
        (14, Player.P0),
    ]
    assert (report.wins, report.draws, report.losses) == (3, 0, 2)
    assert report.winrate == pytest.approx(0.6)


def test_draws_count_half():
    report = EvalReport("a", "b", "m", games=4, wins=1, draws=2, losses=1, seed=0)

    assert report.winrate == pytest.approx(0.5)
    assert "1 wins / 2 draws / 1 losses" in str(report)


def test_report_json(tmpdir):
    report = run_eval("rule_based", "passive", "basesWorkers8x8A", games=2, seed=3)
    path = str(tmpdir.join("reports", "eval.json"))

    report.to_json(path)

    with open(path) as f:
        data = json.load(f)
    assert data["learner"] == "rule_based"
    assert data["opponent"] == "passive"
    assert data["map"] == "basesWorkers8x8A"
    assert data["games"] == 2
    assert data["winrate"] == report.winrate


def test_play_episode_reports_frames(acceptance_map, rule_based, passive):
    frames = []

    final = play_episode(rule_based, passive, acceptance_map, 0, on_frame=frames.append)

    assert not final.ongoing
    assert frames[0].tick == 0
    ticks = [f.tick for f in frames]
    assert ticks == sorted(set(ticks))
    assert frames[-1].tick == final.tick


def test_load_learner_specs():
    agent = RuleBasedAgent()

    assert load_learner(agent) is agent
    assert load_learner("passive").spec == "passive"
    with pytest.raises(ValueError, match="neither"):
        load_learner("no/such/adapter.arl")


def test_load_learner_reads_adapter_checkpoints(tmpdir):
    pytest.importorskip("torch")
    from adapterrl.config import NetConfig
    from adapterrl.torch import AdaptedAgent, save_checkpoint, zero_params

    path = str(tmpdir.join("final.arl"))
    params = zero_params(NetConfig(input_dim=707, hidden_sizes=[4]))
    save_checkpoint(params, {"base_agent": "rule_based", "temperature": 0.01}, path)

    learner = load_learner(path, temperature=0.5, greedy=True)

    assert isinstance(learner, AdaptedAgent)
    assert learner.temperature == 0.5 and learner.greedy
