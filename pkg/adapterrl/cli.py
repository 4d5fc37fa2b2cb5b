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

"""``arl`` command line: train, eval, sweep, play."""

import functools
import logging
from typing import List, Optional

import click

from .config.errors import ConfigError
from .config.experiment import ExperimentConfig, read_config
from .config.model import MixerConfig
from .env.maps import MapParseError, available_maps

LOG = logging.getLogger("adapterrl")


def _setup_logging(verbose: bool):
    from transformers.utils import logging as hf_logging

    level = logging.DEBUG if verbose else logging.INFO
    logging.basicConfig(format="%(asctime)s %(levelname)s %(name)s: %(message)s", level=level)
    logging.getLogger("adapterrl").setLevel(level)
    hf_logging.set_verbosity(level)


def _load_config(path: Optional[str]) -> ExperimentConfig:
    if path is None:
        return ExperimentConfig()
    return read_config(path, validate=False)


def _parse_taus(ctx, param, value) -> Optional[List[float]]:
    if value is None:
        return None
    try:
        taus = [float(v) for v in value.split(",") if v.strip()]
    except ValueError:
        raise click.BadParameter(f"expected comma-separated numbers, got {value!r}")
    if not taus or any(t <= 0 for t in taus):
        raise click.BadParameter("temperatures must be positive")
    return taus


def _parse_tau(ctx, param, value) -> Optional[float]:
    taus = _parse_taus(ctx, param, value)
    if taus is None:
        return None
    if len(taus) > 1:
        raise click.BadParameter(
            f"expected a single temperature, got {len(taus)}; use `arl sweep` for several"
        )
    return taus[0]


def _friendly_errors(fn):
    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        from .torch.checkpoint import CheckpointError

        try:
            return fn(*args, **kwargs)
        except ConfigError as e:
            raise click.UsageError(str(e))
        except (CheckpointError, MapParseError, FileNotFoundError) as e:
            raise click.ClickException(str(e))

    return wrapper


def _with_tau(config: ExperimentConfig, tau: Optional[float]) -> ExperimentConfig:
    if tau is None:
        return config
    return config.replace(
        mixer=MixerConfig(tau, config.mixer.action_count, config.mixer.mask_policy)
    )


@click.group()
@click.option("--verbose", "-v", is_flag=True, help="Debug logging.")
def cli(verbose):
    """Adapter-RL experiments on the mini-RTS environment."""
    _setup_logging(verbose)


@cli.command()
@click.option("--config", "config_path", type=click.Path(exists=True, dir_okay=False))
@click.option("--out", "out_dir", required=True, type=click.Path(file_okay=False))
@click.option("--seed", type=int, help="Train a single seed instead of experiment.seeds.")
@click.option("--tau", callback=_parse_tau, help="Temperature overriding mixer.temperature.")
@click.option("--map", "map_name", help="Map name or path overriding experiment.map.")
@click.option("--progress/--no-progress", default=True)
@_friendly_errors
def train(config_path, out_dir, seed, tau, map_name, progress):
    """Train the adapter once per seed and write metrics, checkpoints and a summary."""
    from .experiment import run_train

    config = _with_tau(_load_config(config_path), tau)
    if seed is not None:
        config = config.replace(seeds=[seed])
    if map_name:
        config = config.replace(map=map_name)
    config.validate()
    summary = run_train(config, out_dir, progress=progress)
    if len(summary):
        last = summary.iloc[-1]
        click.echo(
            f"final iteration {int(last['iteration'])}: winrate mean {last['winrate_mean']:.3f} "
            f"(min {last['winrate_min']:.3f}, max {last['winrate_max']:.3f})"
        )


@cli.command(name="eval")
@click.option("--config", "config_path", type=click.Path(exists=True, dir_okay=False))
@click.option(
    "--learner",
    default="rule_based",
    show_default=True,
    help="Agent spec, or the path of a trained adapter checkpoint.",
)
@click.option("--opponent", help="Opponent spec (default: experiment.opponent).")
@click.option("--map", "map_name", help="Map name or path (default: experiment.map).")
@click.option("--games", type=int, help="Games to play (default: experiment.eval_games).")
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--tau", callback=_parse_tau, help="Temperature for an adapter checkpoint.")
@click.option("--greedy", is_flag=True, help="Play the adapter's argmax instead of sampling.")
@click.option("--out", "out_path", type=click.Path(dir_okay=False), help="Write a JSON report.")
@_friendly_errors
def evaluate(config_path, learner, opponent, map_name, games, seed, tau, greedy, out_path):
    """Play seeded games, alternating sides, and report the winrate."""
    from .evaluation import run_eval

    config = _load_config(config_path)
    games = games if games is not None else config.eval_games
    if games < 1:
        raise click.BadParameter("--games must be at least 1")
    try:
        report = run_eval(
            learner,
            opponent or config.opponent,
            map_name or config.map,
            games,
            seed,
            greedy=greedy or config.greedy_eval,
            temperature=tau,
            progress=True,
        )
    except ValueError as e:
        if isinstance(e, MapParseError):
            raise
        raise click.ClickException(str(e))
    click.echo(str(report))
    if out_path:
        report.to_json(out_path)


@cli.command()
@click.option("--config", "config_path", type=click.Path(exists=True, dir_okay=False))
@click.option("--out", "out_dir", required=True, type=click.Path(file_okay=False))
@click.option("--tau", "taus", callback=_parse_taus, help="Comma-separated temperatures.")
@click.option("--seed", type=int, help="Sweep a single seed instead of experiment.seeds.")
@click.option("--workers", type=int, help="Parallel worker processes (default: sweep.workers).")
@_friendly_errors
def sweep(config_path, out_dir, taus, seed, workers):
    """Train and evaluate every (map, tau, seed) combination."""
    from .experiment import run_sweep

    config = _load_config(config_path)
    if seed is not None:
        config = config.replace(seeds=[seed])
    if workers is not None and workers < 1:
        raise click.BadParameter("--workers must be at least 1")
    _, means = run_sweep(config, taus, out_dir, workers=workers)
    click.echo(means.to_string(index=False))


@cli.command()
@click.option("--learner", default="rule_based", show_default=True)
@click.option("--opponent", default="rule_based", show_default=True)
@click.option("--map", "map_name", default="basesWorkers8x8A", show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--side", type=click.Choice(["P0", "P1"]), default="P0", show_default=True)
@click.option("--tau", callback=_parse_tau, help="Temperature for an adapter checkpoint.")
@click.option("--greedy", is_flag=True)
@click.option("--max-frames", type=int, help="Stop printing after this many frames.")
@_friendly_errors
def play(learner, opponent, map_name, seed, side, tau, greedy, max_frames):
    """Print ASCII frames of one seeded episode."""
    import numpy as np

    from .agents.base import parse_agent
    from .env.maps import resolve_map
    from .env.render import render_ascii
    from .env.units import Player
    from .evaluation import load_learner, play_episode

    try:
        learner_agent = load_learner(learner, temperature=tau, greedy=greedy)
    except ValueError as e:
        raise click.ClickException(str(e))
    frames = {"count": 0}

    def show(state):
        if max_frames is not None and frames["count"] >= max_frames:
            return
        frames["count"] += 1
        click.echo(render_ascii(state))
        click.echo()

    final = play_episode(
        learner_agent,
        parse_agent(opponent),
        resolve_map(map_name),
        seed,
        Player.parse(side),
        np.random.default_rng(seed),
        on_frame=show,
    )
    click.echo(f"result: {final.terminal.value} after {final.tick} ticks")


@cli.command(name="maps")
def list_maps():
    """List the bundled maps."""
    for name in available_maps():
        click.echo(name)


if __name__ == "__main__":
    cli()
