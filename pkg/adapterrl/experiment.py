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

"""Multi-seed training runs and temperature sweeps."""

import dataclasses
import logging
import os
from concurrent.futures import ProcessPoolExecutor
from typing import List, Optional, Sequence, Tuple

import pandas as pd

from .config.experiment import ExperimentConfig, write_config
from .config.model import MixerConfig

LOG = logging.getLogger("adapterrl")

SUMMARY_FILE = "summary.csv"
SWEEP_FILE = "sweep.csv"
SWEEP_MEAN_FILE = "sweep_mean.csv"
CONFIG_FILE = "config.cfg"

SweepJob = Tuple[ExperimentConfig, str, float, int, str]


def run_train(config: ExperimentConfig, out_dir: str, progress: bool = True) -> pd.DataFrame:
    """Train once per seed into ``out_dir/seed<seed>`` and summarize the winrate across seeds.

    Returns the summary table (``iteration, winrate_mean, winrate_min, winrate_max``), also
    written to ``out_dir/summary.csv``.
    """
    from .torch.trainer import train

    config.validate()
    os.makedirs(out_dir, exist_ok=True)
    write_config(config, os.path.join(out_dir, CONFIG_FILE))

    frames = []
    for seed in config.seeds:
        result = train(
            config.map,
            config.base_agent,
            config.opponent,
            config,
            seed,
            os.path.join(out_dir, f"seed{seed}"),
            progress=progress,
        )
        frame = pd.DataFrame([dataclasses.asdict(m) for m in result.metrics])
        frames.append(frame.assign(seed=seed))

    metrics = pd.concat(frames, ignore_index=True)
    summary = (
        metrics.groupby("iteration")["winrate"]
        .agg(winrate_mean="mean", winrate_min="min", winrate_max="max")
        .reset_index()
    )
    summary.to_csv(os.path.join(out_dir, SUMMARY_FILE), index=False)
    LOG.info(f"Wrote {os.path.join(out_dir, SUMMARY_FILE)} ({len(config.seeds)} seeds)")
    return summary


def sweep_jobs(config: ExperimentConfig, taus: Sequence[float], out_dir: str) -> List[SweepJob]:
    """One job per (map, tau, seed), in that nesting order."""
    return [
        (config, map_name, float(tau), seed, out_dir)
        for map_name in config.sweep_maps
        for tau in taus
        for seed in config.seeds
    ]


def run_sweep_job(job: SweepJob) -> dict:
    """Train one (map, tau, seed) point and evaluate its final checkpoint."""
    from .evaluation import run_eval
    from .torch.trainer import train

    config, map_name, tau, seed, out_dir = job
    mixer = MixerConfig(
        temperature=tau,
        action_count=config.mixer.action_count,
        mask_policy=config.mixer.mask_policy,
    )
    run_config = config.replace(map=map_name, mixer=mixer)
    run_dir = os.path.join(out_dir, _safe_name(map_name), f"tau{tau:g}", f"seed{seed}")
    result = train(
        map_name, config.base_agent, config.opponent, run_config, seed, run_dir, progress=False
    )
    report = run_eval(
        result.checkpoint_path,
        config.opponent,
        map_name,
        config.eval_games,
        seed,
        greedy=config.greedy_eval,
        temperature=tau,
    )
    return {"map": map_name, "tau": tau, "seed": seed, "winrate": report.winrate}


def run_sweep(
    config: ExperimentConfig,
    taus: Optional[Sequence[float]],
    out_dir: str,
    workers: Optional[int] = None,
) -> Tuple[pd.DataFrame, pd.DataFrame]:
    """Temperature sweep: ``map,tau,seed,winrate`` rows plus the per-(map, tau) mean table.

    Jobs are independent and may run in a process pool; rows are written in (map, tau, seed)
    order whatever the completion order.
    """
    taus = list(taus) if taus else list(config.sweep.taus)
    config = config.replace(sweep=dataclasses.replace(config.sweep, taus=taus))
    config.validate()
    workers = workers or config.sweep.workers
    os.makedirs(out_dir, exist_ok=True)
    write_config(config, os.path.join(out_dir, CONFIG_FILE))

    jobs = sweep_jobs(config, taus, out_dir)
    LOG.info(f"Sweeping {len(jobs)} runs with {workers} worker(s)")
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(run_sweep_job, jobs))
    else:
        rows = [run_sweep_job(job) for job in jobs]

    table = pd.DataFrame(rows, columns=["map", "tau", "seed", "winrate"])
    table.to_csv(os.path.join(out_dir, SWEEP_FILE), index=False)
    means = (
        table.groupby(["map", "tau"], sort=False)["winrate"]
        .mean()
        .rename("winrate_mean")
        .reset_index()
    )
    means.to_csv(os.path.join(out_dir, SWEEP_MEAN_FILE), index=False)
    return table, means


def _safe_name(map_name: str) -> str:
    return os.path.splitext(os.path.basename(map_name))[0]
