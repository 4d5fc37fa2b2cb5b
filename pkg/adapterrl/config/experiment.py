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

import dataclasses
import logging
import os
import typing
from dataclasses import dataclass, field
from typing import Any, Dict, List

from .errors import ConfigError
from .model import MixerConfig, NetConfig
from .trainer import PpoConfig

LOG = logging.getLogger("adapterrl")

_TRUE = ("true", "yes", "on", "1")
_FALSE = ("false", "no", "off", "0")


@dataclass
class SweepConfig:
    taus: List[float] = field(
        default_factory=lambda: [0.001, 0.01, 0.1, 1.0, 10.0],
        metadata={"help": "Temperatures to sweep."},
    )
    maps: List[str] = field(
        default_factory=list,
        metadata={"help": "Maps to sweep; empty means experiment.map only."},
    )
    workers: int = field(default=1, metadata={"help": "Parallel worker processes."})

    def validate(self):
        if not self.taus:
            raise ConfigError("sweep.taus must not be empty")
        if any(tau <= 0 for tau in self.taus):
            raise ConfigError(f"sweep.taus must all be positive, got {self.taus}")
        if self.workers < 1:
            raise ConfigError("sweep.workers must be at least 1")
        return self


@dataclass
class ExperimentConfig:
    """
    Everything a train / eval / sweep run needs.

    Serialized as ``section.key = value`` lines; the scalar fields below live in the
    ``experiment`` section, the nested configs in ``mixer``, ``net``, ``trainer`` and ``sweep``.
    """

    map: str = field(default="basesWorkers8x8A", metadata={"help": "Map name or path."})
    base_agent: str = field(
        default="rule_based",
        metadata={"help": "Base agent spec: rule_based, uniform_logits or checkpoint:<path>."},
    )
    opponent: str = field(default="rule_based", metadata={"help": "Opponent agent spec."})
    seeds: List[int] = field(default_factory=lambda: [0, 1, 2], metadata={"help": "Run seeds."})
    eval_games: int = field(default=100, metadata={"help": "Evaluation games per point."})
    greedy_eval: bool = field(
        default=False, metadata={"help": "Evaluate with argmax instead of sampled actions."}
    )
    mixer: MixerConfig = field(default_factory=MixerConfig)
    net: NetConfig = field(default_factory=NetConfig)
    trainer: PpoConfig = field(default_factory=PpoConfig)
    sweep: SweepConfig = field(default_factory=SweepConfig)

    def validate(self):
        """Check every field and every referenced file; raises :class:`ConfigError`."""
        from ..agents.base import CHECKPOINT_PREFIX, is_valid_agent_spec
        from ..env.maps import resolve_map

        if not self.seeds:
            raise ConfigError("experiment.seeds must not be empty")
        if self.eval_games < 1:
            raise ConfigError("experiment.eval_games must be at least 1")
        for name in ("base_agent", "opponent"):
            spec = getattr(self, name)
            if not is_valid_agent_spec(spec):
                raise ConfigError(f"experiment.{name}: unknown agent spec {spec!r}")
            if spec.startswith(CHECKPOINT_PREFIX):
                path = spec[len(CHECKPOINT_PREFIX) :]
                if not os.path.exists(path):
                    raise ConfigError(f"experiment.{name}: checkpoint {path!r} does not exist")
        for map_name in [self.map] + list(self.sweep.maps):
            try:
                resolve_map(map_name)
            except (FileNotFoundError, ValueError) as e:
                raise ConfigError(f"map {map_name!r} cannot be loaded: {e}") from e

        self.mixer.validate()
        self.net.validate()
        self.trainer.validate()
        self.sweep.validate()
        if self.mixer.action_count != self.net.action_count:
            raise ConfigError("mixer.action_count and net.action_count differ")
        return self

    @property
    def sweep_maps(self) -> List[str]:
        return list(self.sweep.maps) or [self.map]

    def replace(self, **changes) -> "ExperimentConfig":
        return dataclasses.replace(self, **changes)

    def to_text(self) -> str:
        lines = []
        for section, obj in _sections(self).items():
            for f in dataclasses.fields(obj):
                if section == "experiment" and f.name in _NESTED:
                    continue
                lines.append(f"{section}.{f.name} = {_format(getattr(obj, f.name))}")
            lines.append("")
        return "\n".join(lines)

    @classmethod
    def from_text(cls, text: str) -> "ExperimentConfig":
        config = cls()
        sections = _sections(config)
        for line_no, raw in enumerate(text.splitlines(), start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ConfigError(f"line {line_no}: expected `section.key = value`, got {raw!r}")
            key, value = (part.strip() for part in line.split("=", 1))
            if "." not in key:
                raise ConfigError(f"line {line_no}: key {key!r} has no section")
            section, name = key.split(".", 1)
            if section not in sections:
                raise ConfigError(f"line {line_no}: unknown section {section!r}")
            target = sections[section]
            hints = typing.get_type_hints(type(target))
            if name not in hints or (section == "experiment" and name in _NESTED):
                raise ConfigError(f"line {line_no}: unknown key {key!r}")
            try:
                setattr(target, name, _parse(value, hints[name]))
            except ValueError as e:
                raise ConfigError(f"line {line_no}: bad value for {key}: {e}") from e
        return config


_NESTED = ("mixer", "net", "trainer", "sweep")


def read_config(path: str, validate: bool = True) -> ExperimentConfig:
    with open(path, "r", encoding="utf8") as f:
        config = ExperimentConfig.from_text(f.read())
    LOG.debug(f"Read experiment config from {path}")
    return config.validate() if validate else config


def write_config(config: ExperimentConfig, path: str):
    with open(path, "w", encoding="utf8") as f:
        f.write(config.to_text())


def _sections(config: ExperimentConfig) -> Dict[str, Any]:
    return {
        "experiment": config,
        "mixer": config.mixer,
        "net": config.net,
        "trainer": config.trainer,
        "sweep": config.sweep,
    }


def _format(value) -> str:
    if value is None:
        return "none"
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value)
    if isinstance(value, (list, tuple)):
        return ", ".join(_format(v) for v in value)
    return str(value)


def _parse(text: str, annotation):
    origin = typing.get_origin(annotation)
    args = typing.get_args(annotation)
    if origin is typing.Union and type(None) in args:
        if text.lower() in ("none", ""):
            return None
        inner = next(a for a in args if a is not type(None))
        return _parse(text, inner)
    if origin in (list, List):
        return [_parse(item.strip(), args[0]) for item in text.split(",") if item.strip()]
    if annotation is bool:
        lowered = text.lower()
        if lowered in _TRUE:
            return True
        if lowered in _FALSE:
            return False
        raise ValueError(f"expected a boolean, got {text!r}")
    if annotation is int:
        return int(text)
    if annotation is float:
        return float(text)
    if annotation is str:
        return text
    raise ValueError(f"unsupported field type {annotation}")
