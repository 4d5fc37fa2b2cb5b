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

from .actions import NOOP, NUM_ACTIONS, Action, ActionKind, Direction
from .game import (
    ContractViolationError,
    GameOverError,
    GameState,
    IllegalActionError,
    RtsEnv,
    StepResult,
    TerminalStatus,
    legal_actions,
    reset,
    step,
)
from .maps import (
    MapParseError,
    MapSpec,
    UnitPlacement,
    available_maps,
    load_map,
    map_to_text,
    read_map,
    resolve_map,
)
from .observation import encode_observation, observation_size
from .render import render_ascii
from .units import Player, Unit, UnitKind

__all__ = [
    "Action",
    "ActionKind",
    "Direction",
    "NOOP",
    "NUM_ACTIONS",
    "ContractViolationError",
    "GameOverError",
    "GameState",
    "IllegalActionError",
    "RtsEnv",
    "StepResult",
    "TerminalStatus",
    "legal_actions",
    "reset",
    "step",
    "MapParseError",
    "MapSpec",
    "UnitPlacement",
    "available_maps",
    "load_map",
    "map_to_text",
    "read_map",
    "resolve_map",
    "encode_observation",
    "observation_size",
    "render_ascii",
    "Player",
    "Unit",
    "UnitKind",
]
