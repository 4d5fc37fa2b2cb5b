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

from .base import AgentInterface, agent_registry, is_valid_agent_spec, parse_agent
from .checkpoint import CheckpointAgent
from .pathfinding import PathfindResult, bfs_first_step
from .rule_based import RuleBasedAgent
from .scripted import PassiveAgent, RandomAgent, UniformLogitsAgent

__all__ = [
    "AgentInterface",
    "agent_registry",
    "is_valid_agent_spec",
    "parse_agent",
    "CheckpointAgent",
    "PathfindResult",
    "bfs_first_step",
    "RuleBasedAgent",
    "PassiveAgent",
    "RandomAgent",
    "UniformLogitsAgent",
]
