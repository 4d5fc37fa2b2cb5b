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

import importlib

import numpy as np
import pytest

from adapterrl.agents import parse_agent
from adapterrl.env import load_map, reset, resolve_map


def grid_map(rows, stockpile=0, max_ticks=50, name="test"):
    """Map text from a list of rows of space-separated tokens."""
    width = len(rows[0].split())
    header = [f"name {name}", f"size {width} {len(rows)}", f"stockpile {stockpile}"]
    header.append(f"maxticks {max_ticks}")
    return load_map("\n".join(header + list(rows)) + "\n")


@pytest.fixture
def map_factory():
    return grid_map


@pytest.fixture
def acceptance_map():
    return resolve_map("basesWorkers8x8A")


@pytest.fixture
def open_field():
    # a lone worker in the middle of an empty 5x5 field
    return grid_map(
        [
            ". . . . .",
            ". . . . .",
            ". . w0 . .",
            ". . . . .",
            "b1 . . . .",
        ]
    )


@pytest.fixture
def passive():
    return parse_agent("passive")


@pytest.fixture
def rule_based():
    return parse_agent("rule_based")


@pytest.fixture
def acceptance_state(acceptance_map, passive):
    return reset(acceptance_map, 0, passive)


@pytest.fixture
def rng():
    return np.random.default_rng(0)


torch = importlib.util.find_spec("torch")
if torch is not None:
    from tests.torch.conftest import *  # noqa
