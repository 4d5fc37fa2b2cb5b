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
import logging
import os
import re
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, FrozenSet, List, Optional, Tuple

from .units import Player, Position, UnitKind

LOG = logging.getLogger("adapterrl")

MAPS_DIR = os.path.join(os.path.dirname(os.path.abspath(__file__)), "maps")
MAP_SUFFIX = ".map"
MAX_MAP_SIZE = 64

_IDENTIFIER_RE = re.compile(r"^[A-Za-z_][A-Za-z0-9_\-]*$")
_RESOURCE_RE = re.compile(r"^r(\d+)$")
_UNIT_RE = re.compile(r"^([bkwl])([01])$")


class MapParseError(ValueError):
    """Raised for malformed map files; ``line`` is the 1-based line number."""

    def __init__(self, message: str, line: Optional[int] = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


class Cell(Enum):
    EMPTY = "."
    WALL = "#"
    RESOURCE = "r"


@dataclass(frozen=True)
class UnitPlacement:
    player: Player
    kind: UnitKind
    position: Position


@dataclass(frozen=True)
class MapSpec:
    """Static description of a map: terrain, resources and the initial army of both players."""

    name: str
    width: int
    height: int
    walls: FrozenSet[Position] = field(default_factory=frozenset)
    resources: Dict[Position, int] = field(default_factory=dict)
    initial_units: Tuple[UnitPlacement, ...] = ()
    initial_stockpile: int = 0
    max_ticks: int = 1

    def __post_init__(self):
        self.validate()

    def validate(self):
        if not (1 <= self.width <= MAX_MAP_SIZE and 1 <= self.height <= MAX_MAP_SIZE):
            raise ValueError(f"map size {self.width}x{self.height} outside [1, {MAX_MAP_SIZE}]")
        if self.max_ticks < 1:
            raise ValueError(f"max_ticks must be >= 1, got {self.max_ticks}")
        if self.initial_stockpile < 0:
            raise ValueError(f"initial_stockpile must be >= 0, got {self.initial_stockpile}")

        occupied = set(self.walls)
        for position, amount in self.resources.items():
            self._check_in_bounds(position)
            if amount <= 0:
                raise ValueError(f"resource at {position} must have a positive amount")
            if position in occupied:
                raise ValueError(f"cell {position} is used twice")
            occupied.add(position)
        for placement in self.initial_units:
            self._check_in_bounds(placement.position)
            if placement.position in occupied:
                raise ValueError(f"cell {placement.position} is used twice")
            occupied.add(placement.position)
        for player in Player:
            if not any(p.player is player for p in self.initial_units):
                raise ValueError(f"player {player.name} owns no unit")

    def _check_in_bounds(self, position: Position):
        if not self.in_bounds(position):
            raise ValueError(f"position {position} outside the {self.width}x{self.height} map")

    def in_bounds(self, position: Position) -> bool:
        x, y = position
        return 0 <= x < self.width and 0 <= y < self.height

    def cell(self, position: Position) -> Cell:
        if position in self.walls:
            return Cell.WALL
        if position in self.resources:
            return Cell.RESOURCE
        return Cell.EMPTY

    @property
    def total_resources(self) -> int:
        return sum(self.resources.values())

    @property
    def max_resource_amount(self) -> int:
        return max(self.resources.values(), default=0)


def load_map(text: str) -> MapSpec:
    """Parse the ASCII map format.

    Parameters
    ----------
    text: str
        Map file contents: ``name``, ``size``, ``stockpile`` and ``maxticks`` header lines
        followed by one row of space-separated tokens per grid line.

    Returns
    -------
    MapSpec
    """
    lines = text.splitlines()
    while lines and not lines[-1].strip():
        lines.pop()

    name = _header(lines, 0, "name", 1)[0]
    if not _IDENTIFIER_RE.match(name):
        raise MapParseError(f"invalid map name {name!r}", 1)
    width, height = (_int(v, 2) for v in _header(lines, 1, "size", 2))
    if not (1 <= width <= MAX_MAP_SIZE and 1 <= height <= MAX_MAP_SIZE):
        raise MapParseError(f"map size {width}x{height} outside [1, {MAX_MAP_SIZE}]", 2)
    stockpile = _int(_header(lines, 2, "stockpile", 1)[0], 3)
    max_ticks = _int(_header(lines, 3, "maxticks", 1)[0], 4)
    if stockpile < 0:
        raise MapParseError("stockpile must be non-negative", 3)
    if max_ticks < 1:
        raise MapParseError("maxticks must be at least 1", 4)

    rows = lines[4:]
    if len(rows) != height:
        raise MapParseError(f"expected {height} grid rows, found {len(rows)}", 5 + len(rows))

    walls = set()
    resources: Dict[Position, int] = {}
    units: List[UnitPlacement] = []
    for y, row in enumerate(rows):
        line_no = 5 + y
        tokens = row.split()
        if len(tokens) != width:
            raise MapParseError(f"row {y} has {len(tokens)} cells, expected {width}", line_no)
        for x, token in enumerate(tokens):
            if token == ".":
                continue
            if token == "#":
                walls.add((x, y))
                continue
            resource = _RESOURCE_RE.match(token)
            if resource:
                amount = int(resource.group(1))
                if amount <= 0:
                    raise MapParseError(f"resource at ({x}, {y}) must be positive", line_no)
                resources[(x, y)] = amount
                continue
            unit = _UNIT_RE.match(token)
            if unit:
                kind = UnitKind.from_glyph(unit.group(1))
                units.append(UnitPlacement(Player(int(unit.group(2))), kind, (x, y)))
                continue
            raise MapParseError(f"unknown glyph {token!r} at ({x}, {y})", line_no)

    for player in Player:
        if not any(u.player is player for u in units):
            raise MapParseError(f"player {player.name} owns no unit", 5)

    return MapSpec(
        name=name,
        width=width,
        height=height,
        walls=frozenset(walls),
        resources=resources,
        initial_units=tuple(units),
        initial_stockpile=stockpile,
        max_ticks=max_ticks,
    )


def map_to_text(spec: MapSpec) -> str:
    units = {u.position: f"{u.kind.glyph}{int(u.player)}" for u in spec.initial_units}
    lines = [
        f"name {spec.name}",
        f"size {spec.width} {spec.height}",
        f"stockpile {spec.initial_stockpile}",
        f"maxticks {spec.max_ticks}",
    ]
    for y in range(spec.height):
        row = []
        for x in range(spec.width):
            position = (x, y)
            if position in units:
                row.append(units[position])
            elif position in spec.walls:
                row.append("#")
            elif position in spec.resources:
                row.append(f"r{spec.resources[position]}")
            else:
                row.append(".")
        lines.append(" ".join(row))
    return "\n".join(lines) + "\n"


def read_map(path: str) -> MapSpec:
    with open(path, "r", encoding="utf8") as f:
        spec = load_map(f.read())
    LOG.debug(f"Loaded map {spec.name} ({spec.width}x{spec.height}) from {path}")
    return spec


def available_maps() -> List[str]:
    """Names of the maps bundled with the package."""
    paths = glob.glob(os.path.join(MAPS_DIR, "*" + MAP_SUFFIX))
    return sorted(os.path.basename(p)[: -len(MAP_SUFFIX)] for p in paths)


def resolve_map(name_or_path: str) -> MapSpec:
    """Load a bundled map by name, or any map file by path."""
    bundled = os.path.join(MAPS_DIR, name_or_path + MAP_SUFFIX)
    if os.path.exists(bundled):
        return read_map(bundled)
    if os.path.exists(name_or_path):
        return read_map(name_or_path)
    raise FileNotFoundError(
        f"Map {name_or_path!r} is neither a bundled map nor a file. "
        f"Bundled maps: {', '.join(available_maps())}"
    )


def _header(lines: List[str], index: int, keyword: str, arity: int) -> List[str]:
    if index >= len(lines):
        raise MapParseError(f"missing `{keyword}` header", index + 1)
    parts = lines[index].split()
    if not parts or parts[0] != keyword or len(parts) != arity + 1:
        raise MapParseError(f"expected `{keyword}` followed by {arity} value(s)", index + 1)
    return parts[1:]


def _int(value: str, line: int) -> int:
    try:
        return int(value)
    except ValueError:
        raise MapParseError(f"expected an integer, got {value!r}", line)
