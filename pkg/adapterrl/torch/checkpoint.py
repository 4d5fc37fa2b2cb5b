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

"""Binary checkpoint codec.

Layout (little-endian)::

    b"ARLCKPT" + version digit
    u64 length + UTF-8 JSON header   {"net": NetConfig, "adam_step": int, "metadata": {...}}
    for every parameter, then every Adam first moment, then every second moment
    (declaration order): u64 count + count * f8
"""

import json
import logging
import os
import struct
from collections import OrderedDict
from dataclasses import dataclass, field
from typing import Any, Dict, Optional

import numpy as np
import torch

from ..config.model import NetConfig
from .losses import DTYPE
from .network import PolicyParameters, parameter_shapes

LOG = logging.getLogger("adapterrl")

MAGIC = b"ARLCKPT"
VERSION = 1
_U64 = struct.Struct("<Q")


class CheckpointError(ValueError):
    pass


class CheckpointVersionError(CheckpointError):
    pass


class CorruptCheckpointError(CheckpointError):
    pass


class CheckpointShapeError(CheckpointError):
    pass


@dataclass
class Checkpoint:
    params: PolicyParameters
    metadata: Dict[str, Any] = field(default_factory=dict)
    version: int = VERSION

    @property
    def config(self) -> NetConfig:
        return self.params.config


def save_checkpoint(params: PolicyParameters, meta: Optional[Dict[str, Any]], path: str):
    """Write ``params`` (with Adam state) and JSON-serializable ``meta`` to ``path``."""
    header = json.dumps(
        {"net": params.config.to_dict(), "adam_step": params.step, "metadata": meta or {}},
        sort_keys=True,
    ).encode("utf8")
    directory = os.path.dirname(os.path.abspath(path))
    os.makedirs(directory, exist_ok=True)
    with open(path, "wb") as f:
        f.write(MAGIC + str(VERSION).encode("ascii"))
        f.write(_U64.pack(len(header)))
        f.write(header)
        for group in (params.tensors, params.adam_m, params.adam_v):
            for tensor in group.values():
                data = tensor.detach().cpu().numpy().astype("<f8", copy=False).reshape(-1)
                f.write(_U64.pack(data.size))
                f.write(data.tobytes())
    LOG.debug(f"Saved checkpoint to {path} (step {params.step})")


def load_checkpoint(path: str) -> Checkpoint:
    with open(path, "rb") as f:
        blob = f.read()
    return decode_checkpoint(blob, source=path)


def decode_checkpoint(blob: bytes, source: str = "<bytes>") -> Checkpoint:
    if len(blob) < len(MAGIC) + 1 or not blob.startswith(MAGIC):
        raise CorruptCheckpointError(f"{source} is not an adapter checkpoint")
    version_byte = blob[len(MAGIC) : len(MAGIC) + 1]
    if version_byte != str(VERSION).encode("ascii"):
        raise CheckpointVersionError(
            f"{source} has checkpoint version {version_byte.decode('ascii', 'replace')!r}, "
            f"this build reads version {VERSION}"
        )

    reader = _Reader(blob, len(MAGIC) + 1, source)
    try:
        header = json.loads(reader.take(reader.u64()).decode("utf8"))
        config = NetConfig.from_dict(header["net"])
    except (ValueError, KeyError, TypeError) as e:
        if isinstance(e, CheckpointError):
            raise
        raise CorruptCheckpointError(f"{source} has an unreadable header: {e}") from e

    shapes = parameter_shapes(config)
    groups = []
    for _ in range(3):
        group: "OrderedDict[str, torch.Tensor]" = OrderedDict()
        for name, shape in shapes.items():
            count = reader.u64()
            expected = int(np.prod(shape))
            if count != expected:
                raise CheckpointShapeError(
                    f"{source}: {name} stores {count} values, the config implies {expected}"
                )
            data = np.frombuffer(reader.take(8 * count), dtype="<f8").reshape(shape)
            group[name] = torch.tensor(data, dtype=DTYPE)
        groups.append(group)
    if reader.remaining:
        raise CorruptCheckpointError(f"{source} has {reader.remaining} trailing bytes")

    params = PolicyParameters(config, groups[0], groups[1], groups[2], int(header["adam_step"]))
    return Checkpoint(params, header.get("metadata", {}), VERSION)


class _Reader:
    def __init__(self, blob: bytes, offset: int, source: str):
        self.blob = blob
        self.offset = offset
        self.source = source

    @property
    def remaining(self) -> int:
        return len(self.blob) - self.offset

    def take(self, size: int) -> bytes:
        if size > self.remaining:
            raise CorruptCheckpointError(
                f"{self.source} is truncated: needed {size} bytes at offset {self.offset}, "
                f"{self.remaining} left"
            )
        chunk = self.blob[self.offset : self.offset + size]
        self.offset += size
        return chunk

    def u64(self) -> int:
        return _U64.unpack(self.take(_U64.size))[0]
