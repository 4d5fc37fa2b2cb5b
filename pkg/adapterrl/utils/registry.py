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

import re
from typing import Any, Callable, Dict, Iterator, Tuple, Union

_WORD_BOUNDARY = re.compile(r"(?<=[a-z0-9])(?=[A-Z])|(?<=[A-Z])(?=[A-Z][a-z])")


def camelcase_to_snakecase(name: str) -> str:
    return _WORD_BOUNDARY.sub("_", name).lower()


def default_name(class_or_fn) -> str:
    """Registry key used when none is given: the snake-cased ``__name__``."""
    return camelcase_to_snakecase(class_or_fn.__name__)


class Registry:
    """
    Named lookup of pluggable components, such as agents or hidden activations.

    Example usage::

        agents = Registry.class_registry("agents")

        @agents.register_with_multiple_names("rule_based", "rule-based")
        class RuleBasedAgent(AgentInterface):
            ...

        agents["rule-based"]        # a fresh RuleBasedAgent
        "rule_based" in agents      # True

    Parameters
    ----------
    registry_name: str
        Shown in error messages.
    default_key_fn: callable, optional
        Key of a component registered without one.
    on_lookup: callable, optional
        ``__getitem__`` returns ``on_lookup(registered)``.
    """

    def __init__(
        self,
        registry_name: str,
        default_key_fn: Callable[[Any], str] = default_name,
        on_lookup: Callable[[Any], Any] = (lambda registered: registered),
    ):
        self._name = registry_name
        self._entries: Dict[str, Any] = {}
        self._default_key_fn = default_key_fn
        self._on_lookup = on_lookup

    @classmethod
    def class_registry(cls, registry_name: str, default_key_fn=default_name) -> "Registry":
        """Lookups instantiate the registered class with no arguments."""
        return cls(registry_name, default_key_fn, on_lookup=lambda registered: registered())

    @property
    def name(self) -> str:
        return self._name

    def add(self, keys: Union[None, str, Tuple[str, ...]], component: Any):
        if not callable(component):
            raise ValueError(f"{self._name}: only callables can be registered, got {component!r}")
        if keys is None:
            keys = self._default_key_fn(component)
        for key in (keys,) if isinstance(keys, str) else keys:
            if key in self._entries:
                raise KeyError(f"{key!r} is already registered in {self._name}")
            self._entries[key] = component

    def register(self, key_or_component=None):
        """Decorator registering a class or function, bare or under an explicit key."""
        if callable(key_or_component):
            self.add(None, key_or_component)
            return key_or_component

        def decorator(component):
            self.add(key_or_component, component)
            return component

        return decorator

    def register_with_multiple_names(self, *names: str):
        return self.register(tuple(names))

    def __getitem__(self, key: str):
        if key not in self._entries:
            available = ", ".join(self)
            raise KeyError(f"{key!r} is not registered in {self._name}; available: {available}")
        return self._on_lookup(self._entries[key])

    def __contains__(self, key) -> bool:
        return key in self._entries

    def __iter__(self) -> Iterator[str]:
        return iter(sorted(self._entries))

    def __len__(self) -> int:
        return len(self._entries)
