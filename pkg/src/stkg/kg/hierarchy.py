"""Common-tag hierarchy: which key=value tags become classes."""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, FrozenSet, List, Tuple

DEFAULT_HIERARCHY_PATH = Path(__file__).with_name("data") / "common_tags.json"


@dataclass(frozen=True)
class CommonTagHierarchy:
    keys: Dict[str, FrozenSet[str]]
    chains: Dict[str, Tuple[str, ...]] = field(default_factory=dict)

    def __post_init__(self):
        for tag, chain in self.chains.items():
            key, _, value = tag.partition("=")
            path = (value,) + tuple(chain) + (key,)
            if len(set(path)) != len(path):
                raise ValueError(f"cyclic superclass chain for {tag!r}: {path}")

    def accepts(self, key: str, value: str) -> bool:
        return value in self.keys.get(key, ())

    def superclass_edges(self, key: str, value: str) -> List[Tuple[str, str]]:
        """``(sub, super)`` class pairs from ``value`` up to ``key``."""
        path = (value,) + tuple(self.chains.get(f"{key}={value}", ())) + (key,)
        return list(zip(path, path[1:]))

    @classmethod
    def load(cls, path=DEFAULT_HIERARCHY_PATH) -> "CommonTagHierarchy":
        data = json.loads(Path(path).read_text(encoding="utf-8"))
        keys = {k: frozenset(v) for k, v in data["keys"].items()}
        chains = {k: tuple(v) for k, v in data.get("chains", {}).items()}
        return cls(keys, chains)
