"""Typed OSM elements.

Optional metadata (version, changeset, uid, user, timestamp) is ``None`` when
the input does not carry it.
"""
from __future__ import annotations

from dataclasses import dataclass
from datetime import datetime
from typing import Iterable, Optional, Tuple, Union


class InvalidElement(ValueError):
    pass


class TagSet(tuple):
    """Ordered, immutable ``(key, value)`` pairs with unique non-empty keys."""

    def __new__(cls, pairs: Iterable[Tuple[str, str]] = ()):
        items = tuple((str(k), str(v)) for k, v in (pairs.items() if isinstance(pairs, dict) else pairs))
        seen = set()
        for k, v in items:
            if not k or not v:
                raise InvalidElement(f"empty tag key or value: {k!r}={v!r}")
            if k in seen:
                raise InvalidElement(f"duplicate tag key {k!r}")
            seen.add(k)
        return super().__new__(cls, items)

    def get(self, key: str, default=None):
        for k, v in self:
            if k == key:
                return v
        return default

    def __contains__(self, key) -> bool:
        if isinstance(key, str):
            return any(k == key for k, _ in self)
        return tuple.__contains__(self, key)

    def keys(self):
        return [k for k, _ in self]

    def as_dict(self):
        return {k: v for k, v in tuple.__iter__(self)}


@dataclass(frozen=True)
class Meta:
    version: Optional[int] = None
    changeset: Optional[int] = None
    uid: Optional[int] = None
    user: Optional[str] = None
    timestamp: Optional[datetime] = None
    visible: bool = True


NO_META = Meta()


@dataclass(frozen=True)
class NodeElement:
    id: int
    lat: float
    lon: float
    tags: TagSet = TagSet()
    meta: Meta = NO_META

    kind = "node"

    def __post_init__(self):
        if self.id <= 0:
            raise InvalidElement(f"node id must be positive, got {self.id}")
        if not (-90.0 <= self.lat <= 90.0 and -180.0 <= self.lon <= 180.0):
            raise InvalidElement(f"node {self.id} outside WGS84 bounds: {self.lat}, {self.lon}")


@dataclass(frozen=True)
class WayElement:
    id: int
    node_refs: Tuple[int, ...]
    tags: TagSet = TagSet()
    meta: Meta = NO_META

    kind = "way"

    def __post_init__(self):
        if self.id <= 0:
            raise InvalidElement(f"way id must be positive, got {self.id}")
        if len(self.node_refs) < 2:
            raise InvalidElement(f"way {self.id} needs >= 2 node refs, got {len(self.node_refs)}")

    @property
    def is_closed(self) -> bool:
        return self.node_refs[0] == self.node_refs[-1]


MEMBER_TYPES = ("node", "way", "relation")


@dataclass(frozen=True)
class Member:
    type: str
    ref: int
    role: str = ""

    def __post_init__(self):
        if self.type not in MEMBER_TYPES:
            raise InvalidElement(f"member type must be one of {MEMBER_TYPES}, got {self.type!r}")


@dataclass(frozen=True)
class RelationElement:
    id: int
    members: Tuple[Member, ...]
    tags: TagSet = TagSet()
    meta: Meta = NO_META

    kind = "relation"

    def __post_init__(self):
        if self.id <= 0:
            raise InvalidElement(f"relation id must be positive, got {self.id}")
        if not self.members:
            raise InvalidElement(f"relation {self.id} has no members")


Element = Union[NodeElement, WayElement, RelationElement]


def typed_id(el: Element) -> str:
    """``node/1``, ``way/2``, ``relation/3``: unique across element types."""
    return f"{el.kind}/{el.id}"
