"""OSM XML reader (streaming) and writer."""
from __future__ import annotations

from datetime import datetime, timezone
from typing import BinaryIO, Iterable, Iterator, Optional, TextIO
from xml.etree import ElementTree as ET
from xml.sax.saxutils import quoteattr

from .elements import Element, InvalidElement, Member, Meta, NodeElement, RelationElement, TagSet, WayElement


class MalformedXml(ValueError):
    pass


class MissingMandatoryAttribute(MalformedXml):
    def __init__(self, attribute: str, element: str = ""):
        super().__init__(f"missing or invalid mandatory attribute {attribute!r} on {element or 'element'}")
        self.attribute = attribute


def _int(a, name, el) -> int:
    v = a.get(name)
    if v is None:
        raise MissingMandatoryAttribute(name, el)
    try:
        return int(v)
    except ValueError:
        raise MissingMandatoryAttribute(name, el) from None


def _opt_int(a, name) -> Optional[int]:
    v = a.get(name)
    return int(v) if v not in (None, "") else None


def _timestamp(v: Optional[str]) -> Optional[datetime]:
    if not v:
        return None
    return datetime.fromisoformat(v.replace("Z", "+00:00")).astimezone(timezone.utc)


def _meta(a) -> Meta:
    return Meta(
        version=_opt_int(a, "version"),
        changeset=_opt_int(a, "changeset"),
        uid=_opt_int(a, "uid"),
        user=a.get("user") or None,
        timestamp=_timestamp(a.get("timestamp")),
        visible=a.get("visible", "true") != "false",
    )


def _tags(elem) -> TagSet:
    return TagSet([(t.get("k"), t.get("v")) for t in elem.iter("tag") if t.get("k") and t.get("v")])


def _build(elem) -> Optional[Element]:
    a = elem.attrib
    tag = elem.tag
    eid = _int(a, "id", tag)
    meta = _meta(a)
    if tag == "node":
        for name in ("lat", "lon"):
            if a.get(name) is None:
                raise MissingMandatoryAttribute(name, f"node {eid}")
        try:
            lat, lon = float(a["lat"]), float(a["lon"])
        except ValueError:
            raise MissingMandatoryAttribute("lat/lon", f"node {eid}") from None
        el = NodeElement(eid, lat, lon, _tags(elem), meta)
    elif tag == "way":
        refs = tuple(_int(nd.attrib, "ref", f"way {eid} nd") for nd in elem.iter("nd"))
        if len(refs) < 2:
            raise MissingMandatoryAttribute("nd", f"way {eid} (needs >= 2 node refs)")
        el = WayElement(eid, refs, _tags(elem), meta)
    else:
        members = []
        for m in elem.iter("member"):
            members.append(Member(m.get("type", ""), _int(m.attrib, "ref", f"relation {eid} member"), m.get("role", "")))
        if not members:
            raise MissingMandatoryAttribute("member", f"relation {eid}")
        el = RelationElement(eid, tuple(members), _tags(elem), meta)
    return el if meta.visible else None


def parse_xml(stream: BinaryIO) -> Iterator[Element]:
    """Yield every visible element of an OSM XML document in document order."""
    depth = 0
    try:
        for event, elem in ET.iterparse(stream, events=("start", "end")):
            if event == "start":
                depth += 1
                continue
            depth -= 1
            if depth == 1 and elem.tag in ("node", "way", "relation"):
                try:
                    el = _build(elem)
                except InvalidElement as exc:
                    raise MissingMandatoryAttribute(str(exc), elem.tag) from exc
                elem.clear()
                if el is not None:
                    yield el
            elif depth == 1:
                elem.clear()
    except ET.ParseError as exc:
        raise MalformedXml(str(exc)) from exc


def _attrs(el: Element) -> str:
    m = el.meta
    parts = [f'id="{el.id}"']
    if m.version is not None:
        parts.append(f'version="{m.version}"')
    if m.changeset is not None:
        parts.append(f'changeset="{m.changeset}"')
    if m.timestamp is not None:
        parts.append(f'timestamp="{m.timestamp.strftime("%Y-%m-%dT%H:%M:%SZ")}"')
    if m.user is not None:
        parts.append(f"user={quoteattr(m.user)}")
    if m.uid is not None:
        parts.append(f'uid="{m.uid}"')
    return " ".join(parts)


def _tag_lines(tags) -> str:
    return "".join(f"    <tag k={quoteattr(k)} v={quoteattr(v)}/>\n" for k, v in tags)


def write_xml(elements: Iterable[Element], out: TextIO) -> None:
    out.write('<?xml version="1.0" encoding="UTF-8"?>\n<osm version="0.6" generator="stkg">\n')
    for el in elements:
        if el.kind == "node":
            head = f'  <node {_attrs(el)} lat="{el.lat!r}" lon="{el.lon!r}"'
            if el.tags:
                out.write(head + ">\n" + _tag_lines(el.tags) + "  </node>\n")
            else:
                out.write(head + "/>\n")
        elif el.kind == "way":
            out.write(f"  <way {_attrs(el)}>\n")
            out.write("".join(f'    <nd ref="{r}"/>\n' for r in el.node_refs))
            out.write(_tag_lines(el.tags) + "  </way>\n")
        else:
            out.write(f"  <relation {_attrs(el)}>\n")
            for m in el.members:
                out.write(f'    <member type="{m.type}" ref="{m.ref}" role={quoteattr(m.role)}/>\n')
            out.write(_tag_lines(el.tags) + "  </relation>\n")
    out.write("</osm>\n")
