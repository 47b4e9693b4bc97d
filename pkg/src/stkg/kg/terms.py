"""RDF terms and quads, with their compact (CSV) and full-IRI (N-Quads) forms.

CSV keeps the compact names of the published example table: bare OSM ids,
prefixed predicates, ``geo<id>`` geometry nodes. Bare ids are only unique per
element type, so two distinct quads can render to the same CSV line; N-Quads
keeps them apart with type-qualified IRIs.
"""
from __future__ import annotations

from dataclasses import dataclass
from datetime import date
from urllib.parse import quote

RDF = "http://www.w3.org/1999/02/22-rdf-syntax-ns#"
RDFS = "http://www.w3.org/2000/01/rdf-schema#"
GEO = "http://www.opengis.net/ont/geosparql#"
OSM = "https://www.openstreetmap.org/"
OSM_KEY = "https://wiki.openstreetmap.org/wiki/Key:"
OSM_TAG = "https://wiki.openstreetmap.org/wiki/Tag:"
# deployment namespaces; override per published graph
HCF = "https://example.org/hcf#"
STKG = "https://example.org/stkg/"

PREFIXES = {"rdf": RDF, "rdfs": RDFS, "geo": GEO, "hcf": HCF, "stkg": STKG + "ontology#"}
WKT_LITERAL = GEO + "wktLiteral"

_IRI_SAFE = ":/=#?&;@!$'()*+,~.-_%"

OSM_ID, TAG_CLASS, KEY_CLASS, PREDICATE, GEOMETRY, CELL, LITERAL = (
    "osm_id", "tag_value_class", "tag_key_class", "predicate", "geometry_node", "grid_cell", "literal",
)

_KINDS = frozenset({OSM_ID, TAG_CLASS, KEY_CLASS, PREDICATE, GEOMETRY, CELL, LITERAL})


@dataclass(frozen=True, order=True)
class Term:
    """``kind`` selects the rendering; ``value`` is the lexical core.

    osm_id / geometry_node values are typed ids (``way/240974013``) or, for
    cell geometries, ``cell/<index>``; tag_value_class carries its key in
    ``qualifier``; literals may carry a datatype IRI in ``qualifier``.
    """

    kind: str
    value: str
    qualifier: str = ""

    def __post_init__(self):
        if self.kind not in _KINDS:
            raise ValueError(f"unknown term kind {self.kind!r}")
        if not self.value:
            raise ValueError(f"empty {self.kind} term")

    def csv(self) -> str:
        if self.kind == OSM_ID:
            return self.value.split("/", 1)[1]
        if self.kind == GEOMETRY:
            kind, ident = self.value.split("/", 1)
            return ("geoCell" if kind == "cell" else "geo") + ident
        return self.value

    def nquads(self) -> str:
        k = self.kind
        if k == OSM_ID:
            return f"<{OSM}{self.value}>"
        if k == GEOMETRY:
            return f"<{STKG}geometry/{self.value}>"
        if k == CELL:
            return f"<{STKG}cell/{self.value}>"
        if k == KEY_CLASS:
            return f"<{OSM_KEY}{quote(self.value, safe=_IRI_SAFE)}>"
        if k == TAG_CLASS:
            return f"<{OSM_TAG}{quote(self.qualifier + '=' + self.value, safe=_IRI_SAFE)}>"
        if k == PREDICATE:
            prefix, _, local = self.value.partition(":")
            if local and prefix in PREFIXES:
                return f"<{PREFIXES[prefix]}{local}>"
            if ":" not in self.value and self.value in ONTOLOGY_TERMS:
                return f"<{PREFIXES['stkg']}{self.value}>"
            return f"<{OSM_KEY}{quote(self.value, safe=_IRI_SAFE)}>"
        if k == LITERAL:
            lit = '"' + escape_literal(self.value) + '"'
            return f"{lit}^^<{self.qualifier}>" if self.qualifier else lit
        raise ValueError(f"unknown term kind {k!r}")


ONTOLOGY_TERMS = frozenset({"isParentCellOf", "isChildCellOf"})


def escape_literal(s: str) -> str:
    return (
        s.replace("\\", "\\\\").replace('"', '\\"').replace("\n", "\\n").replace("\r", "\\r")
    )


def osm(typed_id: str) -> Term:
    return Term(OSM_ID, typed_id)


def pred(name: str) -> Term:
    return Term(PREDICATE, name)


def cell(index: str) -> Term:
    return Term(CELL, index)


def literal(value: str, datatype: str = "") -> Term:
    return Term(LITERAL, value, datatype)


RDF_TYPE = pred("rdf:type")
SUBCLASS_OF = pred("rdfs:subClassOf")
HAS_GEOMETRY = pred("geo:hasGeometry")
AS_WKT = pred("geo:asWKT")
IS_ADJACENT_TO = pred("hcf:isAdjacentTo")
IS_PARENT_CELL_OF = pred("isParentCellOf")
IS_CHILD_CELL_OF = pred("isChildCellOf")


@dataclass(frozen=True, order=True)
class Quad:
    subject: Term
    predicate: Term
    object: Term
    date: date

    def csv_row(self):
        return (self.subject.csv(), self.predicate.csv(), self.object.csv(), self.date.isoformat())

    def nquad(self) -> str:
        return (
            f"{self.subject.nquads()} {self.predicate.nquads()} {self.object.nquads()} "
            f"<date:{self.date.isoformat()}> ."
        )
