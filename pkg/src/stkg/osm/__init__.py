from .elements import Element, InvalidElement, Member, Meta, NodeElement, RelationElement, TagSet, WayElement, typed_id
from .layers import LAYERS, NoDateFound, SnapshotMeta, classify_layer, extract_snapshot_date, snapshot_meta
from .nodeindex import DanglingNodeRef, NodeIndex, build_node_index
from .pbf import MalformedBlob, StringIndexOutOfRange, UnknownRequiredFeature, parse_pbf
from .pbfwrite import PbfWriter, write_pbf
from .xml import MalformedXml, MissingMandatoryAttribute, parse_xml, write_xml


def parse_file(path):
    """Parse ``.osm.pbf`` or ``.osm`` XML by extension, yielding elements."""
    path = str(path)
    with open(path, "rb") as fh:
        parser = parse_pbf if path.endswith(".pbf") else parse_xml
        yield from parser(fh)


__all__ = [
    "DanglingNodeRef",
    "Element",
    "InvalidElement",
    "LAYERS",
    "MalformedBlob",
    "MalformedXml",
    "Member",
    "Meta",
    "MissingMandatoryAttribute",
    "NoDateFound",
    "NodeElement",
    "NodeIndex",
    "PbfWriter",
    "RelationElement",
    "SnapshotMeta",
    "StringIndexOutOfRange",
    "TagSet",
    "UnknownRequiredFeature",
    "WayElement",
    "build_node_index",
    "classify_layer",
    "extract_snapshot_date",
    "parse_file",
    "parse_pbf",
    "parse_xml",
    "snapshot_meta",
    "typed_id",
    "write_pbf",
    "write_xml",
]
