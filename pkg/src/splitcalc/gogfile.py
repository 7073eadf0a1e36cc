"""The ``.gog`` text format.

A document is UTF-8, line oriented, and starts with the header line ``gog/1``.
Lines starting with ``#`` are comments.  Sections::

    [meta]              name, notes
    [group <id>]        kind = abelian | heis | free | presented | opaque, plus
                        rank, relations, subgroup, generators, properties, name
    [vertices]          <vertex id> = <group id>
    [edge <id>]         origin, terminus, group, to_origin, to_terminus
    [marking <vertex>]  group, edge, stable, image.<vertex of the sub-graph>
    [refinement]        vertex, stable, image.<u>, attach.<edge>@<end>,
                        conjugator.<edge>@<end>

Element syntax depends on the group it lives in: ``(1,0)`` for abelian
vectors, ``[x,y,z]`` for Heisenberg elements and caret words such as
``x^2 y^-1`` (``1`` is the empty word) otherwise.  Lists are comma separated.

``serialize`` writes sections in a fixed order (objects keep their declared
order, keys within a section follow a fixed order) and normalizes spacing, so
``serialize(parse(text))`` is the canonical form of ``text``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from . import lattice
from . import polycyclic as pc
from . import words as W
from .gog import (Abelian, Edge, Free, GraphOfGroups, Heis, InvalidInputError, Marking, Monomorphism,
                  Opaque, Presented, RefinementData)
from .gog.labels import GroupLabel
from .invariants import FinitePresentation

HEADER = "gog/1"

_SECTION = re.compile(r"^\[([a-z]+)(?:\s+([A-Za-z_][\w.'+-]*))?\]$")
_KEY = re.compile(r"^([A-Za-z_][\w.@'+-]*)\s*=\s*(.*)$")

KEY_ORDER = {
    "meta": ("name", "notes"),
    "group": ("kind", "name", "rank", "subgroup", "generators", "relations", "properties"),
    "edge": ("origin", "terminus", "group", "to_origin", "to_terminus"),
    "marking": ("group", "edge", "stable"),
    "refinement": ("vertex", "stable"),
}
PREFIXED = {"marking": ("image.",), "refinement": ("image.", "attach.", "conjugator.")}
NAMED = {"group", "edge", "marking"}


class ParseError(ValueError):
    def __init__(self, message: str, line: int = 0, column: int = 0):
        where = f"line {line}, column {column}: " if line else ""
        super().__init__(where + message)
        self.reason = message
        self.line = line
        self.column = column


@dataclass
class GogDocument:
    meta: dict[str, str] = field(default_factory=dict)
    groups: dict[str, dict[str, str]] = field(default_factory=dict)
    vertices: dict[str, str] = field(default_factory=dict)
    edges: dict[str, dict[str, str]] = field(default_factory=dict)
    markings: dict[str, dict[str, str]] = field(default_factory=dict)
    refinement: dict[str, str] | None = None
    other: dict[str, dict[str, str]] = field(default_factory=dict)
    # (section header, key) -> (line, column, raw value); not part of equality
    positions: dict = field(default_factory=dict, compare=False, repr=False)


# --- normalization -----------------------------------------------------------


def split_top(text: str) -> list[tuple[str, int]]:
    """Split on commas outside brackets; returns (item, offset) pairs."""
    items, depth, start = [], 0, 0
    for i, ch in enumerate(text):
        if ch in "([":
            depth += 1
        elif ch in ")]":
            depth -= 1
        elif ch == "," and depth == 0:
            items.append((text[start:i], start))
            start = i + 1
    items.append((text[start:], start))
    out = []
    for item, off in items:
        stripped = item.lstrip()
        out.append((stripped.rstrip(), off + len(item) - len(stripped)))
    return out


def _normalize(value: str) -> str:
    value = value.strip()
    if not value:
        return ""
    parts = []
    for item, _ in split_top(value):
        item = re.sub(r"\s+", " ", item)
        item = re.sub(r"\s*([()\[\],])\s*", r"\1", item) if item[:1] in "([" else item
        parts.append(item)
    return ", ".join(parts)


# --- parsing -----------------------------------------------------------------


def _known_key(kind: str, key: str) -> bool:
    if kind == "vertices":
        return True
    if key in KEY_ORDER.get(kind, ()):
        return True
    return any(key.startswith(p) and len(key) > len(p) for p in PREFIXED.get(kind, ()))


def parse(text: str, strict: bool = True) -> GogDocument:
    doc = GogDocument()
    seen_header = False
    current = None  # (header, kind, name, fields dict)
    headers: set[str] = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        indent = len(raw) - len(raw.lstrip())
        if not seen_header:
            if line != HEADER:
                raise ParseError(f"expected header {HEADER!r}", lineno, indent + 1)
            seen_header = True
            continue
        if line.startswith("["):
            m = _SECTION.match(line)
            if not m:
                raise ParseError("malformed section header", lineno, indent + 1)
            kind, name = m.group(1), m.group(2)
            header = line
            if header in headers:
                raise ParseError(f"duplicate section {header}", lineno, indent + 1)
            headers.add(header)
            known = kind in ("meta", "vertices", "refinement") and name is None or kind in NAMED and name
            if not known:
                if strict:
                    raise ParseError(f"unknown section {header}", lineno, indent + 1)
                fields = doc.other.setdefault(header, {})
            elif kind == "meta":
                fields = doc.meta
            elif kind == "vertices":
                fields = doc.vertices
            elif kind == "refinement":
                doc.refinement = fields = {}
            else:
                fields = {"group": doc.groups, "edge": doc.edges, "marking": doc.markings}[kind].setdefault(name, {})
            current = (header, kind if known else "other", fields)
            continue
        m = _KEY.match(line)
        if not m:
            raise ParseError("expected 'key = value'", lineno, indent + 1)
        if current is None:
            raise ParseError("key outside of any section", lineno, indent + 1)
        header, kind, fields = current
        key, value = m.group(1), m.group(2)
        if kind != "other" and not _known_key(kind, key) and strict:
            raise ParseError(f"unknown key {key!r} in {header}", lineno, indent + 1)
        if key in fields:
            raise ParseError(f"duplicate key {key!r}", lineno, indent + 1)
        fields[key] = _normalize(value)
        doc.positions[(header, key)] = (lineno, indent + m.start(2) + 1, value)
    if not seen_header:
        raise ParseError(f"missing header {HEADER!r}", 1, 1)
    return doc


# --- serialization -------------------------------------------------------------


def _ordered(kind: str, fields: dict[str, str]) -> list[tuple[str, str]]:
    order = KEY_ORDER.get(kind, ())
    out = [(k, fields[k]) for k in order if k in fields]
    for prefix in PREFIXED.get(kind, ()):
        out += sorted((k, v) for k, v in fields.items() if k.startswith(prefix) and k not in order)
    rest = sorted((k, v) for k, v in fields.items() if (k, v) not in out)
    return out + rest


def serialize(doc: GogDocument) -> str:
    lines = [HEADER]

    def section(header, kind, fields):
        lines.append("")
        lines.append(header)
        lines.extend(f"{k} = {v}" if v else f"{k} =" for k, v in _ordered(kind, fields))

    if doc.meta:
        section("[meta]", "meta", doc.meta)
    for gid, fields in doc.groups.items():
        section(f"[group {gid}]", "group", fields)
    if doc.vertices:
        lines += ["", "[vertices]"] + [f"{v} = {gid}" for v, gid in doc.vertices.items()]
    for eid, fields in doc.edges.items():
        section(f"[edge {eid}]", "edge", fields)
    for vid, fields in doc.markings.items():
        section(f"[marking {vid}]", "marking", fields)
    if doc.refinement is not None:
        section("[refinement]", "refinement", doc.refinement)
    for header in sorted(doc.other):
        section(header, "other", doc.other[header])
    return "\n".join(lines) + "\n"


# --- labels and elements ---------------------------------------------------------


def _where(doc: GogDocument, header: str, key: str) -> tuple[int, int, str | None]:
    return doc.positions.get((header, key), (0, 0, None))


def _items(doc: GogDocument, header: str, key: str, value: str) -> list[tuple[str, int, int]]:
    line, col, raw = _where(doc, header, key)
    src = raw if raw is not None else value
    if not src.strip():
        return []
    return [(item, line, col + off if line else 0) for item, off in split_top(src)]


_VEC = re.compile(r"^\((\s*-?\d+\s*(?:,\s*-?\d+\s*)*)?\)$")
_HEIS = re.compile(r"^\[\s*(-?\d+)\s*,\s*(-?\d+)\s*,\s*(-?\d+)\s*\]$")


def parse_element(label: GroupLabel, text: str, line: int = 0, col: int = 0):
    text = text.strip()
    if isinstance(label, Abelian):
        m = _VEC.match(text)
        if not m:
            raise ParseError(f"expected an integer vector, got {text!r}", line, col)
        vec = tuple(int(x) for x in m.group(1).split(",")) if m.group(1) else ()
        if len(vec) != label.ngens:
            raise ParseError(f"vector {text} has length {len(vec)}, expected {label.ngens}", line, col)
        return vec
    if isinstance(label, Heis):
        m = _HEIS.match(text)
        if not m:
            raise ParseError(f"expected a Heisenberg element [x,y,z], got {text!r}", line, col)
        return pc.HeisElement(*(int(x) for x in m.groups()))
    try:
        return W.parse_word(text, label.names)
    except W.WordSyntaxError as exc:
        raise ParseError(exc.reason, line, col + exc.column - 1 if line else 0) from None


def format_element(label: GroupLabel, x) -> str:
    if isinstance(label, Abelian):
        return "(" + ",".join(map(str, x)) + ")"
    if isinstance(label, Heis):
        return str(x)
    return W.format_word(x, label.names)


def _int(doc, header, key, value) -> int:
    try:
        return int(value)
    except ValueError:
        line, col, _ = _where(doc, header, key)
        raise ParseError(f"{key} must be an integer", line, col) from None


def label_from_fields(doc: GogDocument, gid: str, fields: dict[str, str]) -> GroupLabel:
    header = f"[group {gid}]"
    kind = fields.get("kind")
    if kind is None:
        raise ParseError(f"group {gid} has no kind", *_where(doc, header, "kind")[:2])
    if kind == "abelian":
        m = _int(doc, header, "rank", fields.get("rank", "0"))
        probe = Abelian(lattice.LatticeGroup.free(m))
        rels = tuple(parse_element(probe, t, ln, c)
                     for t, ln, c in _items(doc, header, "relations", fields.get("relations", "")))
        return Abelian(lattice.LatticeGroup(m, rels))
    if kind == "heis":
        desc = fields.get("subgroup", "full").split(" ", 1)
        line, col, _ = _where(doc, header, "subgroup")
        try:
            if desc[0] == "full":
                return Heis(pc.HeisSubgroupDesc.full())
            if desc[0] == "center":
                return Heis(pc.HeisSubgroupDesc.center())
            if desc[0] == "hn":
                return Heis(pc.HeisSubgroupDesc.hn(int(desc[1])))
            if desc[0] == "derived":
                return Heis(pc.HeisSubgroupDesc.derived(int(desc[1])))
            if desc[0] == "cyclic":
                g = parse_element(Heis(pc.HeisSubgroupDesc.full()), desc[1], line, col)
                return Heis(pc.HeisSubgroupDesc.cyclic(g))
        except (IndexError, ValueError) as exc:
            if isinstance(exc, ParseError):
                raise
            raise ParseError(f"bad Heisenberg subgroup {fields.get('subgroup')!r}", line, col) from None
        raise ParseError(f"unknown Heisenberg subgroup {desc[0]!r}", line, col)
    if kind == "free":
        return Free(_int(doc, header, "rank", fields.get("rank", "0")))
    if kind == "presented":
        names = tuple(fields.get("generators", "").split())
        try:
            probe = Presented(FinitePresentation(len(names), (), names))
        except ValueError as exc:
            raise ParseError(str(exc), *_where(doc, header, "generators")[:2]) from None
        rels = tuple(parse_element(probe, t, ln, c)
                     for t, ln, c in _items(doc, header, "relations", fields.get("relations", "")))
        return Presented(FinitePresentation(len(names), rels, names))
    if kind == "opaque":
        return Opaque(fields.get("name", gid), tuple(fields.get("generators", "").split()),
                      frozenset(fields.get("properties", "").split()))
    raise ParseError(f"unknown group kind {kind!r}", *_where(doc, header, "kind")[:2])


def label_to_fields(label: GroupLabel) -> dict[str, str]:
    if isinstance(label, Abelian):
        out = {"kind": "abelian", "rank": str(label.ngens)}
        if label.group.relation_basis:
            out["relations"] = ", ".join(format_element(label, c) for c in label.group.relation_basis)
        return out
    if isinstance(label, Heis):
        d = label.desc
        k = d.kind
        sub = {pc.SubgroupKind.FULL: "full", pc.SubgroupKind.CENTER: "center",
               pc.SubgroupKind.H_N: f"hn {d.n}", pc.SubgroupKind.DERIVED_OF_H_N: f"derived {d.n}",
               pc.SubgroupKind.CYCLIC: f"cyclic {d.generator}"}[k]
        return {"kind": "heis", "subgroup": sub}
    if isinstance(label, Free):
        return {"kind": "free", "rank": str(label.rank)}
    if isinstance(label, Presented):
        p = label.presentation
        out = {"kind": "presented", "generators": " ".join(p.names)}
        if p.relations:
            out["relations"] = ", ".join(W.format_word(r, p.names) for r in p.relations)
        return out
    out = {"kind": "opaque", "name": label.name}
    if label.generators_:
        out["generators"] = " ".join(label.generators_)
    if label.properties:
        out["properties"] = " ".join(sorted(label.properties))
    return out


# --- documents <-> graphs ---------------------------------------------------------


def _labels(doc: GogDocument) -> dict[str, GroupLabel]:
    return {gid: label_from_fields(doc, gid, f) for gid, f in doc.groups.items()}


def _group_ref(doc, labels, header, key, gid) -> GroupLabel:
    if gid not in labels:
        line, col, _ = _where(doc, header, key)
        raise ParseError(f"unknown group {gid!r}", line, col)
    return labels[gid]


def _element_list(doc, header, key, value, label):
    return tuple(parse_element(label, t, ln, c) for t, ln, c in _items(doc, header, key, value))


def to_graph(doc: GogDocument) -> GraphOfGroups:
    labels = _labels(doc)
    vertices = []
    for vid, gid in doc.vertices.items():
        vertices.append((vid, _group_ref(doc, labels, "[vertices]", vid, gid)))
    vlabels = dict(vertices)
    edges = []
    for eid, f in doc.edges.items():
        header = f"[edge {eid}]"
        for key in ("origin", "terminus", "group"):
            if key not in f:
                raise ParseError(f"edge {eid} has no {key}")
        for key in ("origin", "terminus"):
            if f[key] not in vlabels:
                line, col, _ = _where(doc, header, key)
                raise ParseError(f"unknown vertex {f[key]!r}", line, col)
        lab = _group_ref(doc, labels, header, "group", f["group"])
        lo, lt = vlabels[f["origin"]], vlabels[f["terminus"]]
        io = _element_list(doc, header, "to_origin", f.get("to_origin", ""), lo)
        it = _element_list(doc, header, "to_terminus", f.get("to_terminus", ""), lt)
        for key, imgs in (("to_origin", io), ("to_terminus", it)):
            if len(imgs) != lab.ngens:
                line, col, _ = _where(doc, header, key)
                raise ParseError(f"{key} lists {len(imgs)} images for {lab.ngens} generators", line, col)
        edges.append(Edge(eid, f["origin"], f["terminus"], lab, Monomorphism(lab, lo, io), Monomorphism(lab, lt, it)))
    markings = []
    for vid, f in doc.markings.items():
        header = f"[marking {vid}]"
        lab = _group_ref(doc, labels, header, "group", f.get("group", ""))
        images = []
        for key, value in f.items():
            if key.startswith("image."):
                u = key[len("image."):]
                images.append((u, _element_list(doc, header, key, value, lab)))
        stable = parse_element(lab, f["stable"], *_where(doc, header, "stable")[:2]) if "stable" in f else None
        markings.append(Marking(vid, lab, f.get("edge", ""), tuple(images), stable))
    try:
        return GraphOfGroups(tuple(vertices), tuple(edges), tuple(markings))
    except InvalidInputError as exc:
        raise ParseError(str(exc)) from None


def _parse_end(key: str) -> tuple[str, str] | str:
    if "@" in key:
        eid, end = key.rsplit("@", 1)
        if end not in ("origin", "terminus"):
            raise ParseError(f"edge end must be origin or terminus, got {end!r}")
        return (eid, end)
    return key


def refinement_from(doc: GogDocument, target: GraphOfGroups) -> RefinementData:
    """Read the [refinement] section; elements live in the refined vertex's group."""
    ref = doc.refinement
    if ref is None:
        raise ParseError("document has no [refinement] section")
    header = "[refinement]"
    vid = ref.get("vertex")
    if vid not in target.vertex_ids:
        raise ParseError(f"refinement vertex {vid!r} is not in the graph", *_where(doc, header, "vertex")[:2])
    gv = target.label(vid)
    splitting = to_graph(GogDocument(doc.meta, doc.groups, doc.vertices, doc.edges, {}, None, {}, doc.positions))
    marking, attach, conj = {}, {}, {}
    for key, value in ref.items():
        if key.startswith("image."):
            marking[key[6:]] = _element_list(doc, header, key, value, gv)
        elif key.startswith("attach."):
            attach[_parse_end(key[7:])] = value
        elif key.startswith("conjugator."):
            line, col, _ = _where(doc, header, key)
            conj[_parse_end(key[11:])] = parse_element(gv, value, line, col)
    stable = parse_element(gv, ref["stable"], *_where(doc, header, "stable")[:2]) if "stable" in ref else None
    return RefinementData(vid, splitting, marking, stable, attach, conj)


def _label_id(label: GroupLabel, taken: set[str]) -> str:
    if isinstance(label, Abelian) and not label.group.relation_basis:
        base = "Z" if label.ngens == 1 else f"Z{label.ngens}"
    elif isinstance(label, Heis):
        base = "H" if label.desc.kind is pc.SubgroupKind.FULL else "Hsub"
    elif isinstance(label, Free):
        base = f"F{label.rank}"
    elif isinstance(label, Opaque) and re.fullmatch(r"[A-Za-z_]\w*", label.name):
        base = label.name
    else:
        base = "G"
    gid, k = base, 1
    while gid in taken:
        k += 1
        gid = f"{base}_{k}"
    return gid


def from_graph(g: GraphOfGroups, meta: dict[str, str] | None = None) -> GogDocument:
    doc = GogDocument(meta=dict(meta or {}))
    ids: list[tuple[GroupLabel, str]] = []

    def gid_of(label):
        for lab, gid in ids:
            if lab == label:
                return gid
        gid = _label_id(label, {i for _, i in ids})
        ids.append((label, gid))
        doc.groups[gid] = label_to_fields(label)
        return gid

    for vid, lab in g.vertices:
        doc.vertices[vid] = gid_of(lab)
    for e in g.edges:
        lo, lt = g.label(e.origin), g.label(e.terminus)
        doc.edges[e.id] = {
            "origin": e.origin, "terminus": e.terminus, "group": gid_of(e.label),
            "to_origin": ", ".join(format_element(lo, x) for x in e.to_origin.images),
            "to_terminus": ", ".join(format_element(lt, x) for x in e.to_terminus.images),
        }
    for m in g.markings:
        f = {"group": gid_of(m.label), "edge": m.edge}
        if m.stable is not None:
            f["stable"] = format_element(m.label, m.stable)
        for u, imgs in m.images:
            f[f"image.{u}"] = ", ".join(format_element(m.label, x) for x in imgs)
        doc.markings[m.vertex] = f
    # re-normalize so the document equals parse(serialize(doc))
    return parse(serialize(doc))


def load(path: str, strict: bool = True) -> GogDocument:
    with open(path, encoding="utf-8") as fh:
        return parse(fh.read(), strict=strict)
