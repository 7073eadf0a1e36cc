"""Fundamental presentations and edge collapse.

The presentation of π₁ follows the usual recipe: generators of every vertex
group plus one stable letter per edge outside a spanning tree; relations are
the vertex relations, ``f_o(s) = f_t(s)`` for tree edges and
``t f_o(s) t^-1 = f_t(s)`` for the others, with s running over edge-group
generators.  Generator names are ``<vertex>.<name>`` and ``t.<edge>``.
"""

from __future__ import annotations

from typing import Iterable, Literal

from .. import words as W
from ..invariants import FinitePresentation
from .graph import Edge, GraphOfGroups, InvalidInputError, Monomorphism, require_valid
from .labels import (GroupLabel, Opaque, Origin, Presented, UnpresentableError, evaluate_images,
                     is_abelian, is_finite, is_torsion_free, label_presentation)


def check_spanning_tree(g: GraphOfGroups, tree: Iterable[str]) -> tuple[str, ...]:
    tree = tuple(tree)
    if len(set(tree)) != len(tree):
        raise InvalidInputError("spanning tree lists an edge twice")
    parent = {v: v for v in g.vertex_ids}

    def find(v):
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for eid in tree:
        try:
            e = g.edge(eid)
        except KeyError:
            raise InvalidInputError(f"unknown edge {eid!r}") from None
        a, b = find(e.origin), find(e.terminus)
        if a == b:
            raise InvalidInputError(f"edge {eid!r} closes a cycle")
        parent[a] = b
    if len({find(v) for v in g.vertex_ids}) != 1:
        raise InvalidInputError("edge set does not span the graph")
    return tree


def _layout(g: GraphOfGroups, tree: tuple[str, ...], allow_opaque: bool = False):
    """Generator names, index blocks per vertex, stable letter per non-tree edge."""
    per_vertex = []
    for vid, lab in g.vertices:
        if isinstance(lab, Opaque) and not allow_opaque:
            raise UnpresentableError(f"vertex {vid} carries opaque group {lab.name}")
        per_vertex.append((vid, lab.names))
    stable_edges = [e.id for e in g.edges if e.id not in tree]

    def assign(keep_qualified: bool):
        names = []
        for vid, ns in per_vertex:
            names += [n if keep_qualified and "." in n else f"{vid}.{n}" for n in ns]
        names += [f"t.{eid}" for eid in stable_edges]
        return names

    names = assign(True)
    if len(set(names)) != len(names):
        names = assign(False)
        if len(set(names)) != len(names):
            raise InvalidInputError("generator names collide; rename vertices")
    blocks, k = {}, 0
    for vid, ns in per_vertex:
        blocks[vid] = tuple(range(k, k + len(ns)))
        k += len(ns)
    stable = {eid: k + i for i, eid in enumerate(stable_edges)}
    return tuple(names), blocks, stable


def _relations(g: GraphOfGroups, blocks, stable, with_vertex_relations: bool = True) -> list[W.Word]:
    rels: list[W.Word] = []
    if with_vertex_relations:
        for vid, lab in g.vertices:
            for r in label_presentation(lab).relations:
                rels.append(W.relabel(r, blocks[vid]))
    for e in g.edges:
        lo, lt = g.label(e.origin), g.label(e.terminus)
        for io, it in zip(e.to_origin.images, e.to_terminus.images):
            wo = W.relabel(lo.to_word(io), blocks[e.origin])
            wt = W.relabel(lt.to_word(it), blocks[e.terminus])
            if e.id in stable:
                t = W.gen(stable[e.id])
                rels.append(W.mul(t, wo, W.inverse(t), W.inverse(wt)))
            else:
                rels.append(W.mul(wo, W.inverse(wt)))
    return [r for r in rels if r]


def fundamental_presentation(g: GraphOfGroups, spanning_tree: Iterable[str] | None = None) -> FinitePresentation:
    tree = g.spanning_tree() if spanning_tree is None else spanning_tree
    tree = check_spanning_tree(g, tree)
    names, blocks, stable = _layout(g, tree)
    return FinitePresentation(len(names), tuple(_relations(g, blocks, stable)), names)


def presentation_with_blocks(g: GraphOfGroups, spanning_tree=None):
    """Like fundamental_presentation, also returning vertex blocks and stable letters."""
    tree = check_spanning_tree(g, g.spanning_tree() if spanning_tree is None else spanning_tree)
    names, blocks, stable = _layout(g, tree)
    p = FinitePresentation(len(names), tuple(_relations(g, blocks, stable)), names)
    return p, blocks, stable


def _composite_opaque(sub: GraphOfGroups, names) -> Opaque:
    labels = [lab for _, lab in sub.vertices]
    props = {"collapsed"}
    if any(is_finite(lab) is False or isinstance(lab, Opaque) and "infinite" in lab.properties
           for lab in labels):
        props.add("infinite")
    if any(is_abelian(lab) is False for lab in labels):
        props.add("nonabelian")
    if all(is_torsion_free(lab) for lab in labels):
        props.add("torsion-free")
    return Opaque("pi1(" + "+".join(sub.vertex_ids) + ")", tuple(names), frozenset(props))


def collapse(g: GraphOfGroups, edges: Iterable[str],
             opaque: Literal["error", "compose"] = "error") -> GraphOfGroups:
    """Contract every connected component of ``edges`` to a single vertex.

    A component that is exactly a recorded refinement gets its original label
    back.  Any other component becomes a PRESENTED vertex remembering the
    sub-graph it came from.  With ``opaque="compose"`` a component containing
    an opaque label becomes an opaque label on the combined generators instead
    of raising.
    """
    require_valid(g)
    chosen = tuple(dict.fromkeys(edges))
    for eid in chosen:
        if eid not in g.edge_ids:
            raise InvalidInputError(f"unknown edge {eid!r}")
    if not chosen:
        return g

    parent = {v: v for v in g.vertex_ids}

    def find(v):
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for eid in chosen:
        e = g.edge(eid)
        parent[find(e.origin)] = find(e.terminus)
    comp_edges: dict[str, list[str]] = {}
    for eid in chosen:
        comp_edges.setdefault(find(g.edge(eid).origin), []).append(eid)
    comp_vertices = {r: [v for v in g.vertex_ids if find(v) == r] for r in comp_edges}
    in_comp = {v: r for r, vs in comp_vertices.items() for v in vs}

    new_label: dict[str, GroupLabel] = {}
    new_id: dict[str, str] = {}
    convert = {}
    used = {v for v in g.vertex_ids if v not in in_comp}
    for r, vs in comp_vertices.items():
        es = comp_edges[r]
        sub = GraphOfGroups(tuple((v, g.label(v)) for v in vs), tuple(g.edge(e) for e in es))
        mark = next((m for m in g.markings if set(m.vertices) == set(vs) and [m.edge] == es), None)
        if mark is not None:
            label, vid = mark.label, mark.vertex
            imgs = mark.image_map()
            convert[r] = (lambda u, x, lab=label, imgs=imgs:
                          evaluate_images(lab, g.label(u).to_word(x), imgs[u]))
        else:
            vid = "_".join(vs)
            tree = sub.spanning_tree()
            has_opaque = any(isinstance(lab, Opaque) for _, lab in sub.vertices)
            if has_opaque and opaque != "compose":
                raise UnpresentableError("component " + "+".join(vs) + " contains an opaque label")
            names, blocks, stable = _layout(sub, tree, allow_opaque=has_opaque)
            if has_opaque:
                label = _composite_opaque(sub, names)
            else:
                p = FinitePresentation(len(names), tuple(_relations(sub, blocks, stable)), names)
                origin = Origin(sub, tuple((v, blocks[v]) for v in vs), tuple(stable.items()))
                label = Presented(p, origin)
            convert[r] = (lambda u, x, blocks=blocks:
                          W.relabel(g.label(u).to_word(x), blocks[u]))
        while vid in used:
            vid += "'"
        used.add(vid)
        new_id[r], new_label[r] = vid, label

    vertices = []
    for v, lab in g.vertices:
        if v not in in_comp:
            vertices.append((v, lab))
        elif comp_vertices[in_comp[v]][0] == v:
            vertices.append((new_id[in_comp[v]], new_label[in_comp[v]]))
    labels = dict(vertices)

    def moved(v, f: Monomorphism):
        if v not in in_comp:
            return v, f
        r = in_comp[v]
        images = tuple(convert[r](v, x) for x in f.images)
        return new_id[r], Monomorphism(f.source, new_label[r], images)

    out_edges = []
    for e in g.edges:
        if e.id in chosen:
            continue
        o, fo = moved(e.origin, e.to_origin)
        t, ft = moved(e.terminus, e.to_terminus)
        assert fo.target == labels[o] and ft.target == labels[t]
        out_edges.append(Edge(e.id, o, t, e.label, fo, ft))
    markings = tuple(m for m in g.markings
                     if m.edge not in chosen and not set(m.vertices) & set(in_comp))
    return GraphOfGroups(tuple(vertices), tuple(out_edges), markings)
