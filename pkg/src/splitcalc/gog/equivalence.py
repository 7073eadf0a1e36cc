"""A sound but incomplete equivalence test for graphs of groups.

YES comes from an explicit graph isomorphism under which labels agree exactly
and every edge map agrees up to an inner automorphism of its target (one
conjugator per edge end) and a common automorphism of a cyclic edge group.
Vertices produced by ``collapse`` are first expanded back into the sub-graphs
they came from, so collapsing the same edges in two different orders compares
equal.

NO comes from the absence of any graph isomorphism compatible with label
invariants (isomorphism type where decidable, abelianization, and for abelian
vertex groups the index of the subgroup spanned by incident edge groups), or
from different abelianizations of the fundamental groups.
"""

from __future__ import annotations

from typing import Callable, Iterator

from .. import lattice
from .. import words as W
from ..invariants import abelianization
from .collapse import fundamental_presentation
from .graph import Edge, GraphOfGroups, InvalidInputError, Monomorphism
from .labels import (Abelian, Presented, TriState, UnpresentableError, conjugate_tuples,
                     infinite_cyclic_generator, possibly_isomorphic)


# --- expanding collapsed vertices -------------------------------------------


def _route(label: Presented, word) -> tuple[str, object] | None:
    """The sub-graph vertex holding ``word`` and the word as its native element."""
    word = W.reduce(word)
    letters = {abs(a) - 1 for a in word}
    for vid, block in label.origin.blocks:
        if letters <= set(block):
            pos = {gi: li for li, gi in enumerate(block)}
            local = tuple((pos[abs(a) - 1] + 1) * (1 if a > 0 else -1) for a in word)
            inner = label.origin.graph.label(vid)
            if isinstance(inner, Presented) and inner.origin is not None:
                return _route(inner, local)
            return vid, inner.evaluate(local)
    return None


def _first_leaf(label: Presented) -> tuple[str, object]:
    vid, inner = label.origin.graph.vertices[0]
    if isinstance(inner, Presented) and inner.origin is not None:
        return _first_leaf(inner)
    return vid, inner


def flatten(g: GraphOfGroups) -> tuple[GraphOfGroups, frozenset[str]] | None:
    """Expand collapsed vertices; also return the ids of re-expanded edges."""
    vertices, edges, collapsed = [], [], set()
    expanded = {}
    for vid, lab in g.vertices:
        if isinstance(lab, Presented) and lab.origin is not None:
            inner = flatten(lab.origin.graph)
            if inner is None:
                return None
            sg, _ = inner
            vertices += sg.vertices
            edges += sg.edges
            collapsed |= set(sg.edge_ids)
            expanded[vid] = (lab, sg)
        else:
            vertices.append((vid, lab))
    if not expanded:
        return g, frozenset()
    labels = dict(vertices)

    def move(vid, f: Monomorphism):
        if vid not in expanded:
            return vid, f
        lab, _ = expanded[vid]
        spots = [_route(lab, x) for x in f.images]
        if any(s is None for s in spots):
            raise LookupError
        homes = {s[0] for s, x in zip(spots, f.images) if W.reduce(x)}
        if len(homes) > 1:
            raise LookupError
        home = homes.pop() if homes else _first_leaf(lab)[0]
        target = labels[home]
        images = tuple(s[1] if s[0] == home else target.identity() for s in spots)
        return home, Monomorphism(f.source, target, images)

    try:
        for e in g.edges:
            o, fo = move(e.origin, e.to_origin)
            t, ft = move(e.terminus, e.to_terminus)
            edges.append(Edge(e.id, o, t, e.label, fo, ft))
        return GraphOfGroups(tuple(vertices), tuple(edges)), frozenset(collapsed)
    except (LookupError, InvalidInputError):
        return None


# --- graph isomorphism search -----------------------------------------------


def edge_span_index(g: GraphOfGroups, vid: str):
    """[G_v : subgroup generated by incident edge groups] for an abelian vertex."""
    lab = g.label(vid)
    if not isinstance(lab, Abelian):
        return None
    gens = [x for e, end in g.incident(vid) for x in e.end(end)[1].images]
    return lattice.index(lattice.canonicalize(gens, lab.group), lab.group.whole())


def _isomorphisms(g1: GraphOfGroups, g2: GraphOfGroups,
                  vertex_ok: Callable[[str, str], bool],
                  edge_ok: Callable[[Edge, Edge, bool], bool]) -> Iterator[tuple[dict, dict]]:
    """Yield (vertex map, edge map) pairs; the edge map sends id -> (id, flipped)."""
    if len(g1.vertices) != len(g2.vertices) or len(g1.edges) != len(g2.edges):
        return
    v1 = list(g1.vertex_ids)

    def shape(g, v):
        return (g.valence(v), sum(1 for e in g.edges if e.is_loop and e.origin == v))

    vmap: dict[str, str] = {}

    def assign_edges(i: int, emap: dict, used: set):
        if i == len(g1.edges):
            yield dict(emap)
            return
        e = g1.edges[i]
        o, t = vmap[e.origin], vmap[e.terminus]
        for f in g2.edges:
            if f.id in used:
                continue
            for flip in (False, True):
                if (f.origin, f.terminus) != ((t, o) if flip else (o, t)):
                    continue
                if not edge_ok(e, f, flip):
                    continue
                emap[e.id] = (f.id, flip)
                used.add(f.id)
                yield from assign_edges(i + 1, emap, used)
                used.discard(f.id)
                del emap[e.id]

    def assign_vertices(i: int, used: set):
        if i == len(v1):
            for emap in assign_edges(0, {}, set()):
                yield dict(vmap), emap
            return
        v = v1[i]
        for w in g2.vertex_ids:
            if w in used or shape(g1, v) != shape(g2, w) or not vertex_ok(v, w):
                continue
            vmap[v] = w
            used.add(w)
            yield from assign_vertices(i + 1, used)
            used.discard(w)
            del vmap[v]

    yield from assign_vertices(0, set())


def _maps_match(e: Edge, f: Edge, flip: bool) -> bool:
    ends = [(e.to_origin, f.to_terminus if flip else f.to_origin),
            (e.to_terminus, f.to_origin if flip else f.to_terminus)]
    twists = [False]
    if e.label.ngens == 1 and infinite_cyclic_generator(e.label) is not None:
        twists.append(True)
    for twist in twists:
        ok = True
        for m1, m2 in ends:
            imgs = m1.images
            if twist:
                imgs = tuple(m1.target.inv(x) for x in imgs)
            if conjugate_tuples(m1.target, imgs, m2.images) is not TriState.YES:
                ok = False
                break
        if ok:
            return True
    return False


def _strict_match(g1, g2, c1=frozenset(), c2=frozenset()) -> bool:
    def vertex_ok(v, w):
        return g1.label(v) == g2.label(w)

    def edge_ok(e, f, flip):
        return (e.label == f.label and (e.id in c1) == (f.id in c2)
                and _maps_match(e, f, flip))

    return next(_isomorphisms(g1, g2, vertex_ok, edge_ok), None) is not None


def _possible_match(g1, g2) -> bool:
    idx1 = {v: edge_span_index(g1, v) for v in g1.vertex_ids}
    idx2 = {v: edge_span_index(g2, v) for v in g2.vertex_ids}

    def vertex_ok(v, w):
        if not possibly_isomorphic(g1.label(v), g2.label(w)):
            return False
        return idx1[v] is None or idx2[w] is None or idx1[v] == idx2[w]

    def edge_ok(e, f, flip):
        return possibly_isomorphic(e.label, f.label)

    return next(_isomorphisms(g1, g2, vertex_ok, edge_ok), None) is not None


def _pi1_abelianization(g: GraphOfGroups):
    try:
        return abelianization(fundamental_presentation(g))
    except (UnpresentableError, InvalidInputError):
        return None


def equivalent(g1: GraphOfGroups, g2: GraphOfGroups) -> TriState:
    if _strict_match(g1, g2):
        return TriState.YES
    f1, f2 = flatten(g1), flatten(g2)
    if f1 is not None and f2 is not None and (f1[1] or f2[1]):
        if _strict_match(f1[0], f2[0], f1[1], f2[1]):
            return TriState.YES
    if not _possible_match(g1, g2):
        return TriState.NO
    a1, a2 = _pi1_abelianization(g1), _pi1_abelianization(g2)
    if a1 is not None and a2 is not None and a1 != a2:
        return TriState.NO
    return TriState.UNKNOWN


def invariant_summary(g: GraphOfGroups) -> dict[str, str]:
    """Printable graph invariants used by the NO certificates."""
    out = {"vertices": str(len(g.vertices)), "edges": str(len(g.edges))}
    for v in g.vertex_ids:
        idx = edge_span_index(g, v)
        if idx is not None:
            out[f"index.{v}"] = "inf" if idx == lattice.INFINITE else str(idx)
    ab = _pi1_abelianization(g)
    out["pi1.abelianization"] = str(ab) if ab is not None else "unknown"
    return out
