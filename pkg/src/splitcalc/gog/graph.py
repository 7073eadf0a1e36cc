"""Graphs of groups as finite quotient data.

Only the quotient graph Γ = T/G is stored; the Bass-Serre tree is never built.
An edge carries a group label and two monomorphisms, one into each endpoint
label.  Loops are edges whose endpoints coincide.  Values are immutable.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Any, Iterator, Sequence

from .. import intmat
from .. import words as W
from .labels import (Abelian, Free, GroupLabel, Heis, Opaque, Presented, TriState,
                     all_of, evaluate_images, generates, has_infinite_order,
                     infinite_cyclic_generator, is_abelian, is_cyclic, is_finite)


class InvalidInputError(ValueError):
    """Raised by operations whose precondition (a valid graph) fails."""


@dataclass(frozen=True)
class Monomorphism:
    source: GroupLabel
    target: GroupLabel
    images: tuple

    def __post_init__(self):
        object.__setattr__(self, "images", tuple(self.images))

    def __call__(self, word: Sequence[int]):
        return evaluate_images(self.target, word, self.images)

    def apply(self, g):
        """Image of a native source element."""
        return self(self.source.to_word(g))

    def well_typed(self) -> bool:
        return (len(self.images) == self.source.ngens
                and all(self.target.is_element(g) for g in self.images))

    def is_homomorphism(self) -> TriState:
        rels = self.source.relators()
        if rels is None:
            return TriState.UNKNOWN
        return all_of(self.target.is_trivial(self(r)) for r in rels)

    def is_injective(self) -> TriState:
        return _injective(self)

    def is_surjective(self) -> TriState:
        return _surjective(self)

    def is_isomorphism(self) -> TriState:
        return self.is_injective() & self.is_surjective()


def _injective(f: Monomorphism) -> TriState:
    s, t = f.source, f.target
    if s.ngens == 0 or isinstance(s, Heis) and is_finite(s):
        return TriState.YES  # trivial source
    z = infinite_cyclic_generator(s)
    if z is not None:
        return has_infinite_order(t, f.apply(z))
    if isinstance(s, Abelian) and isinstance(t, Abelian):
        # kernel of Z^m -> Z^k / L_t, pulled back; injective iff it lies in L_s
        m = s.ngens
        cols = list(f.images) + list(t.group.relation_basis)
        ker = [v[:m] for v in intmat.kernel(cols, t.ngens)]
        return TriState.of(all(s.group.is_zero(v) for v in ker))
    if isinstance(s, Abelian) and isinstance(t, Heis):
        if s.group.invariant_factors():
            return TriState.NO
        m = s.ngens
        proj_ker = intmat.kernel([g.projection for g in f.images], 2)
        zs = [f(s.to_word(k)).z for k in proj_ker]
        inner = intmat.kernel([(z,) for z in zs], 1) if proj_ker else []
        ker = [tuple(sum(c * k[i] for c, k in zip(coef, proj_ker)) for i in range(m)) for coef in inner]
        return TriState.of(all(s.group.is_zero(v) for v in ker))
    if isinstance(s, Heis) and isinstance(t, Heis):
        # a nontrivial normal subgroup of a Heisenberg subgroup meets the centre
        return TriState.of(not f.images[2].is_identity())
    if is_abelian(s) is False and is_abelian(t):
        return TriState.NO
    if isinstance(s, Heis) and isinstance(t, Free):
        return TriState.NO  # nilpotent non-abelian groups do not embed in free groups
    if isinstance(s, Free) and isinstance(t, (Abelian, Heis)) and s.rank >= 2:
        return TriState.NO
    if isinstance(s, Abelian) and isinstance(t, Free):
        if s.group.invariant_factors() or s.group.free_rank >= 2:
            return TriState.NO
    if s.decidable and isinstance(t, (Free, Presented)) and _has_retraction(f):
        return TriState.YES
    return TriState.UNKNOWN


def _has_retraction(f: Monomorphism) -> bool:
    """Look for r: target -> source with r o f = id, which proves f injective.

    Candidate: each target generator that is the image of a source generator
    (as a single letter) goes back to it; every other generator goes to 1.
    """
    s, t = f.source, f.target
    back = [s.identity()] * t.ngens
    for i, img in enumerate(f.images):
        img = W.reduce(img)
        if len(img) != 1:
            continue
        j = abs(img[0]) - 1
        gen = s.generators()[i]
        back[j] = gen if img[0] > 0 else s.inv(gen)
    rels = t.relators()
    if any(s.is_trivial(evaluate_images(s, r, back)) is not TriState.YES for r in rels):
        return False
    for gen, img in zip(s.generators(), f.images):
        diff = s.mul(evaluate_images(s, img, back), s.inv(gen))
        if s.is_trivial(diff) is not TriState.YES:
            return False
    return True


def _surjective(f: Monomorphism) -> TriState:
    t = f.target
    if isinstance(t, Opaque):
        s = f.source
        if "infinite" in t.properties and is_finite(s):
            return TriState.NO
        if is_abelian(t) is False and is_abelian(s):
            return TriState.NO
        if is_cyclic(t) is False and is_cyclic(s):
            return TriState.NO
        return TriState.UNKNOWN
    return generates(t, f.images)


@dataclass(frozen=True)
class Edge:
    id: str
    origin: str
    terminus: str
    label: GroupLabel
    to_origin: Monomorphism
    to_terminus: Monomorphism

    @property
    def is_loop(self) -> bool:
        return self.origin == self.terminus

    def end(self, which: str) -> tuple[str, Monomorphism]:
        if which == "origin":
            return self.origin, self.to_origin
        if which == "terminus":
            return self.terminus, self.to_terminus
        raise ValueError(which)

    def reversed(self) -> Edge:
        return Edge(self.id, self.terminus, self.origin, self.label, self.to_terminus, self.to_origin)


def make_edge(eid: str, origin: str, terminus: str, label: GroupLabel,
              origin_label: GroupLabel, terminus_label: GroupLabel,
              to_origin: Sequence, to_terminus: Sequence) -> Edge:
    return Edge(eid, origin, terminus, label,
                Monomorphism(label, origin_label, tuple(to_origin)),
                Monomorphism(label, terminus_label, tuple(to_terminus)))


@dataclass(frozen=True)
class Marking:
    """Records that a one-edge sub-graph came from refining a vertex.

    ``images[u]`` sends the generators of the label at u into ``label`` (the
    original vertex group); ``stable`` is the image of the stable letter when
    the sub-graph is a loop.
    """

    vertex: str
    label: GroupLabel
    edge: str
    images: tuple[tuple[str, tuple], ...]
    stable: Any = None

    @property
    def vertices(self) -> tuple[str, ...]:
        return tuple(u for u, _ in self.images)

    def image_map(self) -> dict[str, tuple]:
        return dict(self.images)


@dataclass(frozen=True)
class GraphOfGroups:
    vertices: tuple[tuple[str, GroupLabel], ...]
    edges: tuple[Edge, ...] = ()
    markings: tuple[Marking, ...] = field(default=(), compare=False)

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(self.vertices))
        object.__setattr__(self, "edges", tuple(self.edges))
        object.__setattr__(self, "markings", tuple(self.markings))
        ids = [v for v, _ in self.vertices]
        if len(set(ids)) != len(ids):
            raise InvalidInputError("duplicate vertex id")
        eids = [e.id for e in self.edges]
        if len(set(eids)) != len(eids):
            raise InvalidInputError("duplicate edge id")
        known = set(ids)
        for e in self.edges:
            if e.origin not in known or e.terminus not in known:
                raise InvalidInputError(f"edge {e.id} has an unknown endpoint")

    # lookups

    @property
    def vertex_ids(self) -> tuple[str, ...]:
        return tuple(v for v, _ in self.vertices)

    @property
    def edge_ids(self) -> tuple[str, ...]:
        return tuple(e.id for e in self.edges)

    def label(self, vid: str) -> GroupLabel:
        for v, lab in self.vertices:
            if v == vid:
                return lab
        raise KeyError(vid)

    def edge(self, eid: str) -> Edge:
        for e in self.edges:
            if e.id == eid:
                return e
        raise KeyError(eid)

    def incident(self, vid: str) -> Iterator[tuple[Edge, str]]:
        """(edge, end) pairs at vid; a loop appears once per end."""
        for e in self.edges:
            if e.origin == vid:
                yield e, "origin"
            if e.terminus == vid:
                yield e, "terminus"

    def valence(self, vid: str) -> int:
        return sum(1 for _ in self.incident(vid))

    def is_connected(self) -> bool:
        if not self.vertices:
            return True
        adj: dict[str, set[str]] = {v: set() for v in self.vertex_ids}
        for e in self.edges:
            adj[e.origin].add(e.terminus)
            adj[e.terminus].add(e.origin)
        seen = {self.vertex_ids[0]}
        todo = deque(seen)
        while todo:
            for w in adj[todo.popleft()]:
                if w not in seen:
                    seen.add(w)
                    todo.append(w)
        return len(seen) == len(self.vertices)

    def spanning_tree(self) -> tuple[str, ...]:
        """Breadth-first spanning tree, edges taken in declaration order."""
        if not self.vertices:
            return ()
        seen = {self.vertex_ids[0]}
        tree: list[str] = []
        todo = deque(seen)
        while todo:
            v = todo.popleft()
            for e in self.edges:
                if e.is_loop:
                    continue
                for a, b in ((e.origin, e.terminus), (e.terminus, e.origin)):
                    if a == v and b not in seen:
                        seen.add(b)
                        tree.append(e.id)
                        todo.append(b)
        return tuple(tree)

    def with_markings(self, markings: Sequence[Marking]) -> GraphOfGroups:
        return GraphOfGroups(self.vertices, self.edges, tuple(markings))

    def relabeled(self, vmap: dict[str, str], emap: dict[str, str]) -> GraphOfGroups:
        """Rename vertex and edge ids."""
        vs = tuple((vmap.get(v, v), lab) for v, lab in self.vertices)
        es = tuple(Edge(emap.get(e.id, e.id), vmap.get(e.origin, e.origin),
                        vmap.get(e.terminus, e.terminus), e.label, e.to_origin, e.to_terminus)
                   for e in self.edges)
        ms = tuple(Marking(vmap.get(m.vertex, m.vertex), m.label, emap.get(m.edge, m.edge),
                           tuple((vmap.get(u, u), im) for u, im in m.images), m.stable)
                   for m in self.markings)
        return GraphOfGroups(vs, es, ms)


# --- validation --------------------------------------------------------------


@dataclass(frozen=True)
class Diagnostic:
    code: str  # DISCONNECTED, WELL_TYPED, RELATION, NOT_INJECTIVE, LABEL_MISMATCH, UNCHECKED
    subject: str
    message: str

    @property
    def is_error(self) -> bool:
        return self.code != "UNCHECKED"

    def __str__(self) -> str:
        return f"{self.code} {self.subject}: {self.message}"


def validate(g: GraphOfGroups) -> list[Diagnostic]:
    out: list[Diagnostic] = []
    if not g.vertices:
        out.append(Diagnostic("DISCONNECTED", "graph", "no vertices"))
    elif not g.is_connected():
        out.append(Diagnostic("DISCONNECTED", "graph", "underlying graph is not connected"))
    for e in g.edges:
        for end in ("origin", "terminus"):
            vid, f = e.end(end)
            subject = f"{e.id}@{end}"
            if f.source != e.label or f.target != g.label(vid):
                out.append(Diagnostic("LABEL_MISMATCH", subject, "map does not match the edge and vertex labels"))
                continue
            if not f.well_typed():
                out.append(Diagnostic("WELL_TYPED", subject, "a generator image is not an element of the target"))
                continue
            hom = f.is_homomorphism()
            if hom is TriState.NO:
                out.append(Diagnostic("RELATION", subject, "a relation of the edge group is not preserved"))
                continue
            if hom is TriState.UNKNOWN:
                out.append(Diagnostic("UNCHECKED", subject, f"relations not checkable in {f.target.kind} target"))
            inj = f.is_injective()
            if inj is TriState.NO:
                out.append(Diagnostic("NOT_INJECTIVE", subject, "edge map has a nontrivial kernel"))
            elif inj is TriState.UNKNOWN:
                out.append(Diagnostic("UNCHECKED", subject, f"injectivity not decidable into {f.target.kind} target"))
    return out


def require_valid(g: GraphOfGroups) -> None:
    errors = [d for d in validate(g) if d.is_error]
    if errors:
        raise InvalidInputError("; ".join(map(str, errors)))
