"""Minimality, reducedness and redundant vertices, read off the quotient graph.

Translation to the Bass-Serre tree T:

* T has a proper invariant subtree exactly when some vertex of the quotient
  has valence one and its edge group maps onto the vertex group; pruning that
  edge orbit leaves an invariant subtree.  Loops count twice towards valence,
  so an HNN extension is always minimal.
* Reduced: no non-loop edge has an edge group equal to an endpoint group.
* A vertex x of T is redundant when T minus x has two components and x is not
  a branch point; in the quotient this is a valence-two vertex whose two edge
  maps are isomorphisms.  Loop basepoints are never flagged (conservative).
"""

from __future__ import annotations

from .graph import GraphOfGroups, require_valid
from .labels import TriState


def is_minimal(g: GraphOfGroups) -> TriState:
    require_valid(g)
    out = TriState.YES
    for vid in g.vertex_ids:
        ends = list(g.incident(vid))
        if len(ends) != 1:
            continue
        e, end = ends[0]
        s = e.end(end)[1].is_surjective()
        if s is TriState.YES:
            return TriState.NO
        if s is TriState.UNKNOWN:
            out = TriState.UNKNOWN
    return out


def is_reduced(g: GraphOfGroups) -> TriState:
    require_valid(g)
    out = TriState.YES
    for e in g.edges:
        if e.is_loop:
            continue
        for end in ("origin", "terminus"):
            s = e.end(end)[1].is_surjective()
            if s is TriState.YES:
                return TriState.NO
            if s is TriState.UNKNOWN:
                out = TriState.UNKNOWN
    return out


def find_redundant_vertices(g: GraphOfGroups) -> list[tuple[str, TriState]]:
    """Valence-two vertices whose incident maps are both isomorphisms.

    Each entry carries YES when both maps are decidably isomorphisms and
    UNKNOWN when neither is decidably not one.
    """
    require_valid(g)
    out = []
    for vid in g.vertex_ids:
        ends = list(g.incident(vid))
        if len(ends) != 2 or any(e.is_loop for e, _ in ends):
            continue
        conf = TriState.YES
        for e, end in ends:
            conf = conf & e.end(end)[1].is_isomorphism()
        if conf is not TriState.NO:
            out.append((vid, conf))
    return out
