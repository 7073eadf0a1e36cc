"""One-edge refinement of a vertex from explicit attachment data.

Refining v needs three pieces of data: a one-edge splitting Λ_v with a
marking identifying π₁(Λ_v) with G_v; for each edge end e at v a vertex u_e
of Λ_v; and a conjugator g_e in G_v such that g_e f_e(G_e) g_e^-1 lies in the
marked copy of G_{u_e}.  The new edge map is ad(g_e) ∘ f_e pulled back
through the marking.

The marking is given by images in G_v of the generators of each vertex label
of Λ_v (and of the stable letter for a loop).  It is certified to be an
isomorphism in two situations, which cover the trivial amalgam and the
mapping-torus splittings of abelian-by-cyclic groups:

* an amalgam one of whose edge maps is onto: π₁ is the other vertex group,
  so the marking must restrict to an isomorphism there;
* an HNN extension of Z^k along Z^k with both edge maps isomorphisms: π₁ is
  torsion-free polycyclic of Hirsch length k + 1, so a surjection onto a
  torsion-free target of that Hirsch length is an isomorphism (a proper
  quotient of a poly-Z group has smaller Hirsch length or torsion).

Anything else is refused with INVALID_MARKING.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Mapping

from .graph import Edge, GraphOfGroups, InvalidInputError, Marking, Monomorphism, require_valid, validate
from .labels import (Abelian, Heis, TriState, evaluate_images, generates, hirsch_length,
                     is_torsion_free, solve_in)


class RefinementError(ValueError):
    code = "REFINEMENT"


class AttachmentUndecidable(RefinementError):
    code = "ATTACHMENT_UNDECIDABLE"


class AttachmentFailed(RefinementError):
    code = "ATTACHMENT_FAILED"


class InvalidMarking(RefinementError):
    code = "INVALID_MARKING"


EndKey = tuple[str, str]  # (edge id, "origin" | "terminus")


@dataclass(frozen=True)
class RefinementData:
    vertex: str
    splitting: GraphOfGroups
    marking: Mapping[str, tuple]
    stable_image: Any = None
    attachment: Mapping[EndKey, str] = field(default_factory=dict)
    conjugators: Mapping[EndKey, Any] = field(default_factory=dict)


def _ends_at(g: GraphOfGroups, v: str) -> list[EndKey]:
    return [(e.id, end) for e, end in g.incident(v)]


def _lookup(mapping: Mapping, key: EndKey, default=None):
    if key in mapping:
        return mapping[key]
    return mapping.get(key[0], default)


def certify_marking(gv, data: RefinementData) -> None:
    """Raise InvalidMarking unless the marking is a certified isomorphism."""
    lam = data.splitting
    if len(lam.edges) != 1:
        raise InvalidMarking("the splitting must have exactly one edge")
    errors = [d for d in validate(lam) if d.is_error]
    if errors:
        raise InvalidMarking("splitting is invalid: " + "; ".join(map(str, errors)))
    eps = lam.edges[0]
    images = {}
    for u, lab in lam.vertices:
        imgs = tuple(data.marking.get(u, ()))
        if len(imgs) != lab.ngens or not all(gv.is_element(x) for x in imgs):
            raise InvalidMarking(f"marking images for {u} are not elements of the vertex group")
        images[u] = imgs
        psi = Monomorphism(lab, gv, imgs)
        if psi.is_homomorphism() is not TriState.YES:
            raise InvalidMarking(f"marking does not respect the relations of {u}")

    def psi(u, x):
        return evaluate_images(gv, lam.label(u).to_word(x), images[u])

    for io, it in zip(eps.to_origin.images, eps.to_terminus.images):
        left, right = psi(eps.origin, io), psi(eps.terminus, it)
        if eps.is_loop:
            t = data.stable_image
            if t is None or not gv.is_element(t):
                raise InvalidMarking("a loop splitting needs a stable letter image")
            left = gv.mul(gv.mul(t, left), gv.inv(t))
        if gv.is_trivial(gv.mul(left, gv.inv(right))) is not TriState.YES:
            raise InvalidMarking("marking does not respect the edge relation")

    gens = [x for imgs in images.values() for x in imgs]
    if eps.is_loop:
        gens.append(data.stable_image)
    if generates(gv, gens) is not TriState.YES:
        raise InvalidMarking("marking is not onto the vertex group")

    if not eps.is_loop:
        for small, big in (("origin", "terminus"), ("terminus", "origin")):
            if eps.end(small)[1].is_surjective() is TriState.YES:
                u = eps.end(big)[0]
                if Monomorphism(lam.label(u), gv, images[u]).is_injective() is TriState.YES:
                    return
        raise InvalidMarking("cannot certify injectivity of this amalgam marking")
    u = eps.origin
    lab_u, lab_e = lam.label(u), eps.label
    if (isinstance(lab_u, Abelian) and isinstance(lab_e, Abelian)
            and not lab_u.group.invariant_factors() and not lab_e.group.invariant_factors()
            and lab_u.group.free_rank == lab_e.group.free_rank
            and eps.to_origin.is_isomorphism() is TriState.YES
            and eps.to_terminus.is_isomorphism() is TriState.YES
            and is_torsion_free(gv) and hirsch_length(gv) == lab_u.group.free_rank + 1):
        return
    raise InvalidMarking("cannot certify injectivity of this HNN marking")


def refine(g: GraphOfGroups, data: RefinementData) -> GraphOfGroups:
    require_valid(g)
    v = data.vertex
    if v not in g.vertex_ids:
        raise InvalidInputError(f"unknown vertex {v!r}")
    gv = g.label(v)
    if not isinstance(gv, (Abelian, Heis)):
        raise AttachmentUndecidable(f"vertex {v} carries a {gv.kind} group")
    certify_marking(gv, data)
    lam = data.splitting
    eps = lam.edges[0]

    def local(u):
        return f"{v}.{u}"

    ends = _ends_at(g, v)
    new_ends: dict[EndKey, tuple[str, Monomorphism]] = {}
    for key in ends:
        e = g.edge(key[0])
        f = e.end(key[1])[1]
        k = _lookup(data.conjugators, key, gv.identity())
        if not gv.is_element(k):
            raise InvalidInputError(f"conjugator for {key[0]}@{key[1]} is not in the vertex group")
        targets = [gv.mul(gv.mul(k, x), gv.inv(k)) for x in f.images]
        u = _lookup(data.attachment, key)
        if u is not None and u not in lam.vertex_ids:
            raise InvalidInputError(f"attachment vertex {u!r} is not in the splitting")
        # without an explicit u_e, take the first vertex whose image contains the edge group
        for cand in [u] if u is not None else lam.vertex_ids:
            words = [solve_in(gv, data.marking[cand], h) for h in targets]
            if all(w is not None for w in words):
                lab_u = lam.label(cand)
                images = tuple(lab_u.evaluate(w) for w in words)
                new_ends[key] = (local(cand), Monomorphism(e.label, lab_u, images))
                break
        else:
            raise AttachmentFailed(f"{key[0]}@{key[1]}: conjugated edge group is not in the image of "
                                   + (u if u is not None else "any vertex of the splitting"))

    vertices = []
    for w, lab in g.vertices:
        if w == v:
            vertices += [(local(u), lab_u) for u, lab_u in lam.vertices]
        else:
            vertices.append((w, lab))
    taken = set(g.edge_ids)
    eps_id = eps.id if eps.id not in taken else f"{v}.{eps.id}"
    if eps_id in taken:
        raise InvalidInputError(f"edge id {eps_id!r} already used")
    edges = []
    for e in g.edges:
        o, fo = new_ends.get((e.id, "origin"), (e.origin, e.to_origin))
        t, ft = new_ends.get((e.id, "terminus"), (e.terminus, e.to_terminus))
        edges.append(Edge(e.id, o, t, e.label, fo, ft))
    edges.append(Edge(eps_id, local(eps.origin), local(eps.terminus), eps.label,
                      eps.to_origin, eps.to_terminus))
    marking = Marking(v, gv, eps_id, tuple((local(u), tuple(data.marking[u])) for u in lam.vertex_ids),
                      data.stable_image)
    markings = tuple(m for m in g.markings if v not in m.vertices) + (marking,)
    return GraphOfGroups(tuple(vertices), tuple(edges), markings)
