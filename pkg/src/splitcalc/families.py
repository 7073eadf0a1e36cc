"""Explicit families of splittings, each paired with the invariant that tells
its members apart.

======================  =====================================================
``finite-order``        H *_{Z/n} (Z/n * Z), H opaque with elements of order n
``bs24``                <x, y | x^(2^n) = y^2> as a vertex of a splitting of BS(2,4)
``roots-pn``            BS(1,2) *_{<a_n>} P_n, P_n = <a_n, x, y | a_n^(2^n) = [x, y]>
``heisenberg``          H *_{H_n} (H_n * Z)
``example-1-4``         <G_1, b> *_{<a_1, b>} <G_2, G_3, A>
``theta``               Θ_n, its refinement Λ_n, the HNN Γ_n and the base graph Γ'_n
======================  =====================================================

The BS(2,4) splitting is the graph with one vertex V_n and one loop whose
edge group Z maps to x at one end and to x^2 at the other.  Its fundamental
group is <x, y, t | x^(2^n) = y^2, t x t^-1 = x^2>; sliding the y-edge of the
underlying generalized Baumslag-Solitar graph around the loop n - 1 times and
collapsing yields the single loop with labels (2, 4).

Example 1.4 uses G_i = <x_i, y_i> free with a_i = [x_i, y_i].  When b is a
multiple k a_1 the vertex <G_1, b> is G_1 itself and b maps to [x_1, y_1]^k.
Otherwise <G_1, b> = G_1 *_{a_1} <a_1, b> = <x_1, y_1, b | [[x_1, y_1], b]>.
The other vertex is A *_{a_2, a_3} (G_2, G_3).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

from . import intmat, lattice
from . import polycyclic as pc
from . import words as W
from .gog import (Abelian, GraphOfGroups, Heis, Opaque, Presented, RefinementData, collapse,
                  edge_span_index, make_edge, refine)
from .invariants import FinitePresentation, abelianization

FAMILY_IDS = ("finite-order", "bs24", "roots-pn", "heisenberg", "example-1-4", "theta")

Z = Abelian(lattice.LatticeGroup.free(1))
Z2 = Abelian(lattice.LatticeGroup.free(2))


@dataclass(frozen=True)
class FamilyInstance:
    family_id: str
    parameter: Any
    graph: GraphOfGroups
    certificate: Any
    extras: dict = field(default_factory=dict, compare=False)
    notes: tuple[str, ...] = ()


def _cyclic_order(n: int) -> Abelian:
    return Abelian(lattice.LatticeGroup.from_invariants(0, (n,)))


def make_finite_order_family(n: int) -> FamilyInstance:
    if n < 2:
        raise ValueError("n must be at least 2")
    h = Opaque("H", ("h",), frozenset({"infinite"}))
    k = Presented(FinitePresentation.parse(("u", "s"), [f"u^{n}"]))
    edge_label = _cyclic_order(n)
    e = make_edge("e", "H", "K", edge_label, h, k, [(1,)], [(1,)])
    g = GraphOfGroups((("H", h), ("K", k)), (e,))
    return FamilyInstance("finite-order", n, g, abelianization(k.presentation))


def bs24_vertex_presentation(n: int) -> FinitePresentation:
    return FinitePresentation.parse(("x", "y"), [f"x^{2 ** n} y^-2"])


def bs24_presentation() -> FinitePresentation:
    return FinitePresentation.parse(("a", "t"), ["t a^2 t^-1 a^-4"])


def make_bs24_vertex(n: int) -> tuple[FinitePresentation, GraphOfGroups]:
    if n < 1:
        raise ValueError("n must be at least 1")
    p = bs24_vertex_presentation(n)
    v = Presented(p)
    e = make_edge("e", "V", "V", Z, v, v, [(1,)], [(1, 1)])
    return p, GraphOfGroups((("V", v),), (e,))


def make_bs24_family(n: int) -> FamilyInstance:
    p, g = make_bs24_vertex(n)
    return FamilyInstance("bs24", n, g, abelianization(p))


def pn_presentation(n: int) -> FinitePresentation:
    return FinitePresentation.parse(("an", "x", "y"), [f"an^{2 ** n} y x y^-1 x^-1"])


def make_pn_splitting(n: int) -> FamilyInstance:
    if n < 1:
        raise ValueError("n must be at least 1")
    bs = Presented(FinitePresentation.parse(("a", "t"), ["t a t^-1 a^-2"]))
    pn = Presented(pn_presentation(n))
    root = W.parse_word(f"t^{-n} a t^{n}", ("a", "t"))
    e = make_edge("e", "B", "P", Z, bs, pn, [root], [(1,)])
    g = GraphOfGroups((("B", bs), ("P", pn)), (e,))
    return FamilyInstance("roots-pn", n, g, abelianization(pn.presentation))


def hn_free_product(n: int) -> FinitePresentation:
    """H_n * Z on generators p = a^n, q = b^n, r = c and s."""
    return FinitePresentation.parse(("p", "q", "r", "s"),
                                    [f"p q p^-1 q^-1 r^{-n * n}", "p r p^-1 r^-1", "q r q^-1 r^-1"])


def make_heis_family(n: int) -> FamilyInstance:
    if n < 1:
        raise ValueError("n must be at least 1")
    h = Heis(pc.HeisSubgroupDesc.full())
    hn = Heis(pc.HeisSubgroupDesc.hn(n))
    k = Presented(hn_free_product(n))
    e = make_edge("e", "H", "K", hn, h, k, hn.generators(), [(1,), (2,), (3,)])
    g = GraphOfGroups((("H", h), ("K", k)), (e,))
    notes = ("n = 1: H_1 = H, so the amalgam is trivial and not minimal",) if n == 1 else ()
    return FamilyInstance("heisenberg", n, g, pc.hn_center_derived_index(n), notes=notes)


A1 = (1, 0, 0)


def make_example_1_4(b) -> FamilyInstance:
    b = tuple(int(x) for x in b)
    if len(b) != 3:
        raise ValueError("b must be a vector in Z^3")
    z3 = lattice.LatticeGroup.free(3)
    a1_sub = lattice.subgroup(z3, A1)
    in_span = lattice.membership(b, a1_sub)
    in_root = lattice.membership(b, lattice.root_closure(a1_sub, z3.whole()))
    edge = Abelian(lattice.LatticeGroup(2, tuple(intmat.kernel([A1, b], 3))))
    if in_span:
        v1 = Presented(FinitePresentation(2, (), ("x1", "y1")))
        comm = W.commutator(W.gen(0), W.gen(1))
        to_v1 = [comm, W.power(comm, b[0])]
    else:
        v1 = Presented(FinitePresentation.parse(("x1", "y1", "b"),
                                                ["x1 y1 x1^-1 y1^-1 b y1 x1 y1^-1 x1^-1 b^-1"]))
        to_v1 = [W.commutator(W.gen(0), W.gen(1)), W.gen(2)]
    names = ("a1", "a2", "a3", "x2", "y2", "x3", "y3")
    v2 = Presented(FinitePresentation.parse(names, [
        "a1 a2 a1^-1 a2^-1", "a1 a3 a1^-1 a3^-1", "a2 a3 a2^-1 a3^-1",
        "a2^-1 x2 y2 x2^-1 y2^-1", "a3^-1 x3 y3 x3^-1 y3^-1"]))
    b_word = W.mul(W.gen(0, b[0]), W.gen(1, b[1]), W.gen(2, b[2]))
    e = make_edge("e", "V1", "V2", edge, v1, v2, to_v1, [W.gen(0), b_word])
    g = GraphOfGroups((("V1", v1), ("V2", v2)), (e,))
    return FamilyInstance("example-1-4", b, g, (in_span, in_root))


# --- the Heisenberg refinement family ----------------------------------------

G_W = Opaque("G_w", ("u1", "u2"), frozenset({"infinite", "torsion-free", "hyperbolic", "nonabelian"}))
H_FULL = Heis(pc.HeisSubgroupDesc.full())


def make_theta_graph(n: int = 0) -> GraphOfGroups:
    """Θ_n: e_1 lands on t^n a t^-n = a b^n, e_2 on a."""
    a = pc.SDP_A
    e1 = make_edge("e1", "v", "w", Z, H_FULL, G_W, [pc.conjugate_by_t(a, n)], [(1,)])
    e2 = make_edge("e2", "v", "w", Z, H_FULL, G_W, [a], [(2,)])
    return GraphOfGroups((("v", H_FULL), ("w", G_W)), (e1, e2))


def heisenberg_hnn() -> tuple[GraphOfGroups, dict, pc.HeisElement]:
    """Z^2 = <a, b> with stable letter t: t a t^-1 = a b, t b t^-1 = b."""
    eps = make_edge("eps", "x", "x", Z2, Z2, Z2, [(1, 0), (0, 1)], [(1, 1), (0, 1)])
    lam = GraphOfGroups((("x", Z2),), (eps,))
    return lam, {"x": (pc.SDP_A, pc.SDP_B)}, pc.SDP_T


def theta_refinement(n: int) -> RefinementData:
    lam, marking, t = heisenberg_hnn()
    return RefinementData("v", lam, marking, t, conjugators={("e1", "origin"): pc.SDP_T ** n})


def make_theta(n: int) -> FamilyInstance:
    if n < 0:
        raise ValueError("n must be non-negative")
    theta0 = make_theta_graph(0)
    lam_n = refine(theta0, theta_refinement(n))
    gamma_n = collapse(lam_n, ["e1", "e2"], opaque="compose")
    # Γ'_n: drop the HNN edge, leaving Z^2 = <a, b> at v
    base = GraphOfGroups(lam_n.vertices, tuple(e for e in lam_n.edges if e.id != "eps"))
    base = base.relabeled({"v.x": "v"}, {})
    index = edge_span_index(base, "v")
    extras = {"theta0": theta0, "theta_n": make_theta_graph(n), "lambda_n": lam_n,
              "gamma_n": gamma_n, "gamma_prime_n": base}
    return FamilyInstance("theta", n, base, index, extras)


def make_family(family_id: str, param) -> FamilyInstance:
    builders = {
        "finite-order": make_finite_order_family,
        "bs24": make_bs24_family,
        "roots-pn": make_pn_splitting,
        "heisenberg": make_heis_family,
        "example-1-4": make_example_1_4,
        "theta": make_theta,
    }
    if family_id not in builders:
        raise KeyError(f"unknown family {family_id!r}; choose from {', '.join(FAMILY_IDS)}")
    return builders[family_id](param)
