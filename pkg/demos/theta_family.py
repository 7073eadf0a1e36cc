"""Splittings that look alike but are not equivalent.

Start from Θ_0: the Heisenberg group H and an opaque hyperbolic group G_w,
glued along two cyclic edges that both land on a.  H is also an HNN extension
of Z^2 = <a, b> with stable letter t, so the vertex v can be refined.  Attaching
the first edge after conjugating by t^n moves it to t^n a t^-n = a b^n, and
the two edge groups now span a subgroup of index n in Z^2.

That index is an invariant of the refined graph, so different n give
inequivalent splittings of the same group.
"""

from splitcalc import lattice
from splitcalc.families import make_theta
from splitcalc.gog import TriState, equivalent


def main():
    print("n  e1 image   e2 image   index")
    for n in range(6):
        inst = make_theta(n)
        lam = inst.extras["lambda_n"]
        e1 = lam.edge("e1").to_origin.images[0]
        e2 = lam.edge("e2").to_origin.images[0]
        idx = "inf" if inst.certificate == lattice.INFINITE else inst.certificate
        print(f"{n}  {str(e1):9}  {str(e2):9}  {idx}")

    print()
    pairs = [(1, 2), (2, 3), (3, 3)]
    for m, n in pairs:
        verdict = equivalent(make_theta(m).graph, make_theta(n).graph)
        print(f"Gamma'_{m} vs Gamma'_{n}: {verdict}")
        assert (verdict is TriState.YES) == (m == n)


if __name__ == "__main__":
    main()
