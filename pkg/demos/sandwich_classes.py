"""Counting subgroups B with A <= B <= P up to equivalence over A.

Two sandwiches are identified when there is an isomorphism between them that
fixes A.  For free abelian P the class is fixed by two numbers: the root
closure of A inside B and the rank of a complement to it.  With torsion in P
different closures can still be isomorphic over A, and the count drops.
"""

from splitcalc import lattice as L


def show(title, a, p):
    rep = L.count_sandwich_classes(a, p)
    print(f"{title}: {len(rep.root_closure_options)} closures, "
          f"complement ranks {list(rep.complement_rank_range)}, {rep.class_count} classes")
    for w in rep.witnesses:
        print("   ", w)


def main():
    z2 = L.LatticeGroup.free(2)
    show("A = <(2,0)> in Z^2", L.subgroup(z2, (2, 0)), z2)
    show("A = 0 in Z^2", z2.zero(), z2)

    klein = L.LatticeGroup.from_invariants(0, (2, 2))
    # three distinct order-2 subgroups, all isomorphic over 0
    show("A = 0 in (Z/2)^2", klein.zero(), klein)

    p = L.LatticeGroup.from_invariants(2, (4,))
    show("A = <(2,0,0)> in Z^2 + Z/4", L.subgroup(p, (2, 0, 0)), p)


if __name__ == "__main__":
    main()
