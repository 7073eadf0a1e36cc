"""Telling groups apart by counting homomorphisms to small finite groups.

The vertex groups <x, y | x^(2^n) = y^2> of the BS(2,4) family all have the
same abelianization, Z + Z/2.  Counting homomorphisms into dihedral groups
separates them.  The P_n family is easier: the abelianization already sees
the torsion 2^n.
"""

from splitcalc.families import bs24_vertex_presentation, pn_presentation
from splitcalc.invariants import abelianization, dihedral_group, distinguish, hom_count, standard_targets


def main():
    for n in (1, 2, 3):
        p = bs24_vertex_presentation(n)
        counts = [hom_count(p, dihedral_group(k)) for k in (4, 8, 16)]
        print(f"n={n}  ab={abelianization(p)}  |Hom(-, D8)|, D16, D32 = {counts}")

    targets = standard_targets(32)
    for m, n in ((1, 2), (2, 3), (1, 3)):
        d = distinguish(bs24_vertex_presentation(m), bs24_vertex_presentation(n), targets)
        print(f"{m} vs {n}: {d}")

    print()
    for n in (1, 2, 3):
        print(f"P_{n}: {abelianization(pn_presentation(n))}")


if __name__ == "__main__":
    main()
