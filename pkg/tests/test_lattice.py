import itertools

import pytest
from hypothesis import given, settings, strategies as st

from _oracles import span_in_box
from splitcalc import lattice as L

Z2 = L.LatticeGroup.free(2)
Z3 = L.LatticeGroup.free(3)


def vec(m, lo=-4, hi=4):
    return st.lists(st.integers(lo, hi), min_size=m, max_size=m).map(tuple)


def residues(gens, mod):
    """Residues mod ``mod`` reached by integer combinations of gens in Z^2."""
    out = {(0, 0)}
    frontier = [(0, 0)]
    while frontier:
        x = frontier.pop()
        for g in gens:
            y = ((x[0] + g[0]) % mod, (x[1] + g[1]) % mod)
            if y not in out:
                out.add(y)
                frontier.append(y)
    return out


# --- canonical forms ----------------------------------------------------------


def test_empty_and_identity_generators():
    assert L.canonicalize([], Z2) == Z2.zero()
    assert L.canonicalize([(1, 0), (0, 1)], Z2) == Z2.whole()


def test_diag_2_3_has_two_generating_sets():
    s = L.canonicalize([(2, 0), (0, 3)], Z2)
    t = L.canonicalize([(2, 3), (0, 3), (2, 0)], Z2)
    assert s == t
    assert residues([(2, 0), (0, 3)], 6) == residues([(2, 3), (0, 3), (2, 0)], 6)


@settings(max_examples=150, deadline=None)
@given(st.lists(vec(2), max_size=4), st.permutations(range(4)))
def test_canonical_form_ignores_order_and_redundancy(gens, perm):
    s = L.canonicalize(gens, Z2)
    shuffled = [gens[i] for i in perm if i < len(gens)]
    extra = [tuple(a + b for a, b in zip(gens[0], gens[-1]))] if gens else []
    assert L.canonicalize(shuffled + extra, Z2) == s


# --- membership and index ---------------------------------------------------------


def test_membership_examples():
    s = L.canonicalize([(2, 0), (0, 3)], Z2)
    assert L.membership((0, 0), s)
    assert not L.membership((1, 1), s)
    a1 = L.subgroup(Z3, (1, 0, 0))
    assert L.membership((3, 0, 0), a1)
    assert not L.membership((0, 1, 0), a1)


def test_index_examples():
    s = L.canonicalize([(2, 0), (0, 3)], Z2)
    assert L.index(s, s) == 1
    assert L.index(s, Z2.whole()) == 6 == len(residues([(1, 0), (0, 1)], 6)) // len(residues([(2, 0), (0, 3)], 6))
    for n in range(1, 8):
        assert L.index(L.canonicalize([(1, 0), (1, n)], Z2), Z2.whole()) == n
    assert L.index(L.subgroup(Z2, (1, 0)), Z2.whole()) == L.INFINITE


def test_index_rejects_non_subgroup():
    with pytest.raises(L.NotASubgroupError):
        L.index(L.subgroup(Z2, (1, 0)), L.subgroup(Z2, (2, 0)))


@settings(max_examples=150, deadline=None)
@given(st.lists(vec(2), min_size=1, max_size=3), vec(2, -8, 8))
def test_membership_matches_box_search(gens, v):
    s = L.canonicalize(gens, Z2)
    inside = span_in_box(gens, 2, (), 24)
    if max(abs(x) for x in v) <= 8:
        assert L.membership(v, s) == (v in inside)


@settings(max_examples=100, deadline=None)
@given(st.lists(vec(2), min_size=2, max_size=3))
def test_index_is_determinant_for_full_rank(gens):
    s = L.canonicalize(gens, Z2)
    if s.rank == 2:
        dets = [abs(u[0] * v[1] - u[1] * v[0]) for u, v in itertools.combinations(gens, 2)]
        from math import gcd
        g = 0
        for d in dets:
            g = gcd(g, d)
        assert L.index(s, Z2.whole()) == g


# --- root closure and complements ------------------------------------------------


def test_root_closure_examples():
    a = L.subgroup(Z2, (2, 0))
    assert L.root_closure(a, a) == a
    assert L.root_closure(a, Z2.whole()) == L.subgroup(Z2, (1, 0))
    assert L.root_closure(a, L.subgroup(Z2, (1, 0), (0, 2))) == L.subgroup(Z2, (1, 0))


def root_closure_by_box(a_gens, b_gens, free, mods, radius=4, kmax=12):
    b_box = span_in_box(b_gens, free, mods, radius)
    a_big = span_in_box(a_gens, free, mods, radius * kmax)
    out = set()
    for v in b_box:
        for k in range(1, kmax + 1):
            w = tuple(k * x for x in v[:free]) + tuple((k * x) % m for x, m in zip(v[free:], mods))
            if w in a_big:
                out.add(v)
                break
    return out


@pytest.mark.parametrize("free,mods", [(2, ()), (1, (4,)), (1, (2,)), (2, (3,))])
def test_root_closure_matches_box_oracle(free, mods):
    p = L.LatticeGroup.from_invariants(free, mods)
    m = free + len(mods)
    small = [tuple(v) for v in itertools.product(range(-2, 3), repeat=m)]
    rng = __import__("random").Random(free * 10 + len(mods))
    for _ in range(40):
        b_gens = rng.sample(small, 2)
        coeffs = [rng.randint(-2, 2) for _ in b_gens]
        a_gens = [tuple(sum(c * g[i] for c, g in zip(coeffs, b_gens)) for i in range(m))]
        a, b = L.canonicalize(a_gens, p), L.canonicalize(b_gens, p)
        e = L.root_closure(a, b)
        got = {v for v in span_in_box(b_gens, free, mods, 4) if L.membership(v, e)}
        assert got == root_closure_by_box(a_gens, b_gens, free, mods)


def test_split_complement():
    a = L.subgroup(Z2, (2, 0))
    e, b0 = L.split_complement(a, Z2.whole())
    assert e == L.subgroup(Z2, (1, 0))
    assert b0.rank == 1 and L.join(e, b0) == Z2.whole()
    p = L.LatticeGroup.from_invariants(1, (4,))
    e, b0 = L.split_complement(p.zero(), p.whole())
    assert e.as_group().invariant_factors() == (4,) and e.rank == 0
    assert b0.rank == 1 and L.is_torsion_free(b0)


@settings(max_examples=80, deadline=None)
@given(st.lists(vec(3, -3, 3), min_size=1, max_size=3), st.lists(vec(3, -3, 3), max_size=2))
def test_complement_postconditions(a_gens, extra):
    a = L.canonicalize(a_gens, Z3)
    b = L.canonicalize(a_gens + extra, Z3)
    e, b0 = L.split_complement(a, b)
    assert L.index(a, e) != L.INFINITE
    assert L.intersect(e, b0) == Z3.zero()
    assert L.join(e, b0) == b


# --- sandwich equivalence ---------------------------------------------------------


def test_sandwich_equivalent_examples():
    a = L.subgroup(Z3, (2, 0, 0))
    assert L.sandwich_equivalent(a, a, a)
    assert L.sandwich_equivalent(a, L.subgroup(Z3, (2, 0, 0), (0, 1, 0)), L.subgroup(Z3, (2, 0, 0), (0, 0, 1)))
    a2 = L.subgroup(Z2, (2, 0))
    assert not L.sandwich_equivalent(a2, a2, L.subgroup(Z2, (1, 0)))


def test_count_sandwich_classes_small_cases():
    z1 = L.LatticeGroup.free(1)
    assert L.count_sandwich_classes(Z2.whole(), Z2).class_count == 1
    assert L.count_sandwich_classes(z1.zero(), z1).class_count == 2
    rep = L.count_sandwich_classes(L.subgroup(Z2, (2, 0)), Z2)
    assert rep.class_count == 4
    assert len(rep.root_closure_options) == 2 and list(rep.complement_rank_range) == [0, 1]


def test_torsion_ambient_closures_can_differ_but_be_equivalent():
    # A = 0 in (Z/2)^2: the three order-2 subgroups are distinct closures
    # that are all isomorphic over A
    p = L.LatticeGroup.from_invariants(0, (2, 2))
    rep = L.count_sandwich_classes(p.zero(), p)
    assert len(rep.root_closure_options) == 5
    assert rep.class_count == 3


def test_witnesses_are_pairwise_inequivalent():
    p = L.LatticeGroup.from_invariants(1, (4,))
    a = L.subgroup(p, (2, 0))
    rep = L.count_sandwich_classes(a, p)
    for b1, b2 in itertools.combinations(rep.witnesses, 2):
        assert not L.sandwich_equivalent(a, b1, b2)
