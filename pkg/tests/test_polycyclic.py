from hypothesis import given, settings, strategies as st

from _criteria import _minv, _mm, _umat, commutator_closure_index
from splitcalc import polycyclic as pc

heis = st.builds(pc.HeisElement, st.integers(-6, 6), st.integers(-6, 6), st.integers(-6, 6))


def as_matrix(g):
    return _umat(g.x, g.y, g.z)


@settings(max_examples=200)
@given(heis, heis)
def test_multiplication_is_matrix_multiplication(g, h):
    assert as_matrix(g * h) == _mm(as_matrix(g), as_matrix(h))
    assert as_matrix(g.inverse()) == _minv(as_matrix(g))


@settings(max_examples=100)
@given(heis, st.integers(-5, 5))
def test_power_closed_form(g, k):
    expect = pc.IDENTITY
    step = g if k >= 0 else g.inverse()
    for _ in range(abs(k)):
        expect = expect * step
    assert g ** k == expect


def test_commutator_examples():
    assert pc.heis_mul(pc.IDENTITY, pc.A) == pc.A
    assert pc.heis_comm(pc.A, pc.B) == pc.C
    assert pc.heis_comm(pc.A ** 3, pc.B ** 3) == pc.HeisElement(0, 0, 9)


def test_semidirect_product_conventions():
    t, a, b = pc.SDP_T, pc.SDP_A, pc.SDP_B
    assert t * a * t.inverse() == a * b
    assert t * b * t.inverse() == b
    for n in range(-3, 4):
        assert pc.conjugate_by_t(a, n) == a * b ** n


def test_hn_membership():
    assert pc.hn_membership(3, pc.IDENTITY)
    assert pc.hn_membership(2, pc.HeisElement(2, 0, 5))
    assert not pc.hn_membership(2, pc.HeisElement(1, 0, 0))
    assert all(pc.hn_membership(n, pc.C) for n in range(1, 10))


def test_hn_membership_against_word_closure():
    gens = [pc.A ** 2, pc.B ** 2, pc.C]
    ball = {pc.IDENTITY}
    for _ in range(6):
        ball |= {g * s for g in ball for s in gens + [x.inverse() for x in gens]}
    for g in ball:
        assert pc.hn_membership(2, g)
    assert pc.HeisElement(2, 0, 5) in ball


def test_hn_index_values_and_oracle():
    assert [pc.hn_center_derived_index(n) for n in (1, 2, 3, 5)] == [1, 4, 9, 25]
    assert commutator_closure_index(2) == 4
    assert commutator_closure_index(5) == 25


@settings(max_examples=150, deadline=None)
@given(st.lists(heis, min_size=1, max_size=3), st.lists(st.tuples(st.integers(0, 2), st.integers(-3, 3)),
                                                        max_size=6))
def test_express_finds_words_for_members(gens, word):
    word = [(i % len(gens), e) for i, e in word]
    h = pc.evaluate(gens, word)
    found = pc.express(gens, h)
    assert found is not None and pc.evaluate(gens, found) == h


def test_express_rejects_non_members():
    assert pc.express([pc.A ** 2, pc.B], pc.A) is None
    # <a, b^2> meets the centre in <c^2>
    assert pc.express([pc.A, pc.B ** 2], pc.C) is None
    assert pc.central_index([pc.A, pc.B ** 2]) == 2


@settings(max_examples=100)
@given(st.lists(heis, min_size=1, max_size=3), heis)
def test_conjugator_solves_the_equations(gs, k):
    hs = [g.conjugate_by(k) for g in gs]
    found = pc.conjugator(gs, hs)
    assert found is not None
    assert [g.conjugate_by(found) for g in gs] == hs
    assert all(pc.are_conjugate(g, h) for g, h in zip(gs, hs))


def test_subgroup_descriptions():
    h3 = pc.HeisSubgroupDesc.hn(3)
    assert h3.contains(pc.HeisElement(3, -6, 1)) and not h3.contains(pc.HeisElement(1, 0, 0))
    assert pc.HeisSubgroupDesc.hn(1) == pc.HeisSubgroupDesc.full()
    assert pc.HeisSubgroupDesc.derived(2).contains(pc.C ** 8)
    assert not pc.HeisSubgroupDesc.derived(2).contains(pc.C ** 2)
    cyc = pc.HeisSubgroupDesc.cyclic(pc.A * pc.B)
    assert cyc.contains((pc.A * pc.B) ** -4) and not cyc.contains(pc.A)
