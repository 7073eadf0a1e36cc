import pytest
from hypothesis import given, settings, strategies as st

from splitcalc import words as W

letters = st.integers(1, 3).flatmap(lambda g: st.sampled_from([g, -g]))
word = st.lists(letters, max_size=12).map(tuple)
NAMES = ("x", "y", "z")


@given(word)
def test_reduce_is_idempotent_and_free(w):
    r = W.reduce(w)
    assert W.reduce(r) == r
    assert all(a != -b for a, b in zip(r, r[1:]))


@given(word, word)
def test_inverse_cancels(u, v):
    assert W.mul(u, W.inverse(u)) == ()
    assert W.inverse(W.mul(u, v)) == W.mul(W.inverse(v), W.inverse(u))


@settings(max_examples=100)
@given(word, st.integers(-4, 4))
def test_power_and_exponent_sums(w, k):
    assert W.exponent_sums(W.power(w, k), 3) == [k * s for s in W.exponent_sums(w, 3)]


@given(word, word)
def test_conjugates_are_detected(u, g):
    assert W.are_conjugate(u, W.mul(g, u, W.inverse(g)))


def test_not_conjugate():
    assert not W.are_conjugate(W.gen(0, 2), W.gen(0, 3))
    assert not W.are_conjugate(W.commutator(W.gen(0), W.gen(1)), ())


@given(word)
def test_format_parse_round_trip(w):
    w = W.reduce(w)
    assert W.parse_word(W.format_word(w, NAMES), NAMES) == w


def test_parse_examples():
    assert W.parse_word("x^2 y^-1", NAMES) == (1, 1, -2)
    assert W.parse_word("", NAMES) == ()
    assert W.parse_word("x x^-1 z", NAMES) == (3,)


@pytest.mark.parametrize("text,column", [("x^", 2), ("x^2 y^", 6), ("w", 1), ("x ^2", 3), ("x^2 !", 5)])
def test_parse_errors_carry_column(text, column):
    with pytest.raises(W.WordSyntaxError) as info:
        W.parse_word(text, NAMES)
    assert info.value.column == column


def test_substitute_and_relabel():
    comm = W.commutator(W.gen(0), W.gen(1))
    assert W.substitute(comm, [W.gen(1), W.gen(0)]) == W.inverse(comm)
    assert W.relabel(W.gen(0, 2), [2]) == (3, 3)
