import pytest

from _criteria import CORPUS, corpus_files
from splitcalc import gogfile
from splitcalc.families import make_theta_graph
from splitcalc.gog import TriState, equivalent

SMALL = """gog/1
[group Z]
kind = abelian
rank = 1
[vertices]
v = Z
w = Z
[edge e]
origin = v
terminus = w
group = Z
to_origin = (2)
to_terminus = (3)
"""


@pytest.mark.parametrize("path", corpus_files(), ids=lambda p: p.name)
def test_serialize_is_canonical(path):
    doc = gogfile.parse(path.read_text(encoding="utf-8"))
    once = gogfile.serialize(doc)
    assert gogfile.serialize(gogfile.parse(once)) == once
    assert gogfile.parse(once) == doc


@pytest.mark.parametrize("path", corpus_files(), ids=lambda p: p.name)
def test_graph_round_trip(path):
    doc = gogfile.parse(path.read_text(encoding="utf-8"))
    g = gogfile.to_graph(doc)
    again = gogfile.to_graph(gogfile.parse(gogfile.serialize(gogfile.from_graph(g))))
    assert again == g


def test_theta0_file_is_the_theta0_graph():
    g = gogfile.to_graph(gogfile.load(str(CORPUS / "theta0.gog")))
    assert equivalent(g, make_theta_graph(0)) is TriState.YES


def test_whitespace_and_comments_do_not_matter():
    messy = SMALL.replace("rank = 1", "rank=1   ").replace("[vertices]", "# note\n\n[vertices]")
    assert gogfile.serialize(gogfile.parse(messy)) == gogfile.serialize(gogfile.parse(SMALL))


def test_unknown_sections_and_keys():
    extra = SMALL + "[layout]\nx = 1\n"
    with pytest.raises(gogfile.ParseError) as info:
        gogfile.parse(extra)
    assert info.value.line == 14
    assert "[layout]" in gogfile.serialize(gogfile.parse(extra, strict=False))
    odd = SMALL.replace("rank = 1", "rank = 1\ncolour = red")
    with pytest.raises(gogfile.ParseError):
        gogfile.parse(odd)
    gogfile.parse(odd, strict=False)


@pytest.mark.parametrize("text,line", [
    ("", 1),
    ("gog/2\n", 1),
    (SMALL + "[edge e]\n", 14),
    (SMALL.replace("w = Z", "w Z"), 7),
    (SMALL.replace("[vertices]", "[vertices"), 5),
])
def test_syntax_errors_carry_positions(text, line):
    with pytest.raises(gogfile.ParseError) as info:
        gogfile.parse(text)
    assert info.value.line == line and info.value.column >= 1


def test_bad_word_reports_line_and_column():
    text = SMALL.replace("[group Z]", "[group P]\nkind = presented\ngenerators = x\nrelations = x^\n[group Z]")
    doc = gogfile.parse(text)
    with pytest.raises(gogfile.ParseError) as info:
        gogfile.to_graph(doc)
    assert (info.value.line, info.value.column) == (5, 14)  # the dangling caret


def test_semantic_errors():
    with pytest.raises(gogfile.ParseError):
        gogfile.to_graph(gogfile.parse(SMALL.replace("w = Z", "w = Q")))
    with pytest.raises(gogfile.ParseError):
        gogfile.to_graph(gogfile.parse(SMALL.replace("to_terminus = (3)", "to_terminus = (3,1)")))
