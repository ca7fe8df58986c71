"""Graph description language: parsing, resolution, error reporting, and the
canonical pretty-printer."""

import pytest

from stagedpaths import fixtures
from stagedpaths.dsl import parse_document, parse_graph_dsl, render
from stagedpaths.errors import (
    DslSyntaxError,
    DuplicateIdError,
    ResolutionError,
)
from stagedpaths.graph import CrossEdge, WithinEdge
from stagedpaths.paths import PeriodicDescent, RayTail, Step

MINI = """
graph mini {
  repeat {
    block A {
      vertex v, w;
      edge f range v source w;
      ray t attach w;
    }
  }
  cross A -> A {
    edge s range v source v;
  }
}
path z { prefix ; tail descent [s] from stage 1 ; }
family xs { descend z to n ; pivot f ; tail ray t at stage n ; min 1 ; }
"""


def test_parse_document_shape():
    doc = parse_document(MINI)
    g = doc.graph
    assert g.name == "mini"
    assert g.period == 1
    assert g.repeat[0].vertices == ("v", "w")
    assert list(doc.paths) == ["z"]
    assert list(doc.families) == ["xs"]
    assert doc.paths["z"].tail == PeriodicDescent(1, (Step("cross", "s"),))
    assert doc.families["xs"].pivot == ("f",)


def test_parse_render_identity():
    for name in fixtures.FIXTURE_NAMES:
        g = fixtures.load(name).graph
        assert parse_graph_dsl(render(g)) == g


def test_comments_and_whitespace():
    text = "# leading comment\n" + MINI.replace(
        "vertex v, w;", "vertex v, w;  # inline comment")
    doc = parse_document(text)
    assert doc.graph == parse_document(MINI).graph


def test_syntax_error_has_position():
    with pytest.raises(DslSyntaxError) as info:
        parse_document(MINI.replace("repeat {", "repeet {"))
    assert info.value.line == 3
    with pytest.raises(DslSyntaxError):
        parse_document("graph g {")  # truncated input


def test_duplicate_ids_rejected():
    with pytest.raises(DuplicateIdError):
        parse_document(MINI.replace(
            "edge f range v source w;",
            "edge f range v source w; edge f range v source w;"))
    with pytest.raises(DuplicateIdError):
        parse_document(MINI + "path z { prefix ; tail ray t at stage 1 ; }")


def test_unresolved_names_rejected():
    with pytest.raises(ResolutionError):
        parse_document(MINI.replace("source w;", "source ghost;"))
    with pytest.raises(ResolutionError):
        parse_document(MINI.replace("pivot f ;", "pivot nosuch ;"))
    with pytest.raises(DslSyntaxError):
        parse_document(MINI.replace("descend z to n", "descend missing to n"))


def test_edge_reference_resolution():
    doc = parse_document(MINI.replace(
        "path z { prefix ; tail descent [s] from stage 1 ; }",
        "path z { prefix s@2 f@2 ; tail ray t at stage 2 ; }")
        .replace("family xs { descend z to n ; pivot f ; "
                 "tail ray t at stage n ; min 1 ; }", ""))
    z = doc.paths["z"]
    # canonical form keeps the genuinely deviating prefix edges
    assert z.prefix == (CrossEdge(2, "s"), WithinEdge(2, "f"))
    assert z.tail == RayTail(2, "t", 0)


def test_stage_n_only_in_families():
    with pytest.raises(DslSyntaxError):
        parse_document(MINI.replace(
            "path z { prefix ; tail descent [s] from stage 1 ; }",
            "path z { prefix ; tail ray t at stage n ; }"))


def test_fixture_documents_parse(ladder2, alt23, fork, loop1, exp2):
    assert ladder2.graph.name == "ladder2"
    assert alt23.graph.period == 2
    assert sorted(fork.paths) == ["x", "y"]
    assert loop1.families == {}
    assert exp2.graph.period == 1


def test_ladderk_generator():
    doc = fixtures.ladderk(4)
    block = doc.graph.repeat[0]
    assert [w.edge_id for w in block.within_edges] == ["f1", "f2", "f3", "f4"]
    assert "xs" in doc.families
