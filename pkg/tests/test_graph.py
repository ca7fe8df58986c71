"""Staged-graph structure: stage arithmetic, adjacency, validation,
principality, finite slices, and path counting."""

import pytest

from stagedpaths.errors import InvalidGraph, NotPrincipal, UnknownVertex
from stagedpaths.graph import (
    BlockVertex,
    CrossEdge,
    PathCounter,
    RayEdge,
    RayVertex,
    StagedGraph,
    StageBlock,
    WithinEdge,
    WithinSpec,
    incoming_edges,
    is_principal,
    outgoing_edges,
    realize_slice,
    require_principal,
    validate_graph,
)


def test_stage_arithmetic_period_one(ladder2):
    g = ladder2.graph
    assert g.period == 1
    assert g.min_stage == 1
    assert g.block_at(1).name == "A"
    assert g.block_at(7) is g.block_at(1)
    with pytest.raises(UnknownVertex):
        g.block_at(0)


def test_stage_arithmetic_period_two(alt23):
    g = alt23.graph
    assert g.period == 2
    assert g.block_at(1).name == g.block_at(3).name
    assert g.block_at(1).name != g.block_at(2).name


def test_edge_endpoints(ladder2):
    g = ladder2.graph
    f1 = WithinEdge(4, "f1")
    assert g.edge_range(f1) == BlockVertex(4, "v")
    assert g.edge_source(f1) == BlockVertex(4, "w")
    spine = CrossEdge(4, "spine")
    assert g.edge_range(spine) == BlockVertex(3, "v")
    assert g.edge_source(spine) == BlockVertex(4, "v")
    re = RayEdge(4, "t", 1)
    assert g.edge_range(re) == BlockVertex(4, "w")
    assert g.edge_source(re) == RayVertex(4, "t", 1)


def test_adjacency_block_vertex(ladder2):
    g = ladder2.graph
    into_v = set(incoming_edges(g, BlockVertex(3, "v")))
    assert into_v == {WithinEdge(3, "f1"), WithinEdge(3, "f2"),
                      CrossEdge(4, "spine")}
    into_w = set(incoming_edges(g, BlockVertex(3, "w")))
    assert into_w == {RayEdge(3, "t", 1)}
    out_w = set(outgoing_edges(g, BlockVertex(3, "w")))
    assert out_w == {WithinEdge(3, "f1"), WithinEdge(3, "f2")}


def test_adjacency_ray_vertex(ladder2):
    g = ladder2.graph
    v = RayVertex(3, "t", 5)
    assert incoming_edges(g, v) == [RayEdge(3, "t", 6)]
    assert outgoing_edges(g, v) == [RayEdge(3, "t", 5)]


def test_validate_good_graphs(ladder2, alt23, fork, loop1, exp2):
    for doc in (ladder2, alt23, fork, loop1, exp2):
        assert validate_graph(doc.graph) == []


def test_validate_reports_dangling_edge():
    block = StageBlock("A", ("v",), (WithinSpec("e", "v", "ghost"),), ())
    g = StagedGraph("bad", (), (block,), ())
    problems = validate_graph(g)
    assert any("undeclared vertex 'ghost'" in p for p in problems)
    with pytest.raises(InvalidGraph):
        is_principal(g)


def test_principality(ladder2, alt23, fork, exp2):
    for doc in (ladder2, alt23, fork, exp2):
        assert is_principal(doc.graph).principal


def test_principality_cycle_certificate(loop1):
    rep = is_principal(loop1.graph)
    assert not rep.principal
    assert rep.certificate == (WithinEdge(1, "e"),)
    with pytest.raises(NotPrincipal):
        require_principal(loop1.graph)


def test_realize_slice_bounds(ladder2):
    g = ladder2.graph
    slc = realize_slice(g, 4, 3)
    assert BlockVertex(4, "v") in slc.vertices
    assert RayVertex(2, "t", 3) in slc.vertices
    assert RayVertex(2, "t", 4) not in slc.vertices
    assert CrossEdge(4, "spine") in slc.edges
    assert CrossEdge(5, "spine") not in slc.edges
    for e in slc.edges:
        assert slc.ranges[e] == g.edge_range(e)
        assert slc.sources[e] == g.edge_source(e)


def test_slice_incoming_matches_graph(ladder2):
    g = ladder2.graph
    slc = realize_slice(g, 4, 3)
    v = BlockVertex(2, "v")
    expected = {e for e in incoming_edges(g, v) if e in set(slc.edges)}
    assert set(slc.incoming(v)) == expected


def test_path_counter_ladder(ladder2):
    g = ladder2.graph
    counter = PathCounter(g)
    u, v = BlockVertex(1, "v"), BlockVertex(3, "w")
    assert counter.count(u, u) == 1
    assert counter.count(u, v) == 2
    assert counter.count(v, u) == 0  # counting is direction-sensitive
    paths = counter.enumerate(u, v)
    assert len(paths) == 2
    for q in paths:
        assert g.edge_range(q[0]) == u and g.edge_source(q[-1]) == v


def test_path_counter_alternating(alt23):
    g = alt23.graph
    counter = PathCounter(g)
    # one descending route per within edge of the target's block
    assert counter.count(BlockVertex(1, "v"), BlockVertex(3, "w")) == \
        len(g.block_at(3).within_edges)


def test_path_counter_exponential(exp2):
    g = exp2.graph
    counter = PathCounter(g)
    u0 = BlockVertex(1, "v")
    # two parallel self-descending edges at w: count(v@1, w@n) = 2^n - 1
    c = [counter.count(u0, BlockVertex(n, "w")) for n in range(2, 7)]
    assert c == [3, 7, 15, 31, 63]


def test_path_counter_refuses_cycle(loop1):
    counter = PathCounter(loop1.graph)
    with pytest.raises(NotPrincipal):
        counter.count(BlockVertex(1, "v"), BlockVertex(3, "v"))
