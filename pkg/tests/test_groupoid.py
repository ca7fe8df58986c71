"""Groupoid elements, basic/compact sets, the counting Haar system, and
certified orbit counting."""

import pytest

from stagedpaths.errors import NotComposable, NotEquivalent
from stagedpaths.graph import CrossEdge, WithinEdge
from stagedpaths.groupoid import (
    AT_LEAST,
    EXACT,
    INFINITE,
    BasicSet,
    Budget,
    basic_contains,
    compose,
    count_at_source,
    elements_at_source,
    invert,
    invert_set,
    make_basic,
    make_compact,
    make_element,
    orbit_count,
    translate_set,
    unit,
)
from stagedpaths.paths import (
    PeriodicDescent,
    RayTail,
    Step,
    cylinder,
    make_finite_path,
    make_infinite_path,
    materialize,
    prefix_path,
    shift,
)


def deviator(g, n, rung):
    """The path following the spine down to stage n, then one rung edge, then
    the ray at stage n."""
    prefix = [CrossEdge(s, "spine") for s in range(2, n + 1)] + \
        [WithinEdge(n, rung)]
    return make_infinite_path(g, prefix, RayTail(n, "t", 0))


def ray_path(g, n):
    return make_infinite_path(g, [], RayTail(n, "t", 0))


def test_groupoid_laws(ladder2):
    g = ladder2.graph
    x = deviator(g, 3, "f1")
    y = deviator(g, 3, "f2")
    p = ray_path(g, 3)
    a = make_element(g, x, y)
    b = make_element(g, y, p)
    ab = compose(a, b)
    assert ab.x == x and ab.y == p and ab.k == a.k + b.k
    assert compose(a, invert(a)) == unit(x)
    assert compose(invert(a), a) == unit(y)
    assert invert(invert(a)) == a
    with pytest.raises(NotComposable):
        compose(a, a)


def test_make_element_requires_equivalence(ladder2, fork):
    with pytest.raises(NotEquivalent):
        make_element(fork.graph, fork.paths["x"], fork.paths["y"])
    g = ladder2.graph
    with pytest.raises(NotEquivalent):
        # rays at different stages are genuinely different tails
        make_element(g, deviator(g, 3, "f1"), deviator(g, 4, "f1"))


def test_basic_set_membership(ladder2):
    g = ladder2.graph
    x = deviator(g, 3, "f1")
    y = deviator(g, 3, "f2")
    B = make_basic(g, prefix_path(g, x, 3), prefix_path(g, y, 3))
    elt = make_element(g, x, y)
    assert elt.k == 0
    assert basic_contains(g, B, elt)
    assert not basic_contains(g, B, invert(elt))
    assert not basic_contains(g, B, unit(x))
    with pytest.raises(NotComposable):
        make_basic(g, prefix_path(g, x, 3),
                   make_finite_path(g, [WithinEdge(5, "f1")]))


def fiber_set(g):
    """Two basic sets whose source side is the bare ray path at stage 3."""
    p = ray_path(g, 3)
    beta = prefix_path(g, p, 0)
    parts = [make_basic(g, prefix_path(g, deviator(g, 3, rung), 3), beta)
             for rung in ("f1", "f2")]
    return p, make_compact(parts)


def test_haar_counts_at_source(ladder2):
    g = ladder2.graph
    p, K = fiber_set(g)
    assert count_at_source(g, p, K) == 2
    assert count_at_source(g, deviator(g, 3, "f1"), K) == 0
    elts = elements_at_source(g, p, K)
    assert len(elts) == 2 and all(e.y == p for e in elts)


def test_haar_translation_bijection(ladder2):
    """|K gamma| = lambda_{r(gamma)}(K): right translation by a fixed element
    is a bijection between the fibers."""
    g = ladder2.graph
    p, K = fiber_set(g)
    gam = make_element(g, p, deviator(g, 3, "f2"))
    translated = translate_set(g, K, gam)
    assert len(translated) == count_at_source(g, gam.x, K)
    assert all(e.y == gam.y for e in translated)


def test_invert_set_roundtrip(ladder2):
    g = ladder2.graph
    p, K = fiber_set(g)
    assert invert_set(invert_set(K)) == K
    assert count_at_source(g, deviator(g, 3, "f1"), invert_set(K)) == 1
    assert count_at_source(g, p, invert_set(K)) == 0


def test_basic_set_bisection(ladder2):
    """A basic set holds at most one element over each source fiber."""
    g = ladder2.graph
    p, K = fiber_set(g)
    for B in K.parts:
        for x in (p, deviator(g, 3, "f1"), deviator(g, 3, "f2")):
            assert count_at_source(g, x, make_compact([B])) in (0, 1)


def test_orbit_count_ladder_exact(ladder2):
    g = ladder2.graph
    z = ladder2.paths["z"]
    r = orbit_count(g, z, cylinder(g, z, 3))
    assert r.kind == EXACT and r.count == 1 and r.is_exact
    x6 = materialize(g, ladder2.families["xs"], 6)
    r = orbit_count(g, x6, cylinder(g, z, 3))
    assert (r.kind, r.count) == (EXACT, 2)


def test_orbit_count_shifted_source(ladder2):
    g = ladder2.graph
    z = ladder2.paths["z"]
    r1 = orbit_count(g, shift(g, z, 4), cylinder(g, z, 3))
    assert (r1.kind, r1.count) == (EXACT, 1)


def test_orbit_count_monotone_in_depth(alt23):
    g = alt23.graph
    z = alt23.paths["z"]
    x8 = materialize(g, alt23.families["xs"], 8)
    results = [orbit_count(g, x8, cylinder(g, z, m)) for m in range(1, 6)]
    counts = [r.count for r in results]
    assert counts == sorted(counts, reverse=True)
    assert all(r.is_exact for r in results)


def test_orbit_count_infinite(exp2):
    g = exp2.graph
    x = make_infinite_path(g, [], PeriodicDescent(1, (Step("cross", "g1"),)))
    r = orbit_count(g, x, cylinder(g, x, 2))
    assert r.kind == INFINITE
    assert not r.is_exact


def test_budget_defaults():
    assert AT_LEAST == "at-least"
    b = Budget()
    assert b.periods == 3 and b.length == 64
