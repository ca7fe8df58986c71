"""Brute-force oracle: truncation-based orbit counting, lag recovery, and
element enumeration, cross-checked against the symbolic engine."""

import pytest

from stagedpaths.errors import SliceTooSmall
from stagedpaths.graph import realize_slice
from stagedpaths.groupoid import make_element, orbit_count, path_key
from stagedpaths.oracle import (
    brute_element_enum,
    brute_orbit_count,
    brute_shift_lag,
    truncate,
)
from stagedpaths.paths import cylinder, materialize, shift, shift_lag


def test_truncate(ladder2):
    g = ladder2.graph
    z = ladder2.paths["z"]
    t = truncate(g, z, 5)
    assert len(t.edges) == 5


def test_brute_matches_engine_on_ladder(ladder2):
    g = ladder2.graph
    z = ladder2.paths["z"]
    F = ladder2.families["xs"]
    slc = realize_slice(g, 18, 18)
    for m in range(1, 5):
        Z = cylinder(g, z, m)
        for n in range(1, 8):
            want = orbit_count(g, materialize(g, F, n), Z).count
            got = brute_orbit_count(g, slc, materialize(g, F, n), Z, 16)
            assert got == want, (m, n)


def test_brute_matches_engine_on_alternating(alt23):
    g = alt23.graph
    z = alt23.paths["z"]
    F = alt23.families["xs"]
    slc = realize_slice(g, 18, 18)
    for m in range(1, 4):
        Z = cylinder(g, z, m)
        for n in range(1, 8):
            want = orbit_count(g, materialize(g, F, n), Z).count
            got = brute_orbit_count(g, slc, materialize(g, F, n), Z, 16)
            assert got == want, (m, n)


def test_brute_monotone_in_truncation_length(ladder2):
    g = ladder2.graph
    z = ladder2.paths["z"]
    F = ladder2.families["xs"]
    slc = realize_slice(g, 30, 30)
    x = materialize(g, F, 4)
    Z = cylinder(g, z, 2)
    counts = [brute_orbit_count(g, slc, x, Z, L) for L in (12, 16, 20, 24)]
    assert counts == sorted(counts)


def test_brute_shift_lag_agrees(ladder2):
    g = ladder2.graph
    z = ladder2.paths["z"]
    F = ladder2.families["xs"]
    slc = realize_slice(g, 30, 30)
    pairs = [(z, z), (z, shift(g, z, 3)),
             (materialize(g, F, 3), materialize(g, F, 3)),
             (z, materialize(g, F, 4))]
    for x, y in pairs:
        assert brute_shift_lag(g, slc, x, y, 16) == shift_lag(g, x, y), (x, y)


def test_brute_shift_lag_non_equivalent(fork):
    g = fork.graph
    slc = realize_slice(g, 30, 30)
    assert brute_shift_lag(g, slc, fork.paths["x"], fork.paths["y"], 16) is None
    assert shift_lag(g, fork.paths["x"], fork.paths["y"]) is None


def test_slice_too_small(ladder2):
    g = ladder2.graph
    z = ladder2.paths["z"]
    slc = realize_slice(g, 4, 4)
    with pytest.raises(SliceTooSmall):
        brute_orbit_count(g, slc, z, cylinder(g, z, 2), 16)


def test_brute_element_enum(ladder2):
    g = ladder2.graph
    z = ladder2.paths["z"]
    F = ladder2.families["xs"]
    slc = realize_slice(g, 30, 30)
    x5 = materialize(g, F, 5)
    W = cylinder(g, z, 2)
    elts = brute_element_enum(g, slc, x5, W, 16)
    assert len(elts) == brute_orbit_count(g, slc, x5, W, 16) == 2
    keys = set()
    for e in elts:
        assert e.y == x5
        # the recovered element agrees with symbolic construction
        assert e == make_element(g, e.x, x5)
        keys.add(path_key(e.x))
    assert len(keys) == len(elts)
