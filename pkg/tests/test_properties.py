"""Property-based tests over randomly generated staged graphs and paths."""

from hypothesis import given, settings, strategies as st

from stagedpaths.analysis import (
    PROVED_PERIODIC,
    consistency_audit,
    construct_witnesses,
    lower_strength,
    measure_profile,
    multiplicity_bounds,
    upper_strength,
    verify_witnesses,
)
from stagedpaths.groupoid import orbit_count
from stagedpaths.paths import (
    concat_infinite,
    cylinder,
    in_cylinder,
    materialize,
    prefix_path,
    shift,
    shift_lag,
)
from stagedpaths.randgen import random_document

SEEDS = st.integers(min_value=0, max_value=10 ** 9)


@st.composite
def doc_and_member(draw):
    doc = random_document(seed=draw(SEEDS))
    n = draw(st.integers(min_value=doc.graph.period + 1, max_value=10))
    return doc, n


@given(doc_and_member(), st.integers(min_value=0, max_value=6))
@settings(max_examples=40, deadline=None)
def test_canonical_split_roundtrip(dm, m):
    doc, n = dm
    g = doc.graph
    x = materialize(g, doc.families["xs"], n)
    rebuilt = concat_infinite(g, prefix_path(g, x, m), shift(g, x, m))
    assert rebuilt == x


@given(doc_and_member())
@settings(max_examples=40, deadline=None)
def test_shift_lag_antisymmetry_and_transitivity(dm):
    doc, n = dm
    g = doc.graph
    z = doc.paths["z"]
    x, y, w = z, shift(g, z, 1), shift(g, z, n)
    assert shift_lag(g, x, y) == -shift_lag(g, y, x)
    assert shift_lag(g, x, w) == shift_lag(g, x, y) + shift_lag(g, y, w)
    assert shift_lag(g, x, x) == 0


@given(doc_and_member(), st.integers(min_value=1, max_value=5))
@settings(max_examples=40, deadline=None)
def test_cylinders_nest(dm, m):
    doc, n = dm
    g = doc.graph
    z = doc.paths["z"]
    x = materialize(g, doc.families["xs"], n)
    # membership in a deeper cylinder implies membership in every shallower one
    if in_cylinder(g, x, cylinder(g, z, m + 1)):
        assert in_cylinder(g, x, cylinder(g, z, m))
    assert in_cylinder(g, z, cylinder(g, z, m + 1))


@given(doc_and_member())
@settings(max_examples=30, deadline=None)
def test_orbit_count_antitone_in_depth(dm):
    doc, n = dm
    g = doc.graph
    z = doc.paths["z"]
    x = materialize(g, doc.families["xs"], n)
    results = [orbit_count(g, x, cylinder(g, z, m)) for m in range(1, 5)]
    assert all(r.is_exact for r in results)
    counts = [r.count for r in results]
    assert counts == sorted(counts, reverse=True)


@given(SEEDS)
@settings(max_examples=30, deadline=None)
def test_profile_counts_stabilize(seed):
    doc = random_document(seed=seed)
    g = doc.graph
    profile = measure_profile(g, doc.families["xs"], doc.paths["z"], 3)
    p = g.period
    lo, hi = profile.window
    for row in profile.rows:
        assert row.stabilization == PROVED_PERIODIC
        # past the proved threshold the counts repeat with period p
        for i, n in enumerate(range(lo, hi + 1)):
            if n >= row.threshold and n + p <= hi:
                assert row.counts[i] == row.counts[i + p]
            if n >= row.threshold:
                assert row.counts[i] == row.residue_values[n % p]


@given(SEEDS)
@settings(max_examples=30, deadline=None)
def test_multiplicity_ordering(seed):
    doc = random_document(seed=seed)
    mb = multiplicity_bounds(doc.graph, doc.families["xs"], doc.paths["z"], 3)
    assert mb.ml_lower <= mb.ml_upper <= mb.mu_upper
    assert mb.ml_lower <= mb.mu_lower <= mb.mu_upper


@given(SEEDS, st.integers(min_value=2, max_value=5))
@settings(max_examples=25, deadline=None)
def test_strength_antitone_in_ladder_depth(seed, M):
    doc = random_document(seed=seed)
    g = doc.graph
    F, z = doc.families["xs"], doc.paths["z"]
    deep = lower_strength(g, F, z, M).k_certified
    shallow = lower_strength(g, F, z, M - 1).k_certified
    assert deep <= shallow


@given(SEEDS)
@settings(max_examples=25, deadline=None)
def test_upper_subsequence_attains_limsup(seed):
    doc = random_document(seed=seed)
    g = doc.graph
    up = upper_strength(g, doc.families["xs"], doc.paths["z"], 3)
    assert up.subsequence
    profile = up.profile
    k = up.k_certified
    for rho in up.subsequence:
        assert all(r.residue_values[rho] > (k - 1) * r.lambda_z
                   for r in profile.rows)
    assert up.k_certified >= lower_strength(
        g, doc.families["xs"], doc.paths["z"], 3).k_certified


@given(SEEDS)
@settings(max_examples=12, deadline=None)
def test_witnesses_verify_on_random_graphs(seed):
    doc = random_document(seed=seed)
    g = doc.graph
    F, z = doc.families["xs"], doc.paths["z"]
    k = lower_strength(g, F, z, 3).k_certified
    assert k >= 1
    ws = construct_witnesses(g, F, z, k, 3)
    assert len(ws) == k
    verdict = verify_witnesses(g, ws, F, z, 3)
    assert verdict.passed, verdict.evidence


@given(SEEDS)
@settings(max_examples=12, deadline=None)
def test_audit_agreement_on_random_graphs(seed):
    doc = random_document(seed=seed)
    g = doc.graph
    F, z = doc.families["xs"], doc.paths["z"]
    k = lower_strength(g, F, z, 3).k_certified
    for probe_k in (k, k + 1):
        out = consistency_audit(g, F, z, probe_k, 3)
        assert out["agreement"], (g.name, probe_k, out)
