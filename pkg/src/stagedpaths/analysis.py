"""Certified strength-of-convergence and multiplicity analysis.

Two independent routes are implemented and cross-audited:

  * the measure route — lim inf / lim sup of the orbit counts c_n(W_m) =
    lambda_{x^(n)}(G^{W_m}) over a nested ladder of prefix cylinders W_m of
    the limit path, compared against lambda_z(G^{W_m}) with exact integer
    arithmetic (items (3)/(5) of the equivalence theorem, and the lim-sup
    variant for subsequences);

  * the witness route — explicit uniform-in-n families of groupoid elements
    with source x^(n), ranges converging to the limit, and pairwise quotients
    escaping every compact set.

Stabilization of the counts in n is *proved*, not eyeballed: for ray-at-n
families c_n(W_m) equals the number of finite paths from vertex_at(z, m) to
the ray attach vertex at stage n, and that quantity obeys a non-negative
linear transfer recurrence on the per-stage path-count vector.  A repeated
vector certifies eventual periodicity; a monotone strictly-growing increment
certifies divergence.  Everything else is honestly labeled empirical.
"""

import math
from dataclasses import dataclass

from .errors import (
    BoundsError,
    DenominatorNotExact,
    EmpiricalOnly,
    NonExactCount,
    NonUniformFamily,
    StrengthNotCertified,
)
from .graph import (
    BlockVertex,
    CrossEdge,
    PathCounter,
    WithinEdge,
    realize_slice,
    require_principal,
)
from .groupoid import (
    AT_LEAST,
    BasicSet,
    CompactSet,
    INFINITE,
    basic_contains,
    compose,
    invert,
    make_compact,
    make_element,
    orbit_count,
    path_key,
)
from .paths import (
    RAY_AT_N,
    FinitePath,
    RayTail,
    cylinder,
    edge_at,
    make_infinite_path,
    materialize,
    shift_lag,
    vertex_at,
    vertex_occurrences,
)

INF = math.inf

PROVED_PERIODIC = "proved-periodic"
DIVERGENT = "divergent"
EMPIRICAL = "empirical-window"

CERTIFIED = "certified"
EMPIRICAL_STATUS = "empirical"


def _show(v):
    return "infinity" if v is INF else str(v)


# ---------------------------------------------------------------------------
# Ladders and compact exhaustions
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class NeighborhoodLadder:
    """Nested decreasing prefix cylinders W_m = Z(z_1...z_m), m = 1..depth."""
    z: object
    depth: int
    cylinders: tuple


def make_ladder(g, z, M):
    if M < 1:
        raise BoundsError(f"ladder depth must be >= 1, got {M}")
    return NeighborhoodLadder(z, M, tuple(cylinder(g, z, m) for m in range(1, M + 1)))


@dataclass(frozen=True)
class CompactExhaustion:
    """Increasing compact sets K_m: all Z(alpha, beta) with |alpha|, |beta| <= m
    over edges within stage and ray depth m."""
    levels: tuple  # tuple[CompactSet]


def _finite_paths_up_to(g, slc, max_len):
    """All composable edge tuples of length <= max_len inside the slice,
    including empty paths (returned as (anchor, ()) entries)."""
    out = []
    for v in slc.vertices:
        out.append((v, ()))
    frontier = [((), v) for v in slc.vertices]
    for _ in range(max_len):
        new = []
        for edges, at in frontier:
            for e in slc.incoming(at):
                grown = edges + (e,)
                out.append((None, grown))
                new.append((grown, slc.sources[e]))
        frontier = new
    return out


def make_exhaustion(g, M):
    levels = []
    for m in range(1, M + 1):
        slc = realize_slice(g, m, m)
        by_source = {}
        for anchor, edges in _finite_paths_up_to(g, slc, m):
            if edges:
                fp = FinitePath(edges, None)
                src = g.edge_source(edges[-1])
            else:
                fp = FinitePath((), anchor)
                src = anchor
            by_source.setdefault(src, []).append(fp)
        parts = []
        for group in by_source.values():
            for a in group:
                for b in group:
                    parts.append(BasicSet(a, b))
        levels.append(make_compact(parts))
    return CompactExhaustion(tuple(levels))


# ---------------------------------------------------------------------------
# Measure profiles with proved stabilization
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ProfileRow:
    m: int
    lambda_z: int
    counts: tuple  # c_n for n in the window (ints; INF for divergent members)
    liminf: object  # int | INF
    limsup: object  # int | INF
    stabilization: str  # PROVED_PERIODIC | DIVERGENT | EMPIRICAL
    residue_values: tuple = ()  # eventual value per residue n mod p, when proved
    threshold: object = None  # first n from which the proof applies


@dataclass(frozen=True)
class MeasureProfile:
    family: str
    limit_key: tuple
    ladder_depth: int
    window: tuple
    period: int
    rows: tuple


def _attach_local(g, ray, stage):
    spec = g.block_at(stage).ray_by_name(ray)
    return None if spec is None else spec.attach_local


def _stage_vector(g, counter, u0, s):
    return tuple(counter.count(u0, BlockVertex(s, local))
                 for local in sorted(g.block_at(s).vertices))


def _ray_count(g, counter, u0, ray, n):
    local = _attach_local(g, ray, n)
    return counter.count(u0, BlockVertex(n, local))


def _certify_stabilization(g, counter, u0, ray, lo, hi):
    """Certify the eventual behavior of a_n = #paths(u0 -> attach@n).

    Returns (flag, threshold, residue_values).  The per-stage vector
    N_s = (#paths(u0 -> v@s))_v satisfies a non-negative linear recurrence
    N_{s+1} = A_rho N_s for s > stage(u0), so N_{s0} = N_{s0+p} freezes the
    sequence per residue forever, and a monotone growing increment with
    positive attach coordinate grows forever.
    """
    p = g.period
    s_lo = max(u0.stage + 1, 1)
    s_hi = max(hi, s_lo + 4 * p + 4)
    N = {s: _stage_vector(g, counter, u0, s) for s in range(s_lo, s_hi + 3 * p)}
    for s in range(s_lo, s_hi + 1):
        if N[s] == N[s + p]:
            values = tuple(_ray_count(g, counter, u0, ray, s + r) for r in range(p))
            by_residue = [None] * p
            for r in range(p):
                by_residue[(s + r) % p] = values[r]
            return PROVED_PERIODIC, s, tuple(by_residue)
    for s in range(s_lo, s_hi + 1):
        ok = True
        for t in range(s, s + p):
            d1 = tuple(b - a for a, b in zip(N[t], N[t + p]))
            d2 = tuple(b - a for a, b in zip(N[t + p], N[t + 2 * p]))
            at = sorted(g.block_at(t).vertices).index(_attach_local(g, ray, t))
            if not (all(v >= 0 for v in d1) and all(b >= a for a, b in zip(d1, d2))
                    and d1[at] > 0 and d2[at] > 0):
                ok = False
                break
        if ok:
            return DIVERGENT, s, ()
    return EMPIRICAL, None, ()


def measure_profile(g, F, z, M, window=(1, 12), budget=None):
    require_principal(g)
    lo, hi = window
    lo = max(lo, F.n_min)
    if hi < lo:
        raise BoundsError(f"empty window {window} for family starting at {F.n_min}")
    counter = PathCounter(g)
    members = {n: materialize(g, F, n) for n in range(lo, hi + 1)}
    ray_at_n = F.tail_template[0] == RAY_AT_N
    rows = []
    for m in range(1, M + 1):
        Wm = cylinder(g, z, m)
        lam = orbit_count(g, z, Wm, budget, counter)
        if not lam.is_exact:
            raise DenominatorNotExact(
                f"lambda_z(G^W_{m}) not exact: {lam.kind} >= {lam.count}")
        counts = []
        for n in range(lo, hi + 1):
            c = orbit_count(g, members[n], Wm, budget, counter)
            if c.kind == AT_LEAST:
                raise NonExactCount(
                    f"c_{n}(W_{m}) did not terminate exactly: >= {c.count}")
            counts.append(INF if c.kind == INFINITE else c.count)
        flag, threshold, residue_values = EMPIRICAL, None, ()
        if ray_at_n and all(c is not INF for c in counts):
            u0 = vertex_at(g, z, m)
            ray = F.tail_template[1]
            flag, threshold, residue_values = _certify_stabilization(
                g, counter, u0, ray, lo, hi)
            # the closed form must reproduce the orbit counts on the window
            for idx, n in enumerate(range(lo, hi + 1)):
                closed = _ray_count(g, counter, u0, ray, n)
                if closed != counts[idx]:
                    raise AssertionError(
                        f"internal disagreement at n={n}, m={m}: "
                        f"closed form {closed} vs orbit count {counts[idx]}")
        if flag == PROVED_PERIODIC:
            liminf, limsup = min(residue_values), max(residue_values)
        elif flag == DIVERGENT:
            liminf = limsup = INF
        else:
            tail = counts[-max(2 * g.period, 4):]
            liminf, limsup = min(tail), max(tail)
        rows.append(ProfileRow(m, lam.count, tuple(counts), liminf, limsup,
                               flag, residue_values, threshold))
    return MeasureProfile(F.name, path_key(z), M, (lo, hi), g.period, tuple(rows))


# ---------------------------------------------------------------------------
# Strength verdicts
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class StrengthVerdict:
    k_certified: object  # int | INF
    route: str
    profile: MeasureProfile
    status: str  # certified | empirical
    subsequence: tuple = ()  # residues mod p realizing the bound (upper route)
    subsequence_text: str = ""


def _max_k(value, lam):
    """Largest k with value > (k-1) * lam, in exact integer arithmetic."""
    if value is INF:
        return INF
    return (value - 1) // lam + 1


def _profile_status(profile):
    if all(r.stabilization in (PROVED_PERIODIC, DIVERGENT) for r in profile.rows):
        return CERTIFIED
    return EMPIRICAL_STATUS


def lower_strength(g, F, z, M, window=(1, 12), budget=None, profile=None):
    """Largest k with liminf_n c_n(W_m) > (k-1) * lambda_z(G^W_m) for every
    m <= M; certifies k-times convergence and M_L >= k (item (5))."""
    profile = profile or measure_profile(g, F, z, M, window, budget)
    k = min(_max_k(r.liminf, r.lambda_z) for r in profile.rows)
    return StrengthVerdict(k, "liminf-criterion", profile, _profile_status(profile))


def _residue_text(residues, p):
    if len(residues) == p:
        return "all n"
    parts = []
    for r in sorted(residues):
        text = f"n ≡ {r} (mod {p})"
        if p == 2:
            text += " [even n]" if r == 0 else " [odd n]"
        parts.append(text)
    return ", ".join(parts)


def upper_strength(g, F, z, M, window=(1, 12), budget=None, profile=None):
    """Largest k with limsup_n c_n(W_m) > (k-1) * lambda_z(G^W_m) for every
    m <= M, with the arithmetic subsequence (residues mod p) realizing it;
    certifies M_U >= k.  Requires orbit-level convergence (k = 1 by the
    lower criterion)."""
    from .errors import NoOrbitConvergence
    profile = profile or measure_profile(g, F, z, M, window, budget)
    base = lower_strength(g, F, z, M, window, budget, profile=profile)
    if not (base.k_certified is INF or base.k_certified >= 1):
        raise NoOrbitConvergence(
            f"family {F.name!r} does not converge to the limit's orbit "
            f"(lower criterion gives k={base.k_certified})")
    p = profile.period
    if all(r.stabilization == PROVED_PERIODIC for r in profile.rows):
        per_residue = []
        for rho in range(p):
            per_residue.append(min(
                _max_k(r.residue_values[rho], r.lambda_z) for r in profile.rows))
        k = max(per_residue)
        residues = tuple(rho for rho in range(p) if per_residue[rho] == k)
    else:
        k = min(_max_k(r.limsup, r.lambda_z) for r in profile.rows)
        residues = tuple(range(p))
    text = _residue_text(residues, p)
    return StrengthVerdict(k, "limsup-criterion", profile,
                           _profile_status(profile), residues, text)


# ---------------------------------------------------------------------------
# Multiplicity bounds
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class MultiplicityReport:
    ml_lower: object
    ml_upper: object
    mu_lower: object
    mu_upper: object
    evidence: tuple
    status: str
    profile: MeasureProfile

    @property
    def ml_pinched(self):
        return self.ml_lower == self.ml_upper

    @property
    def mu_pinched(self):
        return self.mu_lower == self.mu_upper


def _floor_ratio(value, lam):
    return INF if value is INF else value // lam


def multiplicity_bounds(g, F, z, M, window=(1, 12), budget=None):
    profile = measure_profile(g, F, z, M, window, budget)
    low = lower_strength(g, F, z, M, window, budget, profile=profile)
    up = upper_strength(g, F, z, M, window, budget, profile=profile)
    ml_upper = min(_floor_ratio(r.liminf, r.lambda_z) for r in profile.rows)
    mu_upper = min(_floor_ratio(r.limsup, r.lambda_z) for r in profile.rows)
    ml_lower, mu_lower = low.k_certified, up.k_certified
    evidence = (
        f"M_L >= {_show(ml_lower)}: liminf criterion item (5) at depths "
        f"m=1..{M}",
        f"M_L <= {_show(ml_upper)}: frequent-ratio bound "
        f"floor(liminf/lambda_z), minimized over m=1..{M}",
        f"M_U >= {_show(mu_lower)}: limsup criterion item (5) on the "
        f"subsequence {up.subsequence_text}",
        f"M_U <= {_show(mu_upper)}: eventual-ratio bound "
        f"floor(limsup/lambda_z), minimized over m=1..{M}",
    )
    report = MultiplicityReport(ml_lower, ml_upper, mu_lower, mu_upper,
                                evidence, _profile_status(profile), profile)
    assert report.ml_lower <= report.ml_upper
    assert report.mu_lower <= report.mu_upper
    assert report.ml_upper <= report.mu_upper
    assert report.ml_lower <= report.mu_lower
    return report


def infinite_multiplicity_probe(g, F, z, M, window=(1, 12), budget=None):
    """Verdict 'infinite' when c_n(W_m) -> infinity provably for all m <= M;
    'finite' with the bound from the ratio criterion; 'unknown' otherwise."""
    profile = measure_profile(g, F, z, M, window, budget)
    if all(r.stabilization == DIVERGENT for r in profile.rows):
        return {"verdict": "infinite", "reason":
                "certified monotone growth of c_n(W_m) for every m",
                "profile": profile}
    if all(r.stabilization == PROVED_PERIODIC for r in profile.rows):
        bound = min(_floor_ratio(r.liminf, r.lambda_z) for r in profile.rows)
        return {"verdict": "finite", "bound": bound, "profile": profile}
    return {"verdict": "unknown", "profile": profile}


# ---------------------------------------------------------------------------
# Witness families
# ---------------------------------------------------------------------------

def _deviation_split(g, z, y):
    """(d, rest): y agrees with z on its first d edges and rest is the
    remainder of y's prefix.  y must end in a ray tail."""
    d = 0
    while d < len(y.prefix) and edge_at(g, z, d) == y.prefix[d]:
        d += 1
    return d, y.prefix[d:]


def _descriptor(g, n, rest, tail):
    """n-relative template of a member's deviation suffix and tail."""
    items = []
    for e in rest:
        if isinstance(e, WithinEdge):
            items.append(("within", e.edge_id, n - e.stage))
        elif isinstance(e, CrossEdge):
            items.append(("cross", e.edge_id, n - e.upper_stage))
        else:
            items.append(("ray", e.ray, n - e.stage, e.depth))
    return (tuple(items), ("tail", tail.ray, n - tail.stage, tail.entry_depth))


def _instantiate_descriptor(g, desc, n):
    items, (_, ray, t_off, entry) = desc
    edges = []
    for it in items:
        if it[0] == "within":
            edges.append(WithinEdge(n - it[2], it[1]))
        elif it[0] == "cross":
            edges.append(CrossEdge(n - it[2], it[1]))
        else:
            from .graph import RayEdge
            edges.append(RayEdge(n - it[2], it[1], it[3]))
    return edges, RayTail(n - t_off, ray, entry)


@dataclass(frozen=True)
class WitnessFamily:
    """gamma_n^(i) in closed form: source x^(n), range deviating from the
    limit path z by an n-relative suffix fixed per residue class of n."""
    index: int
    family: object  # PathFamily
    limit: object  # InfinitePath
    descriptors: tuple  # one descriptor per residue n mod p
    n_min: int

    def element(self, g, n):
        xn = materialize(g, self.family, n)
        desc = self.descriptors[n % len(self.descriptors)]
        rest, tail = _instantiate_descriptor(g, desc, n)
        if rest:
            first = g.edge_range(rest[0])
            occs = vertex_occurrences(g, self.limit, first)
            m = occs[0]
            prefix = [edge_at(g, self.limit, i) for i in range(m)] + rest
        else:
            prefix = []
        y = make_infinite_path(g, prefix, tail)
        return make_element(g, y, xn)


def _orbit_members(g, counter, z, m, F, n):
    """All orbit members of x^(n) in Z(z_1...z_m), for ray-at-n families.

    Sorted by the n-relative shape of the deviation from z (stage offset from
    n, then edge ids), so that the selection of the first k members is the
    same shape at every large n."""
    u0 = vertex_at(g, z, m)
    ray = F.tail_template[1]
    local = _attach_local(g, ray, n)
    heads = counter.enumerate(u0, BlockVertex(n, local))
    base = [edge_at(g, z, i) for i in range(m)]
    out = []
    for t in heads:
        y = make_infinite_path(g, tuple(base) + t, RayTail(n, ray, 0))
        _, rest = _deviation_split(g, z, y)
        out.append((_descriptor(g, n, rest, y.tail), y))
    out.sort(key=lambda pair: pair[0])
    return [y for _, y in out]


def construct_witnesses(g, F, z, k, M, window=(1, 12), budget=None):
    """k uniform witness families via greedy lexicographic selection among the
    orbit members, with uniformity checked at two representatives one period
    apart."""
    require_principal(g)
    low = lower_strength(g, F, z, M, window, budget)
    if not (low.k_certified is INF or low.k_certified >= k):
        raise StrengthNotCertified(
            f"lower criterion certifies only k={low.k_certified}, need {k}")
    if not all(r.stabilization in (PROVED_PERIODIC, DIVERGENT)
               for r in low.profile.rows):
        raise EmpiricalOnly(
            "closed-form witnesses require certified counts at every depth")
    if k is INF or not isinstance(k, int):
        raise BoundsError(f"witness count k must be a finite integer, got {k}")
    if F.tail_template[0] != RAY_AT_N:
        raise NonUniformFamily(
            "witness extraction is implemented for ray-at-n families only")
    p = g.period
    lo, hi = low.profile.window
    threshold = max([r.threshold for r in low.profile.rows] + [lo])
    n1 = max(hi, threshold)
    counter = PathCounter(g)
    reps = [n1 + r for r in range(p)] + [n1 + p + r for r in range(p)]
    per_rep = {n: _orbit_members(g, counter, z, M, F, n) for n in reps}
    families = []
    for i in range(k):
        descs = {}
        for n in reps:
            if i >= len(per_rep[n]):
                raise EmpiricalOnly(
                    f"only {len(per_rep[n])} orbit members at n={n}, need {k}")
            y = per_rep[n][i]
            d, rest = _deviation_split(g, z, y)
            descs[n] = _descriptor(g, n, rest, y.tail)
        for r in range(p):  # uniformity within each residue class of n
            if descs[n1 + r] != descs[n1 + p + r]:
                raise EmpiricalOnly(
                    f"witness {i + 1} has no uniform n-relative shape at "
                    f"n={n1 + r} and n={n1 + p + r}")
        by_residue = [None] * p
        for r in range(p):
            by_residue[(n1 + r) % p] = descs[n1 + r]
        descriptors = tuple(by_residue)
        offs = [it[2] for d in descriptors for it in d[0]] + \
            [d[1][2] for d in descriptors]
        n_min_w = max(F.n_min, max(offs) + 1)
        fam = WitnessFamily(i + 1, F, z, descriptors, n_min_w)
        for n in reps:  # the closed form must reproduce the member
            elt = fam.element(g, n)
            assert elt.x == per_rep[n][i], "witness closed form mismatch"
        families.append(fam)
    return families


# ---------------------------------------------------------------------------
# Witness verification
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class WitnessVerdict:
    passed: bool
    sources_ok: bool
    ranges_converge: bool
    pairwise_divergent: bool
    evidence: tuple = ()


def divergence_check(g, wi, wj, E, window=(1, 12)):
    """True iff every basic set of the exhaustion contains the quotient
    gamma_n^(j) (gamma_n^(i))^{-1} for only finitely many n.

    Identical descriptors give a unit quotient recurring in Z(beta, beta)
    forever.  Otherwise occupancies are counted over the window and any basic
    set still occupied at two further representatives a period apart would
    witness recurrence (ranges deviate at strictly increasing stages, so this
    does not happen for genuinely distinct uniform witnesses).
    """
    if wi.descriptors == wj.descriptors:
        return False, {"reason": "identical witness families: unit quotients recur"}
    lo, hi = window
    lo = max(lo, wi.n_min, wj.n_min)
    p = max(1, g.period)
    quotients = {}
    for n in list(range(lo, hi + 1)) + [hi + p, hi + 2 * p]:
        quotients[n] = compose(wj.element(g, n), invert(wi.element(g, n)))
    level = E.levels[-1]
    occupancy = {}
    for idx, B in enumerate(level.parts):
        ns = [n for n, q in quotients.items() if basic_contains(g, B, q)]
        if ns:
            occupancy[idx] = len([n for n in ns if n <= hi])
            if hi + p in ns and hi + 2 * p in ns:
                return False, {"reason": f"basic set {idx} recurs past the window",
                               "occupancy": occupancy}
    bound = max(occupancy.values(), default=0)
    return True, {"occupancy_bound": bound, "occupied_sets": len(occupancy)}


def verify_witnesses(g, ws, F, z, M, window=(1, 12)):
    """Check the three defining conditions of a k-times witness system."""
    lo, hi = window
    lo = max([lo] + [w.n_min for w in ws])
    p = max(1, g.period)
    sample = sorted(set(list(range(max(lo, hi - 3), hi + 1)) + [hi + p]))
    evidence = []
    sources_ok = True
    for w in ws:
        for n in sample:
            elt = w.element(g, n)
            if elt.y != materialize(g, F, n):
                sources_ok = False
                evidence.append(f"witness {w.index}: wrong source at n={n}")
    ranges_ok = True
    for w in ws:
        agree = {}
        for n in sample:
            elt = w.element(g, n)
            d, _ = _deviation_split(g, z, elt.x)
            agree[n] = d
        grows = all(agree[a] < agree[b]
                    for a, b in zip(sample, sample[1:]) if b - a == p)
        deep = agree[sample[-1]] >= M
        if not (grows or deep):
            ranges_ok = False
            evidence.append(
                f"witness {w.index}: range agreement with the limit does not "
                f"grow: {agree}")
    E = make_exhaustion(g, M)
    pairwise_ok = True
    for i in range(len(ws)):
        for j in range(i + 1, len(ws)):
            ok, info = divergence_check(g, ws[i], ws[j], E, window)
            if not ok:
                pairwise_ok = False
                evidence.append(
                    f"witnesses {ws[i].index},{ws[j].index} not divergent: {info}")
    passed = sources_ok and ranges_ok and pairwise_ok
    return WitnessVerdict(passed, sources_ok, ranges_ok, pairwise_ok,
                          tuple(evidence))


# ---------------------------------------------------------------------------
# Probes and audits
# ---------------------------------------------------------------------------

def hausdorff_probe(g, F, limits, M, window=(1, 12), budget=None):
    """Certify convergence to each supplied limit and flag non-Hausdorffness
    when two non-orbit-equivalent limits are both certified."""
    require_principal(g)
    per_limit = []
    for z in limits:
        verdict = lower_strength(g, F, z, M, window, budget)
        per_limit.append({"limit": path_key(z), "k": verdict.k_certified,
                          "status": verdict.status})
    bad_pairs = []
    for i in range(len(limits)):
        for j in range(i + 1, len(limits)):
            if per_limit[i]["k"] >= 1 and per_limit[j]["k"] >= 1 \
                    and shift_lag(g, limits[i], limits[j]) is None:
                bad_pairs.append((i, j))
    return {"per_limit": per_limit, "non_hausdorff": bool(bad_pairs),
            "violating_pairs": bad_pairs}


def uniform_bound_probe(g, z, Z, sample, budget=None):
    """Sampling probe for sup_x lambda_x(G^Z) over the supplied paths."""
    require_principal(g)
    if not sample:
        return {"sup": None, "all_exact": False, "note": "empty sample"}
    results = [orbit_count(g, x, Z, budget) for x in sample]
    return {"sup": max(r.count for r in results),
            "all_exact": all(r.is_exact for r in results),
            "kinds": tuple(r.kind for r in results)}


def consistency_audit(g, F, z, k, M, window=(1, 12), budget=None):
    """Cross-check the three equivalent characterizations at strength k:
    the witness route, the strict liminf route (item (5)), and the ratio
    route (item (3)), at every tested depth."""
    profile = measure_profile(g, F, z, M, window, budget)
    low = lower_strength(g, F, z, M, window, budget, profile=profile)
    liminf_route = low.k_certified is INF or low.k_certified >= k
    ratio_route = all(r.liminf is INF or r.liminf >= k * r.lambda_z
                      for r in profile.rows)
    try:
        ws = construct_witnesses(g, F, z, k, M, window, budget)
        witness_route = verify_witnesses(g, ws, F, z, M, window).passed
        witness_note = f"{len(ws)} witness families verified" if witness_route \
            else "witness verification failed"
    except (StrengthNotCertified, EmpiricalOnly, NonUniformFamily) as exc:
        witness_route = False
        witness_note = f"no witnesses: {exc}"
    routes = {"witness": witness_route, "liminf": liminf_route,
              "ratio": ratio_route}
    agreement = len(set(routes.values())) == 1
    return {"k": k, "routes": routes, "agreement": agreement,
            "witness_note": witness_note, "status": _profile_status(profile)}
