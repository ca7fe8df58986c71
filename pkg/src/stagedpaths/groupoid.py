"""Path-groupoid elements, basic compact open sets, counting-measure Haar
computations, and certified orbit counts.

The groupoid consists of triples (x, k, y) of infinite paths that are shift
equivalent with lag k.  Basic sets Z(alpha, beta) are compact open bisections;
lambda_x(K) counts the elements of K with source x.  orbit_count computes
lambda_x(G^{Z(alpha)}) = #([x] intersect Z(alpha)) with a termination
certificate: Exact, AtLeast (budget exhausted), or Infinite (a provably
recurring positive deviation profile).
"""

from dataclasses import dataclass

from .errors import NotComposable, NotEquivalent
from .graph import (
    BlockVertex,
    PathCounter,
    edge_key,
    outgoing_edges,
    require_principal,
    vertex_key,
)
from .paths import (
    CylinderSet,
    FinitePath,
    InfinitePath,
    PeriodicDescent,
    RayTail,
    _cross_count,
    concat_infinite,
    edge_at,
    edge_occurrence,
    in_cylinder,
    path_source,
    shift,
    shift_lag,
    tail_edge,
    vertex_at,
    vertex_occurrences,
)


# ---------------------------------------------------------------------------
# Elements
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class GroupoidElement:
    x: InfinitePath  # range side
    k: int
    y: InfinitePath  # source side


def path_key(x):
    """Total order over canonical infinite paths (for deterministic output)."""
    tail = x.tail
    if isinstance(tail, RayTail):
        tkey = (0, tail.stage, tail.ray, tail.entry_depth)
    else:
        tkey = (1, tail.start_stage,
                tuple((s.kind, s.edge_id) for s in tail.steps), 0)
    return (tuple(edge_key(e) for e in x.prefix), tkey)


def element_key(elt):
    return (path_key(elt.y), elt.k, path_key(elt.x))


def make_element(g, x, y):
    k = shift_lag(g, x, y)
    if k is None:
        raise NotEquivalent("paths are not shift equivalent")
    return GroupoidElement(x, k, y)


def unit(x):
    return GroupoidElement(x, 0, x)


def compose(g1, g2):
    if g1.y != g2.x:
        raise NotComposable("source of the left element != range of the right")
    return GroupoidElement(g1.x, g1.k + g2.k, g2.y)


def invert(elt):
    return GroupoidElement(elt.y, -elt.k, elt.x)


# ---------------------------------------------------------------------------
# Basic sets and compact sets
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class BasicSet:
    alpha: FinitePath
    beta: FinitePath


def make_basic(g, alpha, beta):
    if path_source(g, alpha) != path_source(g, beta):
        raise NotComposable(
            "Z(alpha, beta) requires s(alpha) = s(beta)")
    return BasicSet(alpha, beta)


def _finite_key(fp):
    anchor = fp.anchor
    akey = vertex_key(anchor) if anchor is not None else ()
    return (tuple(edge_key(e) for e in fp.edges), akey)


def basic_key(B):
    return (_finite_key(B.alpha), _finite_key(B.beta))


@dataclass(frozen=True)
class CompactSet:
    parts: tuple  # tuple[BasicSet], sorted, duplicate-free


def make_compact(parts):
    uniq = sorted(set(parts), key=basic_key)
    return CompactSet(tuple(uniq))


def basic_contains(g, B, elt):
    """Membership in Z(alpha, beta): range in Z(alpha), source in Z(beta),
    lag |beta| - |alpha|, and matching tails past the prefixes."""
    a, b = B.alpha, B.beta
    if elt.k != len(b) - len(a):
        return False
    if not in_cylinder(g, elt.x, CylinderSet(a)):
        return False
    if not in_cylinder(g, elt.y, CylinderSet(b)):
        return False
    return shift(g, elt.x, len(a)) == shift(g, elt.y, len(b))


def _element_of_basic_at(g, B, x):
    """The single element of Z(alpha, beta) with source x, or None."""
    if not in_cylinder(g, x, CylinderSet(B.beta)):
        return None
    upper = concat_infinite(g, B.alpha, shift(g, x, len(B.beta)))
    return GroupoidElement(upper, len(B.beta) - len(B.alpha), x)


def count_at_source(g, x, K):
    """lambda_x(K): the number of distinct elements of K with source x."""
    found = set()
    for part in K.parts:
        elt = _element_of_basic_at(g, part, x)
        if elt is not None:
            found.add(elt)
    return len(found)


def elements_at_source(g, x, K):
    found = {}
    for part in K.parts:
        elt = _element_of_basic_at(g, part, x)
        if elt is not None:
            found[element_key(elt)] = elt
    return [found[k] for k in sorted(found)]


def invert_set(K):
    return make_compact([BasicSet(p.beta, p.alpha) for p in K.parts])


def translate_set(g, K, gam):
    """The elements of K*gam with source s(gam): {delta . gam : delta in K,
    s(delta) = r(gam)}.  Right translation is a bijection, so the list has
    exactly lambda_{r(gam)}(K) members."""
    out = {}
    for delta in elements_at_source(g, gam.x, K):
        prod = compose(delta, gam)
        out[element_key(prod)] = prod
    return [out[k] for k in sorted(out)]


# ---------------------------------------------------------------------------
# Orbit counting with certificates
# ---------------------------------------------------------------------------

EXACT = "exact"
AT_LEAST = "at-least"
INFINITE = "infinite"


@dataclass(frozen=True)
class CountResult:
    kind: str
    count: int  # exact value, or the lower bound accumulated so far
    detail: str = ""

    @property
    def is_exact(self):
        return self.kind == EXACT


@dataclass(frozen=True)
class Budget:
    periods: int = 3  # extra full pattern bands examined before giving up
    length: int = 64  # hard cap on examined splice positions


def _template_ancestors(g, targets):
    """Template coordinates (residue, local) from which some target coordinate
    is reachable by a descending finite path.  Computed on the quotient
    digraph of one period, which is exact because within/cross edges act the
    same at every stage of a residue class."""
    p = g.period
    preds = {}
    for rho in range(p):
        block = g.block_at(rho + 1)
        for spec in block.within_edges:
            preds.setdefault((rho, spec.source_local), set()).add(
                (rho, spec.range_local))
        sec = g.section_between(rho + 1)
        if sec is not None:
            for spec in sec.edges:
                preds.setdefault(((rho + 1) % p, spec.source_local), set()).add(
                    (rho, spec.range_local))
    closure = set(targets)
    frontier = list(targets)
    while frontier:
        node = frontier.pop()
        for prev in preds.get(node, ()):
            if prev not in closure:
                closure.add(prev)
                frontier.append(prev)
    return closure


def _splice_contribution(g, counter, u0, v, forbidden):
    """Number of non-empty paths t with r(t) = u0, s(t) = v whose last edge is
    not `forbidden` (the path edge of x at this splice)."""
    total = 0
    for e in outgoing_edges(g, v):
        if e == forbidden:
            continue
        total += counter.count(u0, g.edge_range(e))
    return total


def orbit_count(g, x, Z, budget=None, counter=None):
    """Count distinct y in Z(alpha) with y ~ x.

    Every orbit member decomposes uniquely as y = q . shift(x, m) with
    s(q) = vertex_at(x, m) and m minimal (equivalently: m = 0, or q empty, or
    the last edge of q differs from x_m).  Members with |q| < |alpha| are
    pinned by an edge of alpha occurring in x (at most once each, by
    principality); members with q = alpha . t are counted by exact path
    counting at each splice vertex.  For ray tails the splice scan terminates
    outright; for periodic descents the per-period deviation profile is
    tracked through the transfer dynamics of the path-count vector restricted
    to the coordinates that can still reach a deviation target, which makes
    the repetition/growth certificates sound.
    """
    require_principal(g)
    budget = budget or Budget()
    counter = counter or PathCounter(g)
    alpha = Z.alpha
    A = len(alpha)
    u0 = path_source(g, alpha)
    total = 0

    # --- case A: q a proper prefix of alpha (including q empty) -----------
    if A == 0:
        total += len(vertex_occurrences(g, x, alpha.anchor))
    else:
        for j in range(A):
            m = edge_occurrence(g, x, alpha.edges[j])
            if m is None:
                continue
            if not all(edge_at(g, x, m + t - j) == alpha.edges[t]
                       for t in range(j, A)):
                continue
            if m > 0 and j > 0 and alpha.edges[j - 1] == edge_at(g, x, m - 1):
                continue  # not the minimal splice for this member
            total += 1
        # q = alpha exactly (t empty)
        for m in vertex_occurrences(g, x, u0):
            if m > 0 and alpha.edges[-1] == edge_at(g, x, m - 1):
                continue
            total += 1

    # --- case B: q = alpha . t with t non-empty ----------------------------
    Lx = len(x.prefix)
    for m in range(0, Lx + 1):
        forbidden = edge_at(g, x, m - 1) if m > 0 else None
        total += _splice_contribution(g, counter, u0, vertex_at(g, x, m),
                                      forbidden)

    tail = x.tail
    if isinstance(tail, RayTail):
        # beyond the prefix every splice vertex is a ray vertex whose only
        # outgoing edge is the path's own next ray edge: no deviations
        return CountResult(EXACT, total, "ray tail admits no deviations")

    nsteps = len(tail.steps)
    span = _cross_count(tail.steps)
    p = g.period

    # positions a >= 1 index tail vertices; run directly until the regime
    # where every band stage lies strictly below u0's stage
    regime_stage = max(u0.stage + 1, tail.start_stage, 1)
    a = 1
    while g.edge_source(tail_edge(g, tail, a - 1)).stage < regime_stage:
        m = Lx + a
        total += _splice_contribution(g, counter, u0, vertex_at(g, x, m),
                                      edge_at(g, x, m - 1))
        a += 1
        if a > budget.length:
            return CountResult(AT_LEAST, total,
                               f"budget exhausted before stage {regime_stage}")

    # deviation targets: template coordinates hit by edges leaving the
    # descent's splice vertices other than the path's own edges
    targets = set()
    for off in range(nsteps):
        v = g.edge_source(tail_edge(g, tail, a - 1 + off))
        own = tail_edge(g, tail, a + off - 1)
        for e in outgoing_edges(g, v):
            if e != own:
                rng = g.edge_range(e)
                if isinstance(rng, BlockVertex):
                    targets.add(((rng.stage - 1) % p, rng.local))
    relevant = _template_ancestors(g, targets)

    def band_state(a_start):
        stages = sorted({g.edge_source(tail_edge(g, tail, a_start - 1 + off)).stage
                         for off in range(nsteps)})
        lo = min(stages)
        vec = []
        for s in range(lo, lo + max(span, 1)):
            for local in sorted(g.block_at(s).vertices):
                if ((s - 1) % p, local) in relevant:
                    vec.append(counter.count(u0, BlockVertex(s, local)))
        return tuple(vec)

    def band_contribution(a_start):
        b = 0
        for off in range(nsteps):
            m = Lx + a_start + off
            b += _splice_contribution(g, counter, u0, vertex_at(g, x, m),
                                      edge_at(g, x, m - 1))
        return b

    states = []
    contribs = []
    max_bands = budget.periods + 3
    for j in range(max_bands):
        a_j = a + j * nsteps
        if Lx + a_j + nsteps > budget.length + Lx:
            break
        states.append(band_state(a_j))
        contribs.append(band_contribution(a_j))
        total += contribs[-1]
        if j >= 1 and states[j] == states[j - 1]:
            if contribs[j] == 0:
                return CountResult(
                    EXACT, total,
                    "path-count state repeats with zero deviations per period")
            return CountResult(
                INFINITE, total,
                f"path-count state repeats with {contribs[j]} deviations "
                "per period")
        if j >= 2:
            d1 = [hi - lo for hi, lo in zip(states[j - 1], states[j - 2])]
            d2 = [hi - lo for hi, lo in zip(states[j], states[j - 1])]
            if all(v >= 0 for v in d1) and all(b >= s for b, s in zip(d2, d1)) \
                    and contribs[j] >= contribs[j - 1] >= 1:
                return CountResult(
                    INFINITE, total,
                    "deviation profile grows monotonically per period")
    return CountResult(AT_LEAST, total, "band budget exhausted")
