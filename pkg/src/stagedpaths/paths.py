"""Finite and infinite paths, cylinder sets, shift equivalence, path families.

An infinite path is stored canonically as a finite edge prefix plus a tail:
either a ray tail (the unique continuation down a ray) or a periodic descent
(a primitive step pattern cycled through the repeating stages).  The prefix is
the shortest one after which the path follows its tail verbatim, so path
equality is a syntactic check on the representation.
"""

from dataclasses import dataclass

from .errors import (
    CompositionMismatch,
    IndexBelowMin,
    InputError,
    NoPath,
    NotPrincipal,
    NotUnique,
    ResolutionError,
)
from .graph import (
    BlockVertex,
    CrossEdge,
    PathCounter,
    RayEdge,
    RayVertex,
    WithinEdge,
    incoming_edges,
    require_principal,
)


# ---------------------------------------------------------------------------
# Finite paths and cylinders
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class FinitePath:
    edges: tuple
    anchor: object = None  # a VertexRef; meaningful only when edges is empty

    def __len__(self):
        return len(self.edges)


def make_finite_path(g, edges, anchor=None):
    edges = tuple(edges)
    if not edges:
        if anchor is None:
            raise InputError("empty finite path needs an anchor vertex")
        g.check_vertex(anchor)
        return FinitePath((), anchor)
    for a, b in zip(edges, edges[1:]):
        if g.edge_source(a) != g.edge_range(b):
            raise CompositionMismatch(
                f"edges do not compose: source({a!r}) != range({b!r})")
    return FinitePath(edges, None)


def path_range(g, fp):
    return g.edge_range(fp.edges[0]) if fp.edges else fp.anchor


def path_source(g, fp):
    return g.edge_source(fp.edges[-1]) if fp.edges else fp.anchor


def concat(g, alpha, beta):
    """alpha followed by beta; requires s(alpha) = r(beta)."""
    if path_source(g, alpha) != path_range(g, beta):
        raise CompositionMismatch(
            f"cannot concatenate: source {path_source(g, alpha)!r} != "
            f"range {path_range(g, beta)!r}")
    if not alpha.edges and not beta.edges:
        return FinitePath((), alpha.anchor)
    return FinitePath(alpha.edges + beta.edges, None)


@dataclass(frozen=True)
class CylinderSet:
    alpha: FinitePath


# ---------------------------------------------------------------------------
# Tails
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class RayTail:
    stage: int
    ray: str
    entry_depth: int  # >= 0; depth 0 is the attach block vertex


@dataclass(frozen=True)
class Step:
    kind: str  # "within" | "cross"
    edge_id: str


@dataclass(frozen=True)
class PeriodicDescent:
    start_stage: int
    steps: tuple  # tuple[Step], primitive, cross count a positive multiple of p


def _cross_count(steps):
    return sum(1 for s in steps if s.kind == "cross")


def _crosses_before(steps, r):
    return sum(1 for s in steps[:r] if s.kind == "cross")


def _instantiate(step, stage):
    """Concrete edge for a step whose range sits at `stage`."""
    if step.kind == "within":
        return WithinEdge(stage, step.edge_id)
    return CrossEdge(stage + 1, step.edge_id)


def tail_first_vertex(g, tail):
    if isinstance(tail, RayTail):
        if tail.entry_depth == 0:
            spec = g.block_at(tail.stage).ray_by_name(tail.ray)
            if spec is None:
                raise ResolutionError(
                    f"no ray {tail.ray!r} at stage {tail.stage}")
            return BlockVertex(tail.stage, spec.attach_local)
        return RayVertex(tail.stage, tail.ray, tail.entry_depth)
    return g.edge_range(_instantiate(tail.steps[0], tail.start_stage))


def tail_edge(g, tail, j):
    """The (j+1)-th edge of the tail (j >= 0)."""
    if isinstance(tail, RayTail):
        return RayEdge(tail.stage, tail.ray, tail.entry_depth + j + 1)
    n = len(tail.steps)
    q, r = divmod(j, n)
    stage = tail.start_stage + q * _cross_count(tail.steps) + \
        _crosses_before(tail.steps, r)
    return _instantiate(tail.steps[r], stage)


def tail_advance(tail, j):
    """The tail after dropping its first j edges."""
    if j == 0:
        return tail
    if isinstance(tail, RayTail):
        return RayTail(tail.stage, tail.ray, tail.entry_depth + j)
    n = len(tail.steps)
    q, r = divmod(j, n)
    start = tail.start_stage + q * _cross_count(tail.steps) + \
        _crosses_before(tail.steps, r)
    return PeriodicDescent(start, tail.steps[r:] + tail.steps[:r])


def tail_step_back(g, tail):
    """(edge, extended tail) absorbing one edge in front, or None at a wall."""
    if isinstance(tail, RayTail):
        if tail.entry_depth == 0:
            return None
        new = RayTail(tail.stage, tail.ray, tail.entry_depth - 1)
        return tail_edge(g, new, 0), new
    last = tail.steps[-1]
    new_start = tail.start_stage - (1 if last.kind == "cross" else 0)
    if new_start < 1:
        return None
    new = PeriodicDescent(new_start, (last,) + tail.steps[:-1])
    return tail_edge(g, new, 0), new


def _primitive(tail, period):
    """Reduce a descent pattern to its shortest repeating sub-pattern."""
    steps = tail.steps
    n = len(steps)
    for d in range(1, n):
        if n % d:
            continue
        if steps[:d] * (n // d) == steps and _cross_count(steps[:d]) % period == 0 \
                and _cross_count(steps[:d]) > 0:
            return PeriodicDescent(tail.start_stage, steps[:d])
    return tail


def validate_tail(g, tail):
    if isinstance(tail, RayTail):
        if tail.entry_depth < 0:
            raise InputError("ray entry depth must be >= 0")
        if g.block_at(tail.stage).ray_by_name(tail.ray) is None:
            raise ResolutionError(f"no ray {tail.ray!r} at stage {tail.stage}")
        return
    if not isinstance(tail, PeriodicDescent):
        raise InputError(f"not a tail: {tail!r}")
    if tail.start_stage < 1:
        raise InputError("periodic descent must start at stage >= 1")
    if not tail.steps:
        raise InputError("periodic descent needs a non-empty pattern")
    c = _cross_count(tail.steps)
    if c == 0 or c % g.period != 0:
        raise InputError(
            "descent pattern must cross a positive multiple of "
            f"{g.period} stages (crossed {c})")
    prev = None
    for j in range(len(tail.steps) + 1):
        e = tail_edge(g, tail, j)
        rng = g.edge_range(e)  # raises ResolutionError if the step is unknown
        if prev is not None and g.edge_source(prev) != rng:
            raise CompositionMismatch(
                f"descent pattern does not compose at step {j}")
        prev = e


# ---------------------------------------------------------------------------
# Infinite paths
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class InfinitePath:
    prefix: tuple  # tuple[EdgeRef]
    tail: object  # RayTail | PeriodicDescent


def make_infinite_path(g, prefix, tail):
    prefix = tuple(prefix)
    validate_tail(g, tail)
    if isinstance(tail, PeriodicDescent):
        tail = _primitive(tail, g.period)
    for a, b in zip(prefix, prefix[1:]):
        if g.edge_source(a) != g.edge_range(b):
            raise CompositionMismatch(
                f"prefix does not compose: source({a!r}) != range({b!r})")
    if prefix and g.edge_source(prefix[-1]) != tail_first_vertex(g, tail):
        raise CompositionMismatch(
            f"prefix does not meet the tail: source({prefix[-1]!r}) != "
            f"{tail_first_vertex(g, tail)!r}")
    # canonicalize: absorb prefix edges that already follow the tail pattern
    prefix = list(prefix)
    while prefix:
        back = tail_step_back(g, tail)
        if back is None or back[0] != prefix[-1]:
            break
        prefix.pop()
        tail = back[1]
    return InfinitePath(tuple(prefix), tail)


def infinite_range(g, x):
    if x.prefix:
        return g.edge_range(x.prefix[0])
    return tail_first_vertex(g, x.tail)


def edge_at(g, x, i):
    """The (i+1)-th edge of x (i >= 0)."""
    if i < len(x.prefix):
        return x.prefix[i]
    return tail_edge(g, x.tail, i - len(x.prefix))


def vertex_at(g, x, m):
    """The vertex after m edges (m = 0 gives the range of x)."""
    if m == 0:
        return infinite_range(g, x)
    return g.edge_source(edge_at(g, x, m - 1))


def shift(g, x, m):
    """The path x_{m+1} x_{m+2} ... in canonical form."""
    if m <= len(x.prefix):
        return InfinitePath(x.prefix[m:], x.tail)
    return InfinitePath((), tail_advance(x.tail, m - len(x.prefix)))


def prefix_path(g, x, m):
    """The first m edges of x as a FinitePath."""
    if m == 0:
        return FinitePath((), infinite_range(g, x))
    return FinitePath(tuple(edge_at(g, x, i) for i in range(m)), None)


def cylinder(g, z, m):
    return CylinderSet(prefix_path(g, z, m))


def in_cylinder(g, x, Z):
    alpha = Z.alpha
    if not alpha.edges:
        return infinite_range(g, x) == alpha.anchor
    return all(edge_at(g, x, i) == e for i, e in enumerate(alpha.edges))


def concat_infinite(g, alpha, x):
    if path_source(g, alpha) != infinite_range(g, x):
        raise CompositionMismatch(
            f"cannot prepend: source {path_source(g, alpha)!r} != "
            f"range {infinite_range(g, x)!r}")
    return make_infinite_path(g, alpha.edges + x.prefix, x.tail)


# ---------------------------------------------------------------------------
# Occurrence solving (used by shift_lag and orbit counting)
# ---------------------------------------------------------------------------

def _tail_edge_occurrence(g, tail, e):
    """Tail-relative index j with tail_edge(tail, j) == e, or None."""
    if isinstance(tail, RayTail):
        if isinstance(e, RayEdge) and (e.stage, e.ray) == (tail.stage, tail.ray) \
                and e.depth >= tail.entry_depth + 1:
            return e.depth - tail.entry_depth - 1
        return None
    c = _cross_count(tail.steps)
    for r, step in enumerate(tail.steps):
        cb = _crosses_before(tail.steps, r)
        if step.kind == "within" and isinstance(e, WithinEdge) \
                and e.edge_id == step.edge_id:
            num = e.stage - tail.start_stage - cb
        elif step.kind == "cross" and isinstance(e, CrossEdge) \
                and e.edge_id == step.edge_id:
            num = e.upper_stage - 1 - tail.start_stage - cb
        else:
            continue
        q, rem = divmod(num, c)
        if rem == 0 and q >= 0 and tail_edge(g, tail, q * len(tail.steps) + r) == e:
            return q * len(tail.steps) + r
    return None


def edge_occurrence(g, x, e):
    """The unique index i with edge_at(x, i) == e, or None.

    On principal graphs a concrete edge occurs at most once in any path
    (a repeat would close a cycle).
    """
    hits = [i for i, pe in enumerate(x.prefix) if pe == e]
    j = _tail_edge_occurrence(g, x.tail, e)
    if j is not None:
        hits.append(len(x.prefix) + j)
    if len(hits) > 1:
        raise NotPrincipal(f"edge {e!r} occurs twice in one path")
    return hits[0] if hits else None


def vertex_occurrences(g, x, v):
    """All m with vertex_at(x, m) == v (finite; at most one on principal graphs
    plus possibly boundary coincidences, so a list is returned)."""
    out = [m for m in range(len(x.prefix) + 1) if vertex_at(g, x, m) == v]
    tail = x.tail
    L = len(x.prefix)
    if isinstance(tail, RayTail):
        if isinstance(v, RayVertex) and (v.stage, v.ray) == (tail.stage, tail.ray) \
                and v.depth > tail.entry_depth:
            out.append(L + v.depth - tail.entry_depth)
    else:
        c = _cross_count(tail.steps)
        n = len(tail.steps)
        if isinstance(v, BlockVertex):
            for j0 in range(1, n + 1):
                e = tail_edge(g, tail, j0 - 1)
                w = g.edge_source(e)
                num = v.stage - w.stage
                q, rem = divmod(num, c)
                if w.local == v.local and rem == 0 and q >= 0:
                    m = L + q * n + j0
                    if m not in out:
                        out.append(m)
    return sorted(set(out))


# ---------------------------------------------------------------------------
# Shift equivalence
# ---------------------------------------------------------------------------

def _max_prefix_stage(g, y):
    stages = [tail_first_vertex(g, y.tail).stage]
    for e in y.prefix:
        stages.append(g.edge_range(e).stage)
    return max(stages)


def shift_lag(g, x, y):
    """The unique lag k with x_i = y_{i+k} for all large i, or None.

    Uniqueness holds on principal graphs (two lags would close a cycle);
    callers must have checked is_principal.
    """
    require_principal(g)
    tx, ty = x.tail, y.tail
    if type(tx) is not type(ty):
        return None
    Lx, Ly = len(x.prefix), len(y.prefix)
    if isinstance(tx, RayTail):
        if (tx.stage, tx.ray) != (ty.stage, ty.ray):
            return None
        return (Ly - ty.entry_depth) - (Lx - tx.entry_depth)
    if len(tx.steps) != len(ty.steps):
        return None
    # Anchor a cross edge of x's tail deep enough that, were x ~ y, the same
    # concrete edge must occur inside y's tail (uniquely, by stage arithmetic).
    n = len(tx.steps)
    j0 = next(r for r, s in enumerate(tx.steps) if s.kind == "cross")
    wall = max(_max_prefix_stage(g, y), _max_prefix_stage(g, x)) + g.period
    while g.edge_range(tail_edge(g, tx, j0)).stage <= wall:
        j0 += n
    anchor = tail_edge(g, tx, j0)
    jy = _tail_edge_occurrence(g, ty, anchor)
    if jy is None:
        return None
    k = (Ly + jy) - (Lx + j0)
    # verify one full pattern period where both sides are inside their tails
    start = max(Lx, Ly - k) + 1
    for i in range(start, start + n + 1):
        if edge_at(g, x, i - 1) != edge_at(g, y, i + k - 1):
            return None
    return k


# ---------------------------------------------------------------------------
# [v, f]-unique paths
# ---------------------------------------------------------------------------

def unique_path(g, v, f):
    """The unique infinite path with range v passing through edge f.

    Checks that exactly one finite path leads from v to f and that the
    continuation past f is forced (in-degree one all the way, possibly
    entering a ray or settling into a periodic descent).
    """
    require_principal(g)
    g.check_vertex(v)
    counter = PathCounter(g)
    heads = counter.enumerate(v, g.edge_range(f))
    if not heads:
        raise NoPath(f"no path from {v!r} to {f!r}")
    if len(heads) > 1:
        raise NotUnique(
            f"{len(heads)} distinct paths from {v!r} to {f!r}",
            witnesses=[h + (f,) for h in heads[:2]])
    edges = list(heads[0]) + [f]
    cur = g.edge_source(f)
    seen = {}
    while True:
        if isinstance(cur, RayVertex):
            tail = RayTail(cur.stage, cur.ray, cur.depth)
            return make_infinite_path(g, edges, tail)
        conts = incoming_edges(g, cur)
        if not conts:
            raise NoPath(f"dead end at {cur!r}: no continuation")
        if len(conts) > 1:
            raise NotUnique(
                f"multiple continuations at {cur!r}", witnesses=conts[:2])
        e = conts[0]
        if isinstance(e, RayEdge):
            tail = RayTail(e.stage, e.ray, e.depth - 1)
            return make_infinite_path(g, edges, tail)
        if cur.stage >= 1:
            key = (cur.local, (cur.stage - 1) % g.period)
            if key in seen:
                at, start_stage = seen[key]
                steps = tuple(
                    Step("within", pe.edge_id) if isinstance(pe, WithinEdge)
                    else Step("cross", pe.edge_id)
                    for pe in edges[at:])
                tail = PeriodicDescent(start_stage, steps)
                return make_infinite_path(g, edges[:at], tail)
            seen[key] = (len(edges), cur.stage)
        edges.append(e)
        cur = g.edge_source(e)


# ---------------------------------------------------------------------------
# Path families
# ---------------------------------------------------------------------------

RAY_AT_N = "ray-at-n"
RAY_FIXED = "ray-fixed"
DESCENT_FIXED = "descent-fixed"


@dataclass(frozen=True)
class PathFamily:
    """A uniform-in-n description of a sequence x^(n) of infinite paths.

    x^(n) follows `descent` until it reaches the range of the pivot chain at
    stage n, takes the pivot chain (within edges of stage n's block, resolved
    per stage so the chosen edge can differ by residue class), and then
    follows the tail template (a ray at stage n, a fixed ray, or a fixed
    periodic descent).
    """
    name: str
    descent: InfinitePath  # prefix-free PeriodicDescent path
    pivot: tuple  # non-empty tuple of within-edge ids applied at stage n
    tail_template: tuple  # (RAY_AT_N, ray) | (RAY_FIXED, stage, ray, entry) | (DESCENT_FIXED, start, steps)
    n_min: int = 1


def validate_family(g, F):
    if F.descent.prefix or not isinstance(F.descent.tail, PeriodicDescent):
        raise InputError(
            f"family {F.name!r}: descent must be a prefix-free periodic descent")
    if not F.pivot:
        raise InputError(f"family {F.name!r}: pivot chain must be non-empty")
    if F.n_min < F.descent.tail.start_stage - 1:
        raise InputError(
            f"family {F.name!r}: n_min {F.n_min} precedes the descent")
    for n in range(F.n_min, F.n_min + g.period + 1):
        materialize(g, F, n)


def materialize(g, F, n):
    """The concrete InfinitePath x^(n)."""
    if n < F.n_min:
        raise IndexBelowMin(f"family {F.name!r} starts at n={F.n_min}, got {n}")
    chain = []
    for pid in F.pivot:
        e = WithinEdge(n, pid)
        g.edge_range(e)  # resolves or raises
        chain.append(e)
    target = g.edge_range(chain[0])
    occs = vertex_occurrences(g, F.descent, target)
    if not occs:
        raise InputError(
            f"family {F.name!r}: pivot range {target!r} is not on the descent")
    m = occs[0]
    prefix = [edge_at(g, F.descent, i) for i in range(m)] + chain
    kind = F.tail_template[0]
    if kind == RAY_AT_N:
        tail = RayTail(n, F.tail_template[1], 0)
    elif kind == RAY_FIXED:
        _, stage, ray, entry = F.tail_template
        tail = RayTail(stage, ray, entry)
    elif kind == DESCENT_FIXED:
        _, start, steps = F.tail_template
        tail = PeriodicDescent(start, steps)
    else:
        raise InputError(f"unknown tail template {kind!r}")
    return make_infinite_path(g, prefix, tail)


def family_converges_pointwise(g, F, z, depth=8, n_cap=64):
    """Whether materialize(F, n) -> z in the cylinder topology.

    Decided structurally: the members follow F.descent for ever longer
    prefixes, so the pointwise limit exists iff z equals the descent path.
    The table reports, for each m <= depth, the first n from which all members
    lie in Z(z_1...z_m) (scanning up to n_cap).
    """
    converges = (z == F.descent)
    table = {}
    if converges:
        for m in range(1, depth + 1):
            for n in range(F.n_min, n_cap):
                # members agree with the descent up to the pivot point, whose
                # position along the descent strictly increases with n
                target = g.edge_range(WithinEdge(n, F.pivot[0]))
                occs = vertex_occurrences(g, F.descent, target)
                if occs and occs[0] >= m:
                    table[m] = n
                    break
            else:
                converges = False
                break
    return converges, table
