"""Staged graphs with rays: finite presentations of infinite row-finite graphs.

A staged graph consists of finitely many stage *blocks* (an optional base
segment at stages <= 0 and a repeating segment cycled over stages >= 1),
*cross edges* joining adjacent stages, and simple infinite in-*rays* attached
at block vertices.  Stage s >= 1 carries repeat[(s-1) % p]; base blocks occupy
stages 1-len(base) .. 0.

Path direction convention: a path alpha_1 alpha_2 ... satisfies
s(alpha_j) = r(alpha_{j+1}); the continuations of a path standing at vertex u
are the edges with range u.  Cross edges have range at the lower stage and
source at the upper stage, so paths descend through stages.  Ray edges have
range at depth d-1 and source at depth d (depth 0 being the attach vertex),
so paths descend rays as well.  Consequently every vertex has finitely many
incoming edges (row-finiteness) even though the graph is infinite.
"""

from dataclasses import dataclass, field
from functools import lru_cache

from .errors import (
    BoundsError,
    InvalidGraph,
    NotPrincipal,
    ResolutionError,
    UnknownVertex,
)


# ---------------------------------------------------------------------------
# Vertex and edge references
# ---------------------------------------------------------------------------

@dataclass(frozen=True, order=True)
class BlockVertex:
    stage: int
    local: str

    def __repr__(self):
        return f"{self.local}@{self.stage}"


@dataclass(frozen=True, order=True)
class RayVertex:
    stage: int
    ray: str
    depth: int  # >= 1; depth 0 is the attach BlockVertex, not a RayVertex

    def __repr__(self):
        return f"{self.ray}@{self.stage}:{self.depth}"


@dataclass(frozen=True, order=True)
class WithinEdge:
    stage: int
    edge_id: str

    def __repr__(self):
        return f"{self.edge_id}@{self.stage}"


@dataclass(frozen=True, order=True)
class CrossEdge:
    upper_stage: int  # source stage; range is at upper_stage - 1
    edge_id: str

    def __repr__(self):
        return f"{self.edge_id}@{self.upper_stage}"


@dataclass(frozen=True, order=True)
class RayEdge:
    stage: int
    ray: str
    depth: int  # >= 1; range at depth-1, source at depth

    def __repr__(self):
        return f"{self.ray}@{self.stage}:{self.depth}"


VERTEX_KINDS = (BlockVertex, RayVertex)
EDGE_KINDS = (WithinEdge, CrossEdge, RayEdge)


def vertex_key(v):
    """Total order over mixed vertex kinds, by (stage, kind, ids)."""
    if isinstance(v, BlockVertex):
        return (v.stage, 0, v.local, 0)
    return (v.stage, 1, v.ray, v.depth)


def edge_key(e):
    if isinstance(e, WithinEdge):
        return (e.stage, 0, e.edge_id, 0)
    if isinstance(e, CrossEdge):
        return (e.upper_stage, 1, e.edge_id, 0)
    return (e.stage, 2, e.ray, e.depth)


def edge_stage(e):
    """The stage index used for slicing bounds (source-side stage)."""
    if isinstance(e, CrossEdge):
        return e.upper_stage
    return e.stage


# ---------------------------------------------------------------------------
# Templates
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class WithinSpec:
    edge_id: str
    range_local: str
    source_local: str


@dataclass(frozen=True)
class RaySpec:
    name: str
    attach_local: str


@dataclass(frozen=True)
class StageBlock:
    name: str
    vertices: tuple  # tuple[str]
    within_edges: tuple  # tuple[WithinSpec]
    rays: tuple  # tuple[RaySpec]

    def within_by_id(self, edge_id):
        for spec in self.within_edges:
            if spec.edge_id == edge_id:
                return spec
        return None

    def ray_by_name(self, name):
        for spec in self.rays:
            if spec.name == name:
                return spec
        return None


@dataclass(frozen=True)
class CrossSpec:
    edge_id: str
    range_local: str  # at the lower stage
    source_local: str  # at the upper stage


@dataclass(frozen=True)
class CrossSection:
    lower: str  # lower-stage block template name
    upper: str  # upper-stage block template name
    edges: tuple  # tuple[CrossSpec]

    def edge_by_id(self, edge_id):
        for spec in self.edges:
            if spec.edge_id == edge_id:
                return spec
        return None


@dataclass(frozen=True)
class StagedGraph:
    name: str
    base: tuple  # tuple[StageBlock], stages 1-len(base) .. 0
    repeat: tuple  # tuple[StageBlock], non-empty, stages >= 1 cycled
    sections: tuple  # tuple[CrossSection]

    # -- stage arithmetic ---------------------------------------------------

    @property
    def period(self):
        return len(self.repeat)

    @property
    def min_stage(self):
        return 1 - len(self.base)

    def block_at(self, stage):
        if stage >= 1:
            return self.repeat[(stage - 1) % self.period]
        if stage >= self.min_stage:
            return self.base[stage - self.min_stage]
        raise UnknownVertex(f"stage {stage} below minimum {self.min_stage}")

    def section_between(self, lower_stage):
        """The cross section joining lower_stage to lower_stage + 1, or None."""
        lo = self.block_at(lower_stage).name
        hi = self.block_at(lower_stage + 1).name
        for sec in self.sections:
            if sec.lower == lo and sec.upper == hi:
                return sec
        return None

    # -- resolution ---------------------------------------------------------

    def check_vertex(self, v):
        if isinstance(v, BlockVertex):
            if v.local not in self.block_at(v.stage).vertices:
                raise UnknownVertex(f"no vertex {v.local!r} at stage {v.stage}")
        elif isinstance(v, RayVertex):
            if v.depth < 1:
                raise UnknownVertex(f"ray depth must be >= 1, got {v.depth}")
            if self.block_at(v.stage).ray_by_name(v.ray) is None:
                raise UnknownVertex(f"no ray {v.ray!r} at stage {v.stage}")
        else:
            raise UnknownVertex(f"not a vertex reference: {v!r}")
        return v

    def edge_range(self, e):
        if isinstance(e, WithinEdge):
            spec = self.block_at(e.stage).within_by_id(e.edge_id)
            if spec is None:
                raise ResolutionError(f"no within edge {e.edge_id!r} at stage {e.stage}")
            return BlockVertex(e.stage, spec.range_local)
        if isinstance(e, CrossEdge):
            sec = self.section_between(e.upper_stage - 1)
            spec = sec.edge_by_id(e.edge_id) if sec else None
            if spec is None:
                raise ResolutionError(
                    f"no cross edge {e.edge_id!r} into stage {e.upper_stage}")
            return BlockVertex(e.upper_stage - 1, spec.range_local)
        if isinstance(e, RayEdge):
            spec = self.block_at(e.stage).ray_by_name(e.ray)
            if spec is None:
                raise ResolutionError(f"no ray {e.ray!r} at stage {e.stage}")
            if e.depth == 1:
                return BlockVertex(e.stage, spec.attach_local)
            return RayVertex(e.stage, e.ray, e.depth - 1)
        raise ResolutionError(f"not an edge reference: {e!r}")

    def edge_source(self, e):
        if isinstance(e, WithinEdge):
            spec = self.block_at(e.stage).within_by_id(e.edge_id)
            if spec is None:
                raise ResolutionError(f"no within edge {e.edge_id!r} at stage {e.stage}")
            return BlockVertex(e.stage, spec.source_local)
        if isinstance(e, CrossEdge):
            sec = self.section_between(e.upper_stage - 1)
            spec = sec.edge_by_id(e.edge_id) if sec else None
            if spec is None:
                raise ResolutionError(
                    f"no cross edge {e.edge_id!r} into stage {e.upper_stage}")
            return BlockVertex(e.upper_stage, spec.source_local)
        if isinstance(e, RayEdge):
            if self.block_at(e.stage).ray_by_name(e.ray) is None:
                raise ResolutionError(f"no ray {e.ray!r} at stage {e.stage}")
            return RayVertex(e.stage, e.ray, e.depth)
        raise ResolutionError(f"not an edge reference: {e!r}")


# ---------------------------------------------------------------------------
# Adjacency
# ---------------------------------------------------------------------------

def incoming_edges(g, v):
    """All edges with range v.  Finite by construction (row-finiteness)."""
    g.check_vertex(v)
    if isinstance(v, RayVertex):
        return [RayEdge(v.stage, v.ray, v.depth + 1)]
    block = g.block_at(v.stage)
    out = []
    for spec in block.within_edges:
        if spec.range_local == v.local:
            out.append(WithinEdge(v.stage, spec.edge_id))
    sec = g.section_between(v.stage)
    if sec is not None:
        for spec in sec.edges:
            if spec.range_local == v.local:
                out.append(CrossEdge(v.stage + 1, spec.edge_id))
    for spec in block.rays:
        if spec.attach_local == v.local:
            out.append(RayEdge(v.stage, spec.name, 1))
    return out


def outgoing_edges(g, v):
    """All edges with source v."""
    g.check_vertex(v)
    if isinstance(v, RayVertex):
        return [RayEdge(v.stage, v.ray, v.depth)]
    block = g.block_at(v.stage)
    out = []
    for spec in block.within_edges:
        if spec.source_local == v.local:
            out.append(WithinEdge(v.stage, spec.edge_id))
    if v.stage - 1 >= g.min_stage:
        sec = g.section_between(v.stage - 1)
        if sec is not None:
            for spec in sec.edges:
                if spec.source_local == v.local:
                    out.append(CrossEdge(v.stage, spec.edge_id))
    return out


# ---------------------------------------------------------------------------
# Validation and principality
# ---------------------------------------------------------------------------

def validate_graph(g):
    """Return a list of human-readable violations; empty iff g is valid."""
    problems = []
    names = [b.name for b in g.base + g.repeat]
    if not g.repeat:
        problems.append("repeat segment must be non-empty")
        return problems
    for name in names:
        if names.count(name) > 1:
            problems.append(f"duplicate block template name {name!r}")
    for block in g.base + g.repeat:
        if len(set(block.vertices)) != len(block.vertices):
            problems.append(f"block {block.name!r}: duplicate vertex ids")
        ids = [w.edge_id for w in block.within_edges]
        if len(set(ids)) != len(ids):
            problems.append(f"block {block.name!r}: duplicate within-edge ids")
        rays = [r.name for r in block.rays]
        if len(set(rays)) != len(rays):
            problems.append(f"block {block.name!r}: duplicate ray names")
        for w in block.within_edges:
            for end in (w.range_local, w.source_local):
                if end not in block.vertices:
                    problems.append(
                        f"block {block.name!r}: edge {w.edge_id!r} references "
                        f"undeclared vertex {end!r}")
        for r in block.rays:
            if r.attach_local not in block.vertices:
                problems.append(
                    f"block {block.name!r}: ray {r.name!r} attaches to "
                    f"undeclared vertex {r.attach_local!r}")
    by_name = {b.name: b for b in g.base + g.repeat}
    adjacent = set()
    stages = list(range(g.min_stage, max(2, g.period + 1)))
    for s in stages:
        adjacent.add((g.block_at(s).name, g.block_at(s + 1).name))
    seen_pairs = set()
    for sec in g.sections:
        pair = (sec.lower, sec.upper)
        if pair in seen_pairs:
            problems.append(f"duplicate cross section {sec.lower}->{sec.upper}")
        seen_pairs.add(pair)
        if sec.lower not in by_name or sec.upper not in by_name:
            problems.append(
                f"cross section {sec.lower}->{sec.upper} names unknown block")
            continue
        if pair not in adjacent:
            problems.append(
                f"cross section {sec.lower}->{sec.upper} joins blocks that are "
                f"never at adjacent stages")
        ids = [c.edge_id for c in sec.edges]
        if len(set(ids)) != len(ids):
            problems.append(
                f"cross section {sec.lower}->{sec.upper}: duplicate edge ids")
        for c in sec.edges:
            if c.range_local not in by_name.get(sec.lower, StageBlock("", (), (), ())).vertices:
                problems.append(
                    f"cross edge {c.edge_id!r}: unknown range vertex "
                    f"{c.range_local!r} in block {sec.lower!r}")
            if c.source_local not in by_name.get(sec.upper, StageBlock("", (), (), ())).vertices:
                problems.append(
                    f"cross edge {c.edge_id!r}: unknown source vertex "
                    f"{c.source_local!r} in block {sec.upper!r}")
    return problems


@dataclass(frozen=True)
class PrincipalityReport:
    principal: bool
    certificate: tuple = ()  # a concrete within-edge cycle when not principal


def _template_cycle(block, stage):
    """Find a within-edge cycle in one block template, as concrete edges.

    DFS over the within-edge digraph (range -> source).  When a back edge to a
    vertex on the current stack is found, the stack segment from that vertex
    onward plus the back edge forms the cycle.
    """
    succ = {}
    for spec in block.within_edges:
        succ.setdefault(spec.range_local, []).append(spec)
    state = {}  # vertex -> 1 (on stack) | 2 (done)
    path = []  # edge specs of the current DFS stack

    def visit(v):
        state[v] = 1
        for spec in succ.get(v, ()):
            w = spec.source_local
            if state.get(w) == 1:
                cycle = []
                for prior in path:
                    if cycle or prior.range_local == w:
                        cycle.append(prior)
                cycle.append(spec)
                return [WithinEdge(stage, s.edge_id) for s in cycle]
            if state.get(w) != 2:
                path.append(spec)
                found = visit(w)
                path.pop()
                if found:
                    return found
        state[v] = 2
        return None

    for v in block.vertices:
        if state.get(v) != 2:
            found = visit(v)
            if found:
                return found
    return None


@lru_cache(maxsize=None)
def is_principal(g):
    """Cycle check.

    Cross edges strictly advance the stage and ray edges strictly advance the
    depth, so any directed cycle lies inside a single block template; checking
    each distinct template's within-edge digraph is therefore exact, not
    horizon-limited.
    """
    if validate_graph(g):
        raise InvalidGraph(f"graph {g.name!r} failed validation")
    for i, block in enumerate(g.base):
        cyc = _template_cycle(block, g.min_stage + i)
        if cyc:
            return PrincipalityReport(False, tuple(cyc))
    for i, block in enumerate(g.repeat):
        cyc = _template_cycle(block, i + 1)
        if cyc:
            return PrincipalityReport(False, tuple(cyc))
    return PrincipalityReport(True)


def require_principal(g):
    report = is_principal(g)
    if not report.principal:
        raise NotPrincipal(
            f"graph {g.name!r} is not principal; cycle: {list(report.certificate)}")
    return report


# ---------------------------------------------------------------------------
# Finite slices
# ---------------------------------------------------------------------------

@dataclass
class FiniteGraphSlice:
    vertices: tuple
    edges: tuple
    horizon: tuple  # (max_stage H, max_ray_depth D)
    ranges: dict = field(default_factory=dict, compare=False)
    sources: dict = field(default_factory=dict, compare=False)

    def incoming(self, v):
        """Edges of the slice with range v — also the possible next path edges
        for a path standing at v."""
        return self._by_range.get(v, [])

    def __post_init__(self):
        by_range = {}
        for e in self.edges:
            by_range.setdefault(self.ranges[e], []).append(e)
        self._by_range = by_range


def realize_slice(g, H, D):
    """Materialize all vertices/edges with stage <= H and ray depth <= D."""
    if D < 1:
        raise BoundsError(f"ray depth bound must be >= 1, got {D}")
    if H < g.min_stage:
        raise BoundsError(f"stage bound {H} below minimum stage {g.min_stage}")
    vertices = []
    edges = []
    ranges = {}
    sources = {}
    for s in range(g.min_stage, H + 1):
        block = g.block_at(s)
        for local in block.vertices:
            vertices.append(BlockVertex(s, local))
        for rspec in block.rays:
            for d in range(1, D + 1):
                vertices.append(RayVertex(s, rspec.name, d))
        for wspec in block.within_edges:
            edges.append(WithinEdge(s, wspec.edge_id))
        for rspec in block.rays:
            for d in range(1, D + 1):
                edges.append(RayEdge(s, rspec.name, d))
        if s + 1 <= H:
            sec = g.section_between(s)
            if sec is not None:
                for cspec in sec.edges:
                    edges.append(CrossEdge(s + 1, cspec.edge_id))
    vertices.sort(key=vertex_key)
    edges.sort(key=edge_key)
    for e in edges:
        ranges[e] = g.edge_range(e)
        sources[e] = g.edge_source(e)
    return FiniteGraphSlice(tuple(vertices), tuple(edges), (H, D), ranges, sources)


# ---------------------------------------------------------------------------
# Finite path counting (range-to-source, descending)
# ---------------------------------------------------------------------------

def _stage_of(v):
    return v.stage


class PathCounter:
    """Memoized counting/enumeration of finite paths between two vertices.

    count(u, v) is the number of finite paths q with r(q) = u and s(q) = v,
    including the empty path when u == v.  Recursion expands at the source
    end: every path into v arrives via an edge with source v.  Within-stage
    recursion terminates because templates are acyclic on principal graphs;
    a cycle is reported as NotPrincipal instead of looping.
    """

    def __init__(self, g):
        self.g = g
        self._memo = {}
        self._stack = set()

    def count(self, u, v):
        if _stage_of(v) < _stage_of(u):
            return 0
        key = (u, v)
        if key in self._memo:
            return self._memo[key]
        if key in self._stack:
            raise NotPrincipal(f"cycle through {v!r} during path counting")
        self._stack.add(key)
        total = 1 if u == v else 0
        for e in outgoing_edges(self.g, v):
            total += self.count(u, self.g.edge_range(e))
        self._stack.discard(key)
        self._memo[key] = total
        return total

    def enumerate(self, u, v, cap=None):
        """All paths from u to v as edge tuples (range-first order)."""
        if _stage_of(v) < _stage_of(u):
            return []
        results = []
        if u == v:
            results.append(())
        for e in outgoing_edges(self.g, v):
            for head in self.enumerate(u, self.g.edge_range(e), cap):
                results.append(head + (e,))
                if cap is not None and len(results) > cap:
                    raise BoundsError(
                        f"more than {cap} paths from {u!r} to {v!r}")
        return results
