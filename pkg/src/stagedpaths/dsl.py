"""Parser and pretty-printer for the graph / path / family description DSL.

A document contains one graph declaration optionally followed by path and
family declarations:

    graph ladder2 {
      repeat {
        block A {
          vertex v, w;
          edge f1 range v source w;
          edge f2 range v source w;
          ray t attach w;
        }
      }
      cross A -> A {
        edge spine range v source v;
      }
    }
    path z { prefix ; tail descent [spine] from stage 1 ; }
    family xs { descend z to n ; pivot f1 ; tail ray t at stage n ; min 1 ; }

Concrete edges in path prefixes are written name@stage (within edges resolve
first, then cross edges arriving at that stage from above) and ray edges as
name@stage:depth.  `#` starts a line comment.
"""

import re
from dataclasses import dataclass, field

from .errors import DslSyntaxError, DuplicateIdError, InvalidGraph, ResolutionError
from .graph import (
    CrossEdge,
    CrossSection,
    CrossSpec,
    RayEdge,
    RaySpec,
    StageBlock,
    StagedGraph,
    WithinEdge,
    WithinSpec,
    validate_graph,
)
from .paths import (
    DESCENT_FIXED,
    RAY_AT_N,
    PathFamily,
    PeriodicDescent,
    RayTail,
    Step,
    make_infinite_path,
    validate_family,
)

_TOKEN = re.compile(r"->|[{};,@:\[\]]|[A-Za-z_][A-Za-z0-9_]*|-?[0-9]+|#[^\n]*|\s+")


@dataclass
class _Tok:
    text: str
    line: int
    col: int


def _tokenize(text):
    toks = []
    line, col = 1, 1
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise DslSyntaxError(f"unexpected character {text[pos]!r}", line, col)
        lexeme = m.group(0)
        if not lexeme.isspace() and not lexeme.startswith("#"):
            toks.append(_Tok(lexeme, line, col))
        newlines = lexeme.count("\n")
        if newlines:
            line += newlines
            col = len(lexeme) - lexeme.rfind("\n")
        else:
            col += len(lexeme)
        pos = m.end()
    return toks


class _Parser:
    def __init__(self, text):
        self.toks = _tokenize(text)
        self.i = 0

    def _err(self, message):
        if self.i < len(self.toks):
            t = self.toks[self.i]
            raise DslSyntaxError(message, t.line, t.col)
        raise DslSyntaxError(message + " (at end of input)", 0, 0)

    def peek(self):
        return self.toks[self.i].text if self.i < len(self.toks) else None

    def take(self, expected=None):
        if self.i >= len(self.toks):
            self._err(f"expected {expected!r}, found end of input")
        tok = self.toks[self.i]
        if expected is not None and tok.text != expected:
            self._err(f"expected {expected!r}, found {tok.text!r}")
        self.i += 1
        return tok.text

    def ident(self, what="identifier"):
        tok = self.take()
        if not re.fullmatch(r"[A-Za-z_][A-Za-z0-9_]*", tok):
            self.i -= 1
            self._err(f"expected {what}, found {tok!r}")
        return tok

    def integer(self):
        tok = self.take()
        if not re.fullmatch(r"-?[0-9]+", tok):
            self.i -= 1
            self._err(f"expected integer, found {tok!r}")
        return int(tok)


@dataclass
class Document:
    graph: StagedGraph
    paths: dict = field(default_factory=dict)
    families: dict = field(default_factory=dict)


def _parse_block(p):
    p.take("block")
    name = p.ident("block name")
    p.take("{")
    vertices = []
    within = []
    rays = []
    while p.peek() != "}":
        head = p.take()
        if head == "vertex":
            vertices.append(p.ident("vertex name"))
            while p.peek() == ",":
                p.take(",")
                vertices.append(p.ident("vertex name"))
            p.take(";")
        elif head == "edge":
            eid = p.ident("edge id")
            p.take("range")
            rng = p.ident("vertex name")
            p.take("source")
            src = p.ident("vertex name")
            p.take(";")
            within.append(WithinSpec(eid, rng, src))
        elif head == "ray":
            rname = p.ident("ray name")
            p.take("attach")
            attach = p.ident("vertex name")
            p.take(";")
            rays.append(RaySpec(rname, attach))
        else:
            p.i -= 1
            p._err("expected vertex/edge/ray declaration")
    p.take("}")
    return StageBlock(name, tuple(vertices), tuple(within), tuple(rays))


def _parse_cross(p):
    p.take("cross")
    lower = p.ident("block name")
    p.take("->")
    upper = p.ident("block name")
    p.take("{")
    edges = []
    while p.peek() != "}":
        p.take("edge")
        eid = p.ident("edge id")
        p.take("range")
        rng = p.ident("vertex name")
        p.take("source")
        src = p.ident("vertex name")
        p.take(";")
        edges.append(CrossSpec(eid, rng, src))
    p.take("}")
    return CrossSection(lower, upper, tuple(edges))


def _parse_graph(p):
    p.take("graph")
    name = p.ident("graph name")
    p.take("{")
    base = []
    if p.peek() == "base":
        p.take("base")
        p.take("{")
        while p.peek() == "block":
            base.append(_parse_block(p))
        p.take("}")
    p.take("repeat")
    p.take("{")
    repeat = []
    while p.peek() == "block":
        repeat.append(_parse_block(p))
    p.take("}")
    sections = []
    while p.peek() == "cross":
        sections.append(_parse_cross(p))
    p.take("}")
    g = StagedGraph(name, tuple(base), tuple(repeat), tuple(sections))
    problems = validate_graph(g)
    for prob in problems:
        if "duplicate" in prob:
            raise DuplicateIdError(prob)
        if "undeclared" in prob or "unknown" in prob:
            raise ResolutionError(prob)
    if problems:
        raise InvalidGraph("; ".join(problems))
    return g


def _resolve_edgeref(g, name, stage, depth):
    if depth is not None:
        if g.block_at(stage).ray_by_name(name) is None:
            raise ResolutionError(f"no ray {name!r} at stage {stage}")
        return RayEdge(stage, name, depth)
    if g.block_at(stage).within_by_id(name) is not None:
        return WithinEdge(stage, name)
    if stage - 1 >= g.min_stage:
        sec = g.section_between(stage - 1)
        if sec is not None and sec.edge_by_id(name) is not None:
            return CrossEdge(stage, name)
    raise ResolutionError(f"no edge {name!r} at stage {stage}")


def _parse_edgeref(p, g):
    name = p.ident("edge id")
    p.take("@")
    stage = p.integer()
    depth = None
    if p.peek() == ":":
        p.take(":")
        depth = p.integer()
    return _resolve_edgeref(g, name, stage, depth)


def _parse_descent_steps(g, ids, start_stage):
    steps = []
    stage = start_stage
    for name in ids:
        if g.block_at(stage).within_by_id(name) is not None:
            steps.append(Step("within", name))
        else:
            sec = g.section_between(stage)
            if sec is not None and sec.edge_by_id(name) is not None:
                steps.append(Step("cross", name))
                stage += 1
            else:
                raise ResolutionError(
                    f"no edge {name!r} at stage {stage} in descent pattern")
    return tuple(steps)


def _parse_tailspec(p, g, allow_n):
    head = p.take()
    if head == "ray":
        ray = p.ident("ray name")
        p.take("at")
        p.take("stage")
        if p.peek() == "n":
            if not allow_n:
                p._err("stage 'n' is only allowed in family tails")
            p.take("n")
            return (RAY_AT_N, ray)
        stage = p.integer()
        return ("ray-lit", ray, stage)
    if head == "descent":
        p.take("[")
        ids = [p.ident("edge id")]
        while p.peek() == ",":
            p.take(",")
            ids.append(p.ident("edge id"))
        p.take("]")
        p.take("from")
        p.take("stage")
        start = p.integer()
        return ("descent-lit", ids, start)
    p.i -= 1
    p._err("expected 'ray' or 'descent' tail")


def _parse_path(p, g):
    p.take("path")
    name = p.ident("path name")
    p.take("{")
    p.take("prefix")
    prefix = []
    while p.peek() != ";":
        prefix.append(_parse_edgeref(p, g))
    p.take(";")
    p.take("tail")
    spec = _parse_tailspec(p, g, allow_n=False)
    p.take(";")
    p.take("}")
    if spec[0] == "ray-lit":
        tail = RayTail(spec[2], spec[1], 0)
    else:
        steps = _parse_descent_steps(g, spec[1], spec[2])
        tail = PeriodicDescent(spec[2], steps)
    return name, make_infinite_path(g, prefix, tail)


def _parse_family(p, g, paths):
    p.take("family")
    name = p.ident("family name")
    p.take("{")
    p.take("descend")
    descent_name = p.ident("path name")
    if descent_name not in paths:
        p._err(f"unknown path {descent_name!r} in descend clause")
    p.take("to")
    p.take("n")
    p.take(";")
    p.take("pivot")
    pivot = [p.ident("edge id")]
    while p.peek() == ",":
        p.take(",")
        pivot.append(p.ident("edge id"))
    p.take(";")
    p.take("tail")
    spec = _parse_tailspec(p, g, allow_n=True)
    p.take(";")
    p.take("min")
    n_min = p.integer()
    p.take(";")
    p.take("}")
    if spec[0] == RAY_AT_N:
        tail_template = (RAY_AT_N, spec[1])
    elif spec[0] == "ray-lit":
        tail_template = ("ray-fixed", spec[2], spec[1], 0)
    else:
        steps = _parse_descent_steps(g, spec[1], spec[2])
        tail_template = (DESCENT_FIXED, spec[2], steps)
    F = PathFamily(name, paths[descent_name], tuple(pivot), tail_template, n_min)
    validate_family(g, F)
    return name, F


def parse_document(text):
    p = _Parser(text)
    g = _parse_graph(p)
    doc = Document(g)
    while p.peek() is not None:
        head = p.peek()
        if head == "path":
            name, path = _parse_path(p, g)
            if name in doc.paths:
                raise DuplicateIdError(f"duplicate path {name!r}")
            doc.paths[name] = path
        elif head == "family":
            name, fam = _parse_family(p, g, doc.paths)
            if name in doc.families:
                raise DuplicateIdError(f"duplicate family {name!r}")
            doc.families[name] = fam
        else:
            p._err("expected 'path' or 'family' declaration")
    return doc


def parse_graph_dsl(text):
    return parse_document(text).graph


# ---------------------------------------------------------------------------
# Canonical pretty-printer
# ---------------------------------------------------------------------------

def _render_block(block, indent):
    pad = " " * indent
    out = [f"{pad}block {block.name} {{"]
    if block.vertices:
        out.append(f"{pad}  vertex {', '.join(block.vertices)};")
    for w in block.within_edges:
        out.append(f"{pad}  edge {w.edge_id} range {w.range_local} "
                   f"source {w.source_local};")
    for r in block.rays:
        out.append(f"{pad}  ray {r.name} attach {r.attach_local};")
    out.append(f"{pad}}}")
    return out


def render(g):
    """Canonical text form; parse_graph_dsl(render(g)) == g for valid g."""
    out = [f"graph {g.name} {{"]
    if g.base:
        out.append("  base {")
        for block in g.base:
            out.extend(_render_block(block, 4))
        out.append("  }")
    out.append("  repeat {")
    for block in g.repeat:
        out.extend(_render_block(block, 4))
    out.append("  }")
    for sec in g.sections:
        out.append(f"  cross {sec.lower} -> {sec.upper} {{")
        for c in sec.edges:
            out.append(f"    edge {c.edge_id} range {c.range_local} "
                       f"source {c.source_local};")
        out.append("  }")
    out.append("}")
    return "\n".join(out) + "\n"
