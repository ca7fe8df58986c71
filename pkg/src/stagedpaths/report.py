"""Canonical report construction and JSON serialization.

Reports are plain dicts with a fixed field order.  Serialization is canonical:
2-space indentation, insertion-ordered keys, and integers above 2^53 - 1
rendered as decimal strings so that consumers reading doubles never lose
precision.  Parsing an emitted document and re-serializing it is
byte-identical.
"""

import json
import math

from .analysis import INF
from .graph import CrossEdge, RayEdge, WithinEdge
from .paths import PeriodicDescent, RayTail

MAX_SAFE_INT = 2 ** 53 - 1


def encode_number(v):
    if v is INF or v == math.inf:
        return "infinity"
    if isinstance(v, int) and abs(v) > MAX_SAFE_INT:
        return str(v)
    return v


def to_json(doc):
    return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"


def from_json(text):
    return json.loads(text)


def edge_text(e):
    if isinstance(e, WithinEdge):
        return f"{e.edge_id}@{e.stage}"
    if isinstance(e, CrossEdge):
        return f"{e.edge_id}@{e.upper_stage}"
    if isinstance(e, RayEdge):
        return f"{e.ray}@{e.stage}:{e.depth}"
    raise TypeError(f"not an edge: {e!r}")


def tail_text(tail):
    if isinstance(tail, RayTail):
        return f"ray {tail.ray} at stage {tail.stage} depth {tail.entry_depth}"
    if isinstance(tail, PeriodicDescent):
        ids = ", ".join(s.edge_id for s in tail.steps)
        return f"descent [{ids}] from stage {tail.start_stage}"
    raise TypeError(f"not a tail: {tail!r}")


def path_text(x):
    prefix = " ".join(edge_text(e) for e in x.prefix)
    if prefix:
        return f"prefix {prefix}; tail {tail_text(x.tail)}"
    return f"tail {tail_text(x.tail)}"


def row_dict(row):
    return {
        "m": row.m,
        "lambda_z": encode_number(row.lambda_z),
        "counts": [encode_number(c) for c in row.counts],
        "liminf": encode_number(row.liminf),
        "limsup": encode_number(row.limsup),
        "stabilization": row.stabilization,
    }


def witness_dict(w):
    shapes = []
    for rho, (items, tail) in enumerate(w.descriptors):
        shapes.append({
            "residue": rho,
            "deviation": [list(it) for it in items],
            "tail": list(tail),
        })
    return {
        "index": w.index,
        "shapes": shapes,
        "n_min": w.n_min,
    }


def analysis_report(g, family_name, limit, profile, k_lower, k_upper,
                    ml, mu, witnesses=(), audit=None):
    """Assemble the canonical report document (fixed field order)."""
    doc = {
        "graph": g.name,
        "family": family_name,
        "limit": path_text(limit),
        "ladder_depth": profile.ladder_depth,
        "window": list(profile.window),
        "rows": [row_dict(r) for r in profile.rows],
        "verdicts": {
            "k_lower": encode_number(k_lower),
            "k_upper": encode_number(k_upper),
            "ml": [encode_number(ml[0]), encode_number(ml[1])],
            "mu": [encode_number(mu[0]), encode_number(mu[1])],
        },
        "witnesses": [witness_dict(w) for w in witnesses],
        "audit": audit or {},
    }
    return doc
