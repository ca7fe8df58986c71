"""Randomized staged-graph documents for property testing.

The generator stays inside the audit-safe envelope: every graph has a single
spine descent z with lambda_z = 1 (the spine is the only edge out of v at each
stage), a ray-at-n family reaching the ray through 1-3 parallel rung edges
(optionally via an intermediate bundle vertex), and period 1 or 2.  Counts are
therefore always certifiably periodic, with per-residue values in 1..9.
"""

import random

from . import dsl


def random_document_text(rng=None, seed=None):
    rng = rng or random.Random(seed)
    p = rng.choice([1, 2])
    via_u = rng.random() < 0.5
    block_names = ["A", "B"][:p]
    lines = [f"graph rnd{p}{'u' if via_u else 'd'} {{", "  repeat {"]
    for name in block_names:
        verts = "v, u, w" if via_u else "v, w"
        lines.append(f"    block {name} {{")
        lines.append(f"      vertex {verts};")
        if via_u:
            for i in range(1, rng.randint(1, 3) + 1):
                lines.append(f"      edge a{i} range v source u;")
            for i in range(1, rng.randint(1, 3) + 1):
                lines.append(f"      edge f{i} range u source w;")
        else:
            for i in range(1, rng.randint(1, 3) + 1):
                lines.append(f"      edge f{i} range v source w;")
        lines.append("      ray t attach w;")
        lines.append("    }")
    lines.append("  }")
    for i, name in enumerate(block_names):
        upper = block_names[(i + 1) % p]
        lines.append(f"  cross {name} -> {upper} {{")
        lines.append("    edge spine range v source v;")
        lines.append("  }")
    lines.append("}")
    steps = ", ".join(["spine"] * p)
    lines.append(f"path z {{ prefix ; tail descent [{steps}] from stage 1 ; }}")
    pivot = "a1, f1" if via_u else "f1"
    lines.append(
        f"family xs {{ descend z to n ; pivot {pivot} ; "
        "tail ray t at stage n ; min 1 ; }")
    return "\n".join(lines) + "\n"


def random_document(rng=None, seed=None):
    return dsl.parse_document(random_document_text(rng, seed))
