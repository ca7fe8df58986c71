"""Brute-force reference implementations over finite truncations.

These deliberately share no logic with the symbolic engines: orbit members are
found by exhaustive path enumeration inside a materialized FiniteGraphSlice and
shift equivalence is checked by literal window alignment.  Counts are exact
once the truncation length passes stabilization and are one-sided lower bounds
before that (non-decreasing in L).
"""

from dataclasses import dataclass

from .errors import SliceTooSmall
from .groupoid import GroupoidElement
from .paths import concat_infinite, edge_at, shift


@dataclass(frozen=True)
class TruncatedPath:
    edges: tuple  # composable, fixed length L


def truncate(g, x, L):
    return TruncatedPath(tuple(edge_at(g, x, i) for i in range(L)))


def _check_in_slice(slc, edges, what):
    in_slice = set(slc.edges)
    for e in edges:
        if e not in in_slice:
            raise SliceTooSmall(
                f"{what} needs edge {e!r} outside slice horizon {slc.horizon}")


def _extensions(slc, start_edges, anchor, L):
    """All composable length-L edge tuples beginning with start_edges (or
    starting at anchor when start_edges is empty), inside the slice."""
    if len(start_edges) > L:
        return
    stack = [tuple(start_edges)]
    while stack:
        cur = stack.pop()
        if len(cur) == L:
            yield cur
            continue
        at = slc.sources[cur[-1]] if cur else anchor
        for e in slc.incoming(at):
            stack.append(cur + (e,))


def _splice_index(y, xpos, xT, agreement):
    """Smallest j such that y[j:] literally continues x, or None.

    y[j:] must match a contiguous run of xT and leave at least `agreement`
    matched edges, so short coincidences near the truncation boundary are not
    accepted.  Returns (j, t) with y[j] == xT[t].
    """
    L = len(y)
    for j in range(0, L - agreement + 1):
        t = xpos.get(y[j])
        if t is None:
            continue
        if t + (L - j) <= len(xT) and xT[t:t + (L - j)] == y[j:]:
            return j, t
    return None


def _orbit_truncations(g, slc, x, Z, L, agreement):
    alpha = Z.alpha
    if len(alpha.edges) + agreement > L:
        raise SliceTooSmall(
            f"L={L} leaves no room past |alpha|={len(alpha.edges)} "
            f"with agreement window {agreement}")
    xT = truncate(g, x, 2 * L).edges
    _check_in_slice(slc, xT[:L], "truncating x")
    _check_in_slice(slc, alpha.edges, "cylinder prefix")
    xpos = {}
    for i, e in enumerate(xT):
        xpos.setdefault(e, i)  # first occurrence; unique on principal graphs
    for y in _extensions(slc, alpha.edges, alpha.anchor, L):
        hit = _splice_index(y, xpos, xT, agreement)
        if hit is not None:
            yield y, hit


def brute_orbit_count(g, slc, x, Z, L, agreement=6):
    """#{distinct length-L truncations of paths in Z(alpha) equivalent to x}."""
    return sum(1 for _ in _orbit_truncations(g, slc, x, Z, L, agreement))


def brute_shift_lag(g, slc, x, y, L, agreement=6):
    """Lag found by literal window alignment of the two truncations, or None.

    Refutation-complete only up to L: a None may be a truncation artifact for
    adversarial inputs, so callers compare against the symbolic engine rather
    than trusting None outright.
    """
    if agreement >= L:
        raise SliceTooSmall(f"agreement window {agreement} >= L={L}")
    xT = truncate(g, x, L).edges
    yT = truncate(g, y, 2 * L).edges
    _check_in_slice(slc, xT, "truncating x")
    _check_in_slice(slc, yT[:L], "truncating y")
    hits = []
    for k in range(-(L - agreement), L):
        # x_i must equal y_{i+k} for all i past some point; demand agreement
        # on the final `agreement` comparable positions of the window
        idx = [i for i in range(L) if 0 <= i + k < 2 * L]
        if len(idx) < agreement:
            continue
        window = idx[-agreement:]
        if all(xT[i] == yT[i + k] for i in window):
            hits.append(k)
    if len(hits) == 1:
        return hits[0]
    if not hits:
        return None
    raise SliceTooSmall(
        f"ambiguous lags {hits} at L={L}; enlarge the truncation")


def brute_element_enum(g, slc, source, W, L, agreement=6):
    """All groupoid elements with the given source path and range in W, up to
    truncation, as concrete GroupoidElements sorted deterministically."""
    from .groupoid import path_key
    from .paths import FinitePath
    out = {}
    for y, (j, t) in _orbit_truncations(g, slc, source, W, L, agreement):
        tail_part = shift(g, source, t)
        if j == 0:
            rng = tail_part
        else:
            rng = concat_infinite(g, FinitePath(tuple(y[:j]), None), tail_part)
        out[path_key(rng)] = GroupoidElement(rng, t - j, source)
    return [out[k] for k in sorted(out)]
