"""Combinatorial path-groupoid analysis for staged graphs with rays."""

from .errors import (
    AnalysisRefused,
    InputError,
    StagedPathsError,
)
from .graph import (
    BlockVertex,
    CrossEdge,
    CrossSection,
    CrossSpec,
    FiniteGraphSlice,
    PathCounter,
    PrincipalityReport,
    RayEdge,
    RaySpec,
    RayVertex,
    StageBlock,
    StagedGraph,
    WithinEdge,
    WithinSpec,
    incoming_edges,
    is_principal,
    outgoing_edges,
    realize_slice,
    require_principal,
    validate_graph,
)
from .paths import (
    CylinderSet,
    FinitePath,
    InfinitePath,
    PathFamily,
    PeriodicDescent,
    RayTail,
    Step,
    concat,
    concat_infinite,
    cylinder,
    edge_at,
    family_converges_pointwise,
    in_cylinder,
    make_finite_path,
    make_infinite_path,
    materialize,
    path_range,
    path_source,
    prefix_path,
    shift,
    shift_lag,
    unique_path,
    validate_family,
    vertex_at,
)
from .groupoid import (
    BasicSet,
    Budget,
    CompactSet,
    CountResult,
    GroupoidElement,
    basic_contains,
    compose,
    count_at_source,
    elements_at_source,
    invert,
    invert_set,
    make_basic,
    make_compact,
    make_element,
    orbit_count,
    translate_set,
    unit,
)
from .dsl import Document, parse_document, parse_graph_dsl, render

__all__ = [name for name in dir() if not name.startswith("_")]
