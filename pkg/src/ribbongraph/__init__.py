"""Ribbon graphs as arrow presentations: partial duals, medial-graph
directions, and Eulerian / bipartite / even-face partial duals."""

from .presentation import (
    ArrowPresentation,
    ParseError,
    ValidationError,
    is_bipartite,
    is_eulerian,
    parse,
    serialize,
    underlying_graph,
    validate,
    vertex_degrees,
)
from .tracing import (
    boundary_components,
    is_even_face,
    is_even_state,
    state_circles,
    straight_ahead_walks,
    trace,
    transition_system,
)
from .duality import (
    geometric_dual,
    is_orientable,
    normal_form,
    partial_dual,
    surface_invariants,
)

__version__ = "0.1.0"
