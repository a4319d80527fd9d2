"""Vertex-minor operations, certified wheel extraction and a brute-force oracle."""

from .errors import InputError, ResourceError, SearchFailure, TraceError
from .graph_core import Graph, from_graph6, local_complement, pivot, smooth, to_graph6, wheel
from .pipeline import HuntConfig, WitnessReport, chromatic_number, find_induced_cycle, hunt_wheel
from .structures import StructureSpec, make, validate
from .vm_oracle import OrbitBudget, Trace, has_vertex_minor, replay, wheel_order

__version__ = "0.1.0"

__all__ = [
    "Graph",
    "HuntConfig",
    "InputError",
    "OrbitBudget",
    "ResourceError",
    "SearchFailure",
    "StructureSpec",
    "Trace",
    "TraceError",
    "WitnessReport",
    "chromatic_number",
    "find_induced_cycle",
    "from_graph6",
    "has_vertex_minor",
    "hunt_wheel",
    "local_complement",
    "make",
    "pivot",
    "replay",
    "smooth",
    "to_graph6",
    "validate",
    "wheel",
    "wheel_order",
]
