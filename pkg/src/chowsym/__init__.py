"""Orbit combinatorics and Chow groups of GL(2n)/SO(2n)."""

from .chow_engine import (
    ChowPresentation, GradedAbelianGroup, base_chow_group, build_presentation,
    certificate, chow_group,
)
from .double_cover import (
    fiber_dimension, fibration_image, fibration_pullback, orbit_splits,
    stabilizer_component_order, survivor_involution,
)
from .export import export_dot, export_json, graph_from_json
from .orbit_poset import (
    Orbit, OrbitGraph, build_orbit_graph, closure_contains, orbit_codimension,
    orbit_codimension_oracle, representative_form, stratum_index,
)
from .perm_core import (
    Involution, bruhat_leq, coxeter_length, cycle_stats, enumerate_involutions,
    parse_involution, rank_table,
)
from .snf import smith_normal_form

__version__ = "0.1.0"
