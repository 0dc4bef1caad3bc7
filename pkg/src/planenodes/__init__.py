"""Exact lattice-polytope tools for counting the nodes of plane projections of
generic complete intersection curves with prescribed support."""

from .collection import Collection, essential_subcollection, multiplicity, multiplicity_d
from .fiber import ConsistencyError, FiberPolygon, fiber_identity_check, fiber_polygon
from .lattice_core import INFINITY, SupportSet, fiber_scale, ind_v, lattice_index, smith_normal_form
from .nodecount import (
    AssumptionError,
    analyze,
    check_assumptions,
    delta_sum_closure,
    delta_sum_conjecture,
    delta_sum_punctured,
    normalize_vertical,
)
from .polytope import DegenerateError, convex_hull, euler_char_ci, normalized_mixed_volume
from .singular import depth_kappa, fps_invariants, nested_boxes

__all__ = [
    "Collection",
    "essential_subcollection",
    "multiplicity",
    "multiplicity_d",
    "ConsistencyError",
    "FiberPolygon",
    "fiber_identity_check",
    "fiber_polygon",
    "INFINITY",
    "SupportSet",
    "fiber_scale",
    "ind_v",
    "lattice_index",
    "smith_normal_form",
    "AssumptionError",
    "analyze",
    "check_assumptions",
    "delta_sum_closure",
    "delta_sum_conjecture",
    "delta_sum_punctured",
    "normalize_vertical",
    "DegenerateError",
    "convex_hull",
    "euler_char_ci",
    "normalized_mixed_volume",
    "depth_kappa",
    "fps_invariants",
    "nested_boxes",
    "corpus_dir",
]

__version__ = "0.1.0"


def corpus_dir():
    """Directory holding the bundled example support sets."""
    from pathlib import Path

    return Path(__file__).with_name("corpus")
