"""Orthogonal drawings of plane graphs with few segments."""

from .analysis import (
    Segment,
    brute_force_min_bends,
    brute_force_mso,
    extract_segments,
    find_conflicts,
    find_hamiltonian_path,
    is_planar_drawing,
    min_cover_of_drawing,
    segment_count,
)
from .compaction import Drawing, OrthoShape, compact, refine_to_rectangles, shape_from_rep
from .drawers import (
    draw_general,
    draw_general_mso,
    draw_sp_upward,
    draw_spine,
    draw_tree_min_segments,
    draw_tree_upward,
)
from .errors import OrthoError
from .estimator import MinSegmentDrawer, check_plane_graph
from .flow_net import BEND_MIN_COSTS, MSO_COSTS, CostParams, build_classic_network, build_modified_network, min_cost_flow
from .ortho_rep import OrthoRep, decode_flow, rep_from_drawing, segment_stats, validate_rep
from .plane_graph import PlaneGraph, RootedTree, build_plane_graph, closure
from .spqtree import build_spq_tree, check_lemma4

__all__ = [
    "BEND_MIN_COSTS",
    "MSO_COSTS",
    "CostParams",
    "Drawing",
    "MinSegmentDrawer",
    "OrthoError",
    "OrthoRep",
    "OrthoShape",
    "PlaneGraph",
    "RootedTree",
    "Segment",
    "brute_force_min_bends",
    "brute_force_mso",
    "build_classic_network",
    "build_modified_network",
    "build_plane_graph",
    "build_spq_tree",
    "check_lemma4",
    "check_plane_graph",
    "closure",
    "compact",
    "decode_flow",
    "draw_general",
    "draw_general_mso",
    "draw_sp_upward",
    "draw_spine",
    "draw_tree_min_segments",
    "draw_tree_upward",
    "extract_segments",
    "find_conflicts",
    "find_hamiltonian_path",
    "is_planar_drawing",
    "min_cost_flow",
    "min_cover_of_drawing",
    "refine_to_rectangles",
    "rep_from_drawing",
    "segment_count",
    "segment_stats",
    "shape_from_rep",
    "validate_rep",
]
