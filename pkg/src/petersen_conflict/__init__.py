"""Maximal planar subgraphs, strong conflict graphs and mod-2 linking search
for the seven Petersen-family graphs."""

from .conflict import BalanceVerdict, SignedMultigraph, is_balanced, strong_conflict_graph
from .family import FAMILY_NAMES, family_closure, family_member
from .graph import (
    SmallGraph,
    automorphism_group,
    build_graph,
    delta_to_wye,
    disjoint_cycle_pairs,
    enumerate_cycles,
    has_forbidden_minor,
    is_apex,
    orbit_dedup,
    wye_to_delta,
)
from .linking import (
    build_diagram,
    configurations,
    find_odd_pair,
    linking_parity,
    pairwise_base_parities,
    anti_conflict_witness,
    route_arc,
    search_diagram,
)
from .mps import MpsRecord, enumerate_mps, is_maximal_planar, verify_mps_transfer
from .planarity import SphereEmbedding, enumerate_sphere_embeddings, faces, is_planar

__all__ = [
    "BalanceVerdict",
    "FAMILY_NAMES",
    "MpsRecord",
    "SignedMultigraph",
    "SmallGraph",
    "SphereEmbedding",
    "anti_conflict_witness",
    "automorphism_group",
    "build_diagram",
    "build_graph",
    "configurations",
    "delta_to_wye",
    "disjoint_cycle_pairs",
    "enumerate_cycles",
    "enumerate_mps",
    "enumerate_sphere_embeddings",
    "faces",
    "family_closure",
    "family_member",
    "find_odd_pair",
    "has_forbidden_minor",
    "is_apex",
    "is_balanced",
    "is_maximal_planar",
    "is_planar",
    "linking_parity",
    "orbit_dedup",
    "pairwise_base_parities",
    "route_arc",
    "search_diagram",
    "strong_conflict_graph",
    "verify_mps_transfer",
    "wye_to_delta",
]
