"""Reconfiguration of vertex-disjoint paths in planar graphs."""

from .cli import decide, sequence
from .crossings import mu, mu_two_face
from .errors import ReconfError
from .generators import gen_cylinder, gen_ncl_planar, gen_ncl_stpaths
from .linkage import validate_linkage, verify_sequence
from .one_face import decide_one_face, sequence_one_face
from .oracle import oracle_decide, oracle_shortest
from .plane_graph import Instance, PlaneGraph, classify_instance
from .st_paths import decide_st, sequence_st
from .two_face import decide_two_face, sequence_two_face

__all__ = [
    "Instance",
    "PlaneGraph",
    "ReconfError",
    "classify_instance",
    "decide",
    "decide_one_face",
    "decide_st",
    "decide_two_face",
    "gen_cylinder",
    "gen_ncl_planar",
    "gen_ncl_stpaths",
    "mu",
    "mu_two_face",
    "oracle_decide",
    "oracle_shortest",
    "sequence",
    "sequence_one_face",
    "sequence_st",
    "sequence_two_face",
    "validate_linkage",
    "verify_sequence",
]
