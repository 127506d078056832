"""Causal structure learning from conditional independencies of bounded order."""

from .ci import CIError, CISet, CIStatement, format_ci, generate_from_dag, parse_ci
from .dsep import SeparationQuery, d_separated, d_separated_bruteforce, is_d_separated
from .engine import Representation, incompatible, k_partial_graph, loci_trace, run_loci, stage2_remove
from .faithfulness import (
    FaithfulFamily,
    boundary_algorithm_k0,
    brute_force_representation,
    check_k0_equivalence,
    decide_representable,
    enumerate_faithful,
    is_k_faithful,
)
from .graph import (
    EdgeKind,
    Graph,
    GraphError,
    NotADAGError,
    ancestors,
    descendants,
    edge_kind,
    format_graph,
    is_dag,
    parse_graph,
    skeleton,
    topological_order,
    v_structures,
)
from .meek import consistent_extension, cpdag_of, is_cpdag, meek_closure

__version__ = "0.1.0"
