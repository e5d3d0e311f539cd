"""Minimization of incompletely specified generalized Mealy machines."""
from .boolset import MAX_PROPS, ArityError, Cube, PropSet, ValuationSet, disjoint_cube_cover
from .kiss import ParseError, parse, parse_kiss2, parse_xkiss, write_kiss2, write_xkiss
from .machine import (Edge, Igmm, PropositionMismatch, complete_with_sink, from_edges,
                      is_input_complete, isomorphic, reachable_prune, stats)
from .reduce import bisim_quotient, reduce_with_output_assignment
from .satmin import MinimizeOptions, MinimizeReport, minimize
from .verify import check_bisimilar, check_specialization, is_specialization

__all__ = [
    "MAX_PROPS", "ArityError", "Cube", "PropSet", "ValuationSet", "disjoint_cube_cover",
    "ParseError", "parse", "parse_kiss2", "parse_xkiss", "write_kiss2", "write_xkiss",
    "Edge", "Igmm", "PropositionMismatch", "complete_with_sink", "from_edges",
    "is_input_complete", "isomorphic", "reachable_prune", "stats",
    "bisim_quotient", "reduce_with_output_assignment",
    "MinimizeOptions", "MinimizeReport", "minimize",
    "check_bisimilar", "check_specialization", "is_specialization",
]
