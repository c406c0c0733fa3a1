"""Local distributed decision: a LOCAL-model simulator, certificate schemes,
lifts, lower-bound gadgets and brute-force search oracles."""

from .algorithms import (
    bipartite_verifier,
    eqsize_verifier,
    fpf_trees_verifier,
    parse_algorithm,
    tree_t_decider,
    tree_verifier,
)
from .certificates import make_certificate
from .graphs import Configuration, Graph, IdAssignment, ball, build_graph, views_isomorphic
from .languages import Language, member, parse_language
from .runtime import IdStrategy, check_decides, check_verifies, run_decider, run_verifier
from .search import CertSpace, min_cert_size, soundness_search

__version__ = "0.1.0"

__all__ = [
    "Configuration",
    "Graph",
    "IdAssignment",
    "IdStrategy",
    "Language",
    "CertSpace",
    "ball",
    "build_graph",
    "views_isomorphic",
    "member",
    "parse_language",
    "parse_algorithm",
    "make_certificate",
    "run_decider",
    "run_verifier",
    "check_decides",
    "check_verifies",
    "min_cert_size",
    "soundness_search",
    "tree_t_decider",
    "tree_verifier",
    "fpf_trees_verifier",
    "eqsize_verifier",
    "bipartite_verifier",
]
