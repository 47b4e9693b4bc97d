from .matrix import De9imMatrix, dim, matches, matrix_to_string
from .predicates import PREDICATES, all_predicates, evaluate, predicate, supported
from .relate import UnsupportedPair, relate, relate_string

__all__ = [
    "De9imMatrix",
    "PREDICATES",
    "UnsupportedPair",
    "all_predicates",
    "dim",
    "evaluate",
    "matches",
    "matrix_to_string",
    "predicate",
    "relate",
    "relate_string",
    "supported",
]
