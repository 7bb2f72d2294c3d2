"""Structural detectors used for win conditions and invariant checks."""

from .matching import matching_at_least, matching_number, maximum_matching
from .metrics import average_degree, girth, m2_density
from .minors import (
    MinorEmbedding,
    embedding_errors,
    find_subdivision,
    has_minor,
    has_topological_minor,
    is_valid_embedding,
)
from .mprime import default_degree_cap, mprime_filter
from .pair_process import PairProcessState, invariant_errors, pair_process_step
from .paths import find_path, longest_path_at_least
from .patterns import PatternGraph, parse_pattern, read_pattern_text, write_pattern_text
from .sparse import SparseGraph

__all__ = [
    "MinorEmbedding",
    "PairProcessState",
    "PatternGraph",
    "SparseGraph",
    "average_degree",
    "default_degree_cap",
    "embedding_errors",
    "find_path",
    "find_subdivision",
    "girth",
    "has_minor",
    "has_topological_minor",
    "invariant_errors",
    "is_valid_embedding",
    "longest_path_at_least",
    "m2_density",
    "matching_at_least",
    "matching_number",
    "maximum_matching",
    "mprime_filter",
    "pair_process_step",
    "parse_pattern",
    "read_pattern_text",
    "write_pattern_text",
]
