"""Exact counting and uniform random generation of k-noncrossing partial
matchings, perfect matchings and RNA pseudoknot structures."""

from .counting import (
    NO_ONE_ARC,
    OSCILLATING,
    STAR,
    CountTable,
    PascalTable,
    build_tables,
    count,
    count_structures,
)
from .oracle import DiagramClass, enumerate_class, has_k_crossing, has_k_nesting
from .sampler import (
    RandomSource,
    SampledPath,
    sample_partial_matching,
    sample_perfect_matching,
    sample_structure,
    trace_probability,
)
from .tableau import PartialMatching, StarTableau, matching_to_tableau, tableau_to_matching

__version__ = "0.1.0"

__all__ = [
    "NO_ONE_ARC", "OSCILLATING", "STAR", "CountTable", "PascalTable", "build_tables",
    "count", "count_structures", "DiagramClass", "enumerate_class", "has_k_crossing",
    "has_k_nesting", "RandomSource", "SampledPath", "sample_partial_matching",
    "sample_perfect_matching", "sample_structure", "trace_probability",
    "PartialMatching", "StarTableau", "matching_to_tableau", "tableau_to_matching",
]
