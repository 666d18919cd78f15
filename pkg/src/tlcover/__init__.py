"""Exact fixed-parameter solver for minimum-span temporal vertex covers."""

from .compression import solve_min_timeline_cover
from .core import (
    TemporalAssignment,
    TemporalCover,
    TemporalGraph,
    induced_subgraph,
    is_temporal_cover,
    pad_dummy_timestamps,
    span_of,
    total_span,
)
from .oracle import brute_force_min_cover, zero_span_decider

__version__ = "0.1.0"

__all__ = [
    "TemporalAssignment",
    "TemporalCover",
    "TemporalGraph",
    "brute_force_min_cover",
    "induced_subgraph",
    "is_temporal_cover",
    "pad_dummy_timestamps",
    "solve_min_timeline_cover",
    "span_of",
    "total_span",
    "zero_span_decider",
]
