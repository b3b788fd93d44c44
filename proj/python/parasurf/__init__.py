"""Exact computations in free nilpotent groups F_{k,c} and one-relator quotients."""

from ._parasurf import (
    ParseError,
    UsageError,
    Word,
    closures_equal,
    decide_conjugacy,
    is_member,
    layer_invariants,
    lyndon_words,
    paper_suite,
    surface_layer_rank,
    surface_relator,
    witt_rank,
)

__all__ = [
    "ParseError",
    "UsageError",
    "Word",
    "closures_equal",
    "decide_conjugacy",
    "is_member",
    "layer_invariants",
    "lyndon_words",
    "paper_suite",
    "surface_layer_rank",
    "surface_relator",
    "witt_rank",
]
