"""Rooted trees, free trees and hamiltonian B-series in exact arithmetic."""

from .algebra import Combination, diamond, lie_bracket, prelie, quotient_superfluous, xtilde
from .trees import (
    FreeTree,
    RootedTree,
    butcher,
    canonical_representative,
    enumerate_free,
    enumerate_rooted,
    epsilon,
    format_tree,
    graft_at,
    is_superfluous,
    link,
    murua_compare,
    parse_tree,
    project,
    root_at,
    rooting_count,
    symmetry_factor,
)

__all__ = [
    "Combination",
    "diamond",
    "lie_bracket",
    "prelie",
    "quotient_superfluous",
    "xtilde",
    "FreeTree",
    "RootedTree",
    "butcher",
    "canonical_representative",
    "enumerate_free",
    "enumerate_rooted",
    "epsilon",
    "format_tree",
    "graft_at",
    "is_superfluous",
    "link",
    "murua_compare",
    "parse_tree",
    "project",
    "root_at",
    "rooting_count",
    "symmetry_factor",
]

__version__ = "0.1.0"
