"""Hamiltonian-cycle multisigns in multisigned complete graphs."""

from .gf2 import Gf2Basis, Multisign, RealizationVerdict, classify_set, solve_combination, span_basis
from .graph import (
    CycleSubgraph,
    HamiltonianCycle,
    MultisignedCompleteGraph,
    add_constant,
    cycle_multisign,
    normalize_vertex,
    switch,
    triangle_census,
)

__all__ = [
    "CycleSubgraph",
    "Gf2Basis",
    "HamiltonianCycle",
    "Multisign",
    "MultisignedCompleteGraph",
    "RealizationVerdict",
    "add_constant",
    "classify_set",
    "cycle_multisign",
    "normalize_vertex",
    "solve_combination",
    "span_basis",
    "switch",
    "triangle_census",
]
