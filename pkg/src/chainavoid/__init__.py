"""Counting permutations that avoid a chain of patterns across their powers."""

__version__ = "0.1.0"

from .chains import (
    ChainSpec,
    avoids_chain,
    count_chain_312_321,
    count_chain_312_4321,
    count_chain_bruteforce,
)
from .compcount import AvoiderCounter, count_avoiders, count_avoiders_bruteforce
from .compositions import Composition, CompositionSet, generate_compositions
from .errors import BOUNDS, BoundExceededError, ChainAvoidError, NotInOmegaError, ParseError
from .omega import c_of_sigma, enumerate_omega, in_omega, omega_count, omega_decompose
from .perm import PatternSet, Permutation, contains, rci

__all__ = [
    "AvoiderCounter", "BOUNDS", "BoundExceededError", "ChainAvoidError", "ChainSpec",
    "Composition", "CompositionSet", "NotInOmegaError", "ParseError", "PatternSet",
    "Permutation", "avoids_chain", "c_of_sigma", "contains", "count_avoiders",
    "count_avoiders_bruteforce", "count_chain_312_321", "count_chain_312_4321",
    "count_chain_bruteforce", "enumerate_omega", "generate_compositions", "in_omega",
    "omega_count", "omega_decompose", "rci",
]
