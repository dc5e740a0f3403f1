"""Finite interpretations, simulations, bisimulations and homomorphisms."""
from .model import (
    Elem, FiniteInterpretation, InterpretationBuilder, elem_key, evaluate, from_abox,
)
from .semantics import all_interpretations, satisfies, violations
from .relations import (
    RelationWitness, check_bisimulation, check_simulation, equisimilar,
    greatest_bisimulation, greatest_simulation, is_simulation,
)
from .homomorphism import check_homomorphism, find_homomorphism, is_homomorphism
from .serialize import default_namer, parse_interpretation, print_interpretation
