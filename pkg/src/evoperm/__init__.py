"""Exact analysis of evolution algebras built from two permutations."""
from .algebra import (
    AlgebraError,
    EqualPermutationsError,
    PermEvolutionAlgebra,
    equation_matrix,
    multiply,
    square,
    structural_matrix,
    system_matrix,
)
from .baric import WeightFunction, find_weights, is_character
from .exactnum import RationalMatrix, SqrtRational, det, rank, reduced_coefficients, sqrt_normalize
from .idempotent import classify_cubic, particular_idempotents, solve_n2, verify_idempotent
from .nilpotent import solve as solve_nilpotent
from .nilpotent import verify_nilpotent
from .perm import Permutation, compose, cycles, fixed_points, inverse
from .structure import canonical_cycle_identity, canonical_inverse_pair, decompose, verify_isomorphism

__version__ = "0.1.0"

__all__ = [
    "AlgebraError",
    "EqualPermutationsError",
    "PermEvolutionAlgebra",
    "equation_matrix",
    "multiply",
    "square",
    "structural_matrix",
    "system_matrix",
    "WeightFunction",
    "find_weights",
    "is_character",
    "RationalMatrix",
    "SqrtRational",
    "det",
    "rank",
    "reduced_coefficients",
    "sqrt_normalize",
    "classify_cubic",
    "particular_idempotents",
    "solve_n2",
    "verify_idempotent",
    "solve_nilpotent",
    "verify_nilpotent",
    "Permutation",
    "compose",
    "cycles",
    "fixed_points",
    "inverse",
    "canonical_cycle_identity",
    "canonical_inverse_pair",
    "decompose",
    "verify_isomorphism",
]
