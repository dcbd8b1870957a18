"""Finite-model toolkit for Bochvar algebras, Płonka sums and Bochvar systems."""
from .algebra import (
    AlgebraError, Congruence, FiniteAlgebra, Homomorphism, SignatureError,
    all_congruences, direct_product, enumerate_homs, find_isomorphism,
    is_subdirectly_irreducible, principal_congruence, quotient_algebra, subalgebra,
)
from .terms import check_identity, check_quasi_identity, evaluate, parse_term, tautology

__all__ = [
    "AlgebraError", "Congruence", "FiniteAlgebra", "Homomorphism", "SignatureError",
    "all_congruences", "direct_product", "enumerate_homs", "find_isomorphism",
    "is_subdirectly_irreducible", "principal_congruence", "quotient_algebra", "subalgebra",
    "check_identity", "check_quasi_identity", "evaluate", "parse_term", "tautology",
]
