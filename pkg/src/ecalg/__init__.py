"""Exact classification toolkit for 2-dimensional algebras over small fields.

Represents a 2-dimensional nonassociative algebra by its 4x2 structure
matrix over an exact field (F_p, GF(p^k) or Q), decides endo-commutativity,
straightness, rank and isomorphism, classifies endo-commutative straight
rank-1 algebras into the four canonical families Z, N, L(lam), U, and
exhaustively verifies the classification over small finite fields.
"""

from .fields import (parse_field, PrimeField, ExtensionField, RationalField,
                     FFElement, matrix_rank, matrix_det, solve_linear,
                     FieldError, FieldSyntaxError, NonPrimeCharacteristicError,
                     ReducibleModulusError, NotEnumerableError,
                     EnumerationCapError, MixedFieldError)
from .algebra import (StructureMatrix, BasisChange, SingularMatrixError,
                      tilde, transform, induced_map, gl2_elements, vectors,
                      parse_table)
from .predicates import (is_ec_criterion, is_ec_bruteforce, is_straight,
                         straightness_witness, is_commutative,
                         is_anti_commutative, is_associative, find_unit)
from .sform import (SForm, parse_sform, normalize_straight, sform_is_ec,
                    rank1_ec_membership, check_iso_witness, rank1_iso_search,
                    CurledAlgebraError)
from .classify import (CanonicalForm, canonical_table, all_canonical_forms,
                       classify_rank1_sform, classify_algebra,
                       bruteforce_isomorphic, property_profile,
                       PropertyProfile, ClassificationError,
                       NotEndoCommutativeError, NotRankOneError,
                       NotStraightError)
from .verify import run_suite, SUITES

__version__ = "0.1.0"

__all__ = [
    "parse_field", "PrimeField", "ExtensionField", "RationalField",
    "FFElement", "matrix_rank", "matrix_det", "solve_linear",
    "FieldError", "FieldSyntaxError", "NonPrimeCharacteristicError",
    "ReducibleModulusError", "NotEnumerableError", "EnumerationCapError",
    "MixedFieldError",
    "StructureMatrix", "BasisChange", "SingularMatrixError",
    "tilde", "transform", "induced_map", "gl2_elements", "vectors",
    "parse_table",
    "is_ec_criterion", "is_ec_bruteforce", "is_straight",
    "straightness_witness", "is_commutative", "is_anti_commutative",
    "is_associative", "find_unit",
    "SForm", "parse_sform", "normalize_straight", "sform_is_ec",
    "rank1_ec_membership", "check_iso_witness", "rank1_iso_search",
    "CurledAlgebraError",
    "CanonicalForm", "canonical_table", "all_canonical_forms",
    "classify_rank1_sform", "classify_algebra", "bruteforce_isomorphic",
    "property_profile", "PropertyProfile", "ClassificationError",
    "NotEndoCommutativeError", "NotRankOneError", "NotStraightError",
    "run_suite", "SUITES",
]
