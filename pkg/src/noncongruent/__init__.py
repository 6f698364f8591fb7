"""Non-congruent number certification via GF(2) Monsky matrix ranks.

A square-free positive integer n is certified non-congruent when the
2-Selmer rank s(n) of the curve y^2 = x^3 - n^2 x vanishes; s(n) is read
off the rank of a 2m x 2m matrix over the two-element field built from
Legendre symbols among n's odd prime factors.  The package also encodes
six infinite families whose members all satisfy s(n) = 0, searches for
their members, and compares member counts against asymptotic densities.
"""

from .arith import (
    DivisibilityError,
    NotSquareFreeError,
    SquareFreeFactorization,
    factor_squarefree,
    is_prime,
    jacobi,
    legendre,
    phi_bit,
    primes_in_class,
    sieve_primes,
)
from .density import (
    DensityReport,
    ResourceCapError,
    count_family,
    count_squarefree_k_primes,
    family_asymptotic,
    family_members,
    landau_asymptotic,
)
from .families import (
    MULTIPLIER,
    ROLE_ORDER,
    ROLE_RESIDUES,
    THEOREM_IDS,
    ConditionReport,
    FamilySpec,
    PrimeTuple,
    TheoremContradictionError,
    assemble_n,
    check_conditions,
    conditions_for,
    cross_validate,
    search,
)
from .gf2 import (
    F2Matrix,
    SchurNotApplicableError,
    ShapeError,
    SingularMatrixError,
    block_compose,
    schur_det,
)
from .monsky import (
    Certificate,
    MonskyMatrix,
    build_D,
    build_E,
    build_monsky,
    certify,
    monsky_matrix,
    selmer_rank,
)
from .structured import (
    CoherenceError,
    CoherentPrimeList,
    LemmaItem,
    LemmaReport,
    mat_D_lk,
    mat_L,
    mat_N,
    mat_T,
    mat_U,
    verify_lemma_identities,
)

__all__ = [
    "Certificate",
    "CoherenceError",
    "CoherentPrimeList",
    "ConditionReport",
    "DensityReport",
    "DivisibilityError",
    "F2Matrix",
    "FamilySpec",
    "LemmaItem",
    "LemmaReport",
    "MonskyMatrix",
    "MULTIPLIER",
    "NotSquareFreeError",
    "PrimeTuple",
    "ResourceCapError",
    "ROLE_ORDER",
    "ROLE_RESIDUES",
    "SchurNotApplicableError",
    "ShapeError",
    "SingularMatrixError",
    "SquareFreeFactorization",
    "THEOREM_IDS",
    "TheoremContradictionError",
    "assemble_n",
    "block_compose",
    "build_D",
    "build_E",
    "build_monsky",
    "certify",
    "check_conditions",
    "conditions_for",
    "count_family",
    "count_squarefree_k_primes",
    "cross_validate",
    "factor_squarefree",
    "family_asymptotic",
    "family_members",
    "is_prime",
    "jacobi",
    "landau_asymptotic",
    "legendre",
    "mat_D_lk",
    "mat_L",
    "mat_N",
    "mat_T",
    "mat_U",
    "monsky_matrix",
    "phi_bit",
    "primes_in_class",
    "schur_det",
    "search",
    "selmer_rank",
    "sieve_primes",
    "verify_lemma_identities",
]
