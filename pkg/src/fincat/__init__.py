"""Finite-category computation: decide and certify (bi)products.

The library tabulates small categories, decides universal properties by
exhaustive enumeration, and certifies biproducts against three definitions
(the primary one via commuting idempotents, the zero-morphism one, and the
homset-addition one), plus the structural theorems tying them together.
"""

from .biproduct import (
    BiproductAssignment,
    BiproductWitness,
    CMonStructure,
    CMonStructureError,
    NaryBiproductWitness,
    canonical_assignment,
    check_biproduct,
    check_cmon_biproduct,
    check_nary_biproduct,
    check_sum_equals_product_of_morphisms,
    check_zero_def_biproduct,
    cmon_agree_all,
    definitions_agree,
    definitions_agree_all,
    find_biproducts,
    first_biproduct,
    swap_witness,
    ternary_from_nested,
    validate_cmon,
    verify_ambiadjunction,
    verify_corollary_zeros,
    verify_lemma_zero,
    verify_uniqueness,
)
from .core import (
    NO_COMPOSITE,
    FinCat,
    InternalConsistencyError,
    MalformedCategoryError,
    MorphismClass,
    PreconditionError,
    Verdict,
    ZeroStructure,
    classify_morphism,
    compose_chain,
    coproduct_category,
    find_zero_structure,
    opposite,
    validate_category,
    validate_structure,
    validate_zero_structure,
)
from .dsl import CatDoc, DslError, category_to_doc, doc_to_category, parse, render
from .gallery import (
    GalleryEntry,
    ResourceLimitError,
    SpecError,
    build_by_name,
    build_random_category,
    gallery_registry,
)
from .oracle import oracle_biproducts
from .universal import (
    CospanWitness,
    MediationError,
    SpanWitness,
    check_coproduct,
    check_product,
    comediate,
    find_coproducts,
    find_products,
    mediate,
)

__version__ = "0.1.0"

__all__ = [
    "BiproductAssignment",
    "BiproductWitness",
    "CMonStructure",
    "CMonStructureError",
    "CatDoc",
    "CospanWitness",
    "DslError",
    "FinCat",
    "GalleryEntry",
    "InternalConsistencyError",
    "MalformedCategoryError",
    "MediationError",
    "MorphismClass",
    "NO_COMPOSITE",
    "NaryBiproductWitness",
    "PreconditionError",
    "ResourceLimitError",
    "SpanWitness",
    "SpecError",
    "Verdict",
    "ZeroStructure",
    "build_by_name",
    "build_random_category",
    "canonical_assignment",
    "category_to_doc",
    "check_biproduct",
    "check_cmon_biproduct",
    "check_coproduct",
    "check_nary_biproduct",
    "check_product",
    "check_sum_equals_product_of_morphisms",
    "check_zero_def_biproduct",
    "classify_morphism",
    "cmon_agree_all",
    "comediate",
    "compose_chain",
    "coproduct_category",
    "definitions_agree",
    "definitions_agree_all",
    "doc_to_category",
    "find_biproducts",
    "find_coproducts",
    "find_products",
    "find_zero_structure",
    "first_biproduct",
    "gallery_registry",
    "mediate",
    "opposite",
    "oracle_biproducts",
    "parse",
    "render",
    "swap_witness",
    "ternary_from_nested",
    "validate_category",
    "validate_cmon",
    "validate_structure",
    "validate_zero_structure",
    "verify_ambiadjunction",
    "verify_corollary_zeros",
    "verify_lemma_zero",
    "verify_uniqueness",
]
