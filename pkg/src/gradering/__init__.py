"""Exact computations with finite group-graded rings."""

__version__ = "0.1.0"

from .algebra import FiniteGroup, FiniteRing, cyclic_group, cyclic_ring, make_group, make_ring, named_group
from .classify import (
    classify,
    element_classes,
    graded_jacobson_radical,
    graded_nil_good_decomposition,
    is_graded_fine,
    is_graded_local,
    is_graded_nil_good,
    is_nil_good_ring,
    jacobson_radical,
)
from .constructions import (
    MatrixGradingSpec,
    group_ring_coarse,
    group_ring_graded,
    make_bimodule,
    matrix_graded,
    product_graded,
    regular_bimodule,
    trivial_extension,
)
from .corpus import CorpusSpec, build_corpus
from .graded import GradedRing, validate_grading
from .harness import audit_example_e4_3, search_counterexample, verify_theorem
from .laurent import Kind, SymbolicGradedRing, symbolic_is_graded_nil_good, truncated_polynomial
from .recipes import build

__all__ = [
    "CorpusSpec",
    "FiniteGroup",
    "FiniteRing",
    "GradedRing",
    "Kind",
    "MatrixGradingSpec",
    "SymbolicGradedRing",
    "audit_example_e4_3",
    "build",
    "build_corpus",
    "classify",
    "cyclic_group",
    "cyclic_ring",
    "element_classes",
    "graded_jacobson_radical",
    "graded_nil_good_decomposition",
    "group_ring_coarse",
    "group_ring_graded",
    "is_graded_fine",
    "is_graded_local",
    "is_graded_nil_good",
    "is_nil_good_ring",
    "jacobson_radical",
    "make_bimodule",
    "make_group",
    "make_ring",
    "matrix_graded",
    "named_group",
    "product_graded",
    "regular_bimodule",
    "search_counterexample",
    "symbolic_is_graded_nil_good",
    "trivial_extension",
    "truncated_polynomial",
    "validate_grading",
    "verify_theorem",
]
