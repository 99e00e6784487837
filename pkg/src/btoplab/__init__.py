"""Numerical workbench for block Toeplitz operators with matrix Laurent polynomial symbols."""

from .catalog import CATALOG, ExampleCatalogEntry, get_entry, run_entry
from .classify import (
    ClassificationReport,
    NotInEPhi,
    PreconditionError,
    check_ephi,
    classify,
    classify_dichotomy,
    injectivity_witness,
    is_hyponormal,
    is_normal_operator,
    k_hyponormality,
    kernel_invariance_check,
    verify_lemma31,
    verify_lemma32,
    verify_lemma33,
)
from .config import RunConfig
from .operators import (
    certified_product,
    dense_commutator,
    hankel,
    identity_suite,
    operator_word,
    self_commutator,
    toeplitz,
)
from .potapov import (
    BlaschkeFactor,
    PotapovProduct,
    is_inner,
    left_coprime_with_scalar_inner,
    model_space,
    right_coprime_with_scalar_inner,
)
from .symbol import LaurentMatrixSymbol, split

__version__ = "0.1.0"

__all__ = [
    "BlaschkeFactor", "CATALOG", "ClassificationReport", "ExampleCatalogEntry",
    "LaurentMatrixSymbol", "NotInEPhi", "PotapovProduct", "PreconditionError", "RunConfig",
    "certified_product", "check_ephi", "classify", "classify_dichotomy", "dense_commutator",
    "get_entry", "hankel", "identity_suite", "injectivity_witness", "is_hyponormal", "is_inner",
    "is_normal_operator", "k_hyponormality", "kernel_invariance_check",
    "left_coprime_with_scalar_inner", "model_space", "operator_word",
    "right_coprime_with_scalar_inner", "run_entry", "self_commutator", "split", "toeplitz",
    "verify_lemma31", "verify_lemma32", "verify_lemma33",
]
