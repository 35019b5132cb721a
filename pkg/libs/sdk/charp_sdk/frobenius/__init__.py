from .derham import (
    CartierReport,
    build_derham_pushforward,
    cartier_operator,
    cartier_verify,
    expected_cartier_profile,
    form_relations,
    inverse_cartier,
    inverse_cartier_matrix,
)
from .obstruction import ObstructionSequence, build_obstruction_sequence
from .splitting import SplittingModule, generated_algebra_dimension, splitting_module
from .structure import FrobeniusStructure, form_differential, frobenius_pushforward
from .varieties import AffineVariety

__all__ = [
    "AffineVariety",
    "CartierReport",
    "FrobeniusStructure",
    "ObstructionSequence",
    "SplittingModule",
    "build_derham_pushforward",
    "build_obstruction_sequence",
    "cartier_operator",
    "cartier_verify",
    "expected_cartier_profile",
    "form_differential",
    "form_relations",
    "frobenius_pushforward",
    "generated_algebra_dimension",
    "inverse_cartier",
    "inverse_cartier_matrix",
    "splitting_module",
]
