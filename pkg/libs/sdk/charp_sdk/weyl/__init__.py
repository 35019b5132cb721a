from .connections import Connection, p_curvature, p_curvature_apply
from .element import WeylElement, apply_operator, check_order, parse_operator, weyl_mul
from .identities import (
    WeylIdentityResult,
    is_associative,
    is_central,
    psi_lemma_holds,
    random_weyl_element,
    twist_is_automorphism,
    weyl_identities,
)
from .vector_fields import VectorField, center_map, restricted_power, twist_automorphism

__all__ = [
    "Connection",
    "VectorField",
    "WeylElement",
    "WeylIdentityResult",
    "apply_operator",
    "center_map",
    "check_order",
    "is_associative",
    "is_central",
    "p_curvature",
    "p_curvature_apply",
    "parse_operator",
    "psi_lemma_holds",
    "random_weyl_element",
    "restricted_power",
    "twist_automorphism",
    "twist_is_automorphism",
    "weyl_identities",
    "weyl_mul",
]
