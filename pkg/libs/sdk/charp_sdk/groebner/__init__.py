from .buchberger import ModuleGroebnerBasis, ideal_groebner, module_groebner
from .kernels import (
    columns_as_vectors,
    image_groebner,
    kernel_of_map,
    syzygies,
    vectors_as_matrix,
)
from .quotient import (
    ModuleSignature,
    hilbert_prefix,
    is_finite_quotient,
    module_signature,
    quotient_k_dimension,
    standard_basis,
)
from .vectors import FreeModuleVector, ModuleOrder

__all__ = [
    "FreeModuleVector",
    "ModuleGroebnerBasis",
    "ModuleOrder",
    "ModuleSignature",
    "columns_as_vectors",
    "hilbert_prefix",
    "ideal_groebner",
    "image_groebner",
    "is_finite_quotient",
    "kernel_of_map",
    "module_groebner",
    "module_signature",
    "quotient_k_dimension",
    "standard_basis",
    "syzygies",
    "vectors_as_matrix",
]
