from .fp_matrix import FpMatrix, RowReducer, RREFResult, rref, solve
from .smith import SmithDecomposition, smith_normal_form

__all__ = [
    "FpMatrix",
    "RREFResult",
    "RowReducer",
    "SmithDecomposition",
    "rref",
    "smith_normal_form",
    "solve",
]
