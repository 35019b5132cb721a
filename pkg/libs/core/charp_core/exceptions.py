from charp_core._exceptions import (
    CacheError,
    InfiniteDimensionError,
    InternalInconsistencyError,
    LabError,
    NonComplexError,
    NonFlatError,
    NonSmoothError,
    PlanSyntaxError,
    PlanValidationError,
    PolynomialSyntaxError,
    StructuralError,
    UnstabilizedError,
)

__all__ = [
    "CacheError",
    "InfiniteDimensionError",
    "InternalInconsistencyError",
    "LabError",
    "NonComplexError",
    "NonFlatError",
    "NonSmoothError",
    "PlanSyntaxError",
    "PlanValidationError",
    "PolynomialSyntaxError",
    "StructuralError",
    "UnstabilizedError",
]
