from typing import Any, Dict, Optional


class LabError(Exception):
    """Base class for every error raised by the laboratory."""

    kind = "lab"

    def details(self) -> Dict[str, Any]:
        """Structured context carried into error reports."""
        return {}


class StructuralError(LabError):
    """Mismatched rings, moduli or extents, or an argument outside an operation's domain."""

    kind = "structural"


class PolynomialSyntaxError(StructuralError):
    """Polynomial or operator text that cannot be read into the requested ring."""

    pass


class NonComplexError(LabError):
    """A sequence of maps whose consecutive composites do not vanish."""

    kind = "non_complex"

    def __init__(self, degree: int, product: Any, message: Optional[str] = None):
        self.degree = degree
        self.product = product
        super().__init__(
            message or f"d_{degree + 1} o d_{degree} is nonzero: {product}"
        )

    def details(self) -> Dict[str, Any]:
        return {"degree": self.degree, "product": str(self.product)}


class NonSmoothError(LabError):
    """A variety for which no smoothness certificate exists."""

    kind = "non_smooth"


class NonFlatError(LabError):
    """A connection that fails the integrability condition."""

    kind = "non_flat"


class UnstabilizedError(LabError):
    """Truncated computations that disagree across the stabilization window."""

    kind = "unstabilized"

    def __init__(self, truncation: int, window_values: Dict[int, Any]):
        self.truncation = truncation
        self.window_values = window_values
        super().__init__(
            f"Values did not stabilize up to truncation degree {truncation}: {window_values}"
        )

    def details(self) -> Dict[str, Any]:
        return {
            "truncation": self.truncation,
            "window_values": {str(k): v for k, v in self.window_values.items()},
        }


class InfiniteDimensionError(LabError):
    """A finite count was required but the quotient is infinite-dimensional."""

    kind = "infinite_dimension"

    def __init__(self, cap: int, message: Optional[str] = None):
        self.cap = cap
        super().__init__(message or f"Quotient is infinite-dimensional (cap {cap})")

    def details(self) -> Dict[str, Any]:
        return {"cap": self.cap}


class InternalInconsistencyError(LabError):
    """A computed value contradicts an inequality that always holds."""

    kind = "internal_inconsistency"


class PlanSyntaxError(LabError):
    """Plan text that is not well-formed."""

    kind = "plan_syntax"

    def __init__(self, message: str, line: Optional[int] = None, column: Optional[int] = None):
        self.line = line
        self.column = column
        position = f"line {line}, column {column}: " if line is not None else ""
        super().__init__(f"{position}{message}")

    def details(self) -> Dict[str, Any]:
        return {"line": self.line, "column": self.column}


class PlanValidationError(LabError):
    """A well-formed plan whose contents violate an experiment's preconditions."""

    kind = "plan_validation"

    def __init__(self, message: str, experiment_index: Optional[int] = None):
        self.experiment_index = experiment_index
        prefix = (
            f"experiment #{experiment_index}: " if experiment_index is not None else ""
        )
        super().__init__(f"{prefix}{message}")

    def details(self) -> Dict[str, Any]:
        return {"experiment_index": self.experiment_index}


class CacheError(LabError):
    """The computation cache could not be opened or used."""

    kind = "cache"
