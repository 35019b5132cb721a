from .grid import CechDeRhamGrid, build_grid
from .hodge import (
    DEFAULT_WINDOW,
    DegenerationVerdict,
    DeRhamDimensions,
    HodgeNumbers,
    build_window,
    degeneration_check,
    derham_hypercohomology,
    hodge_numbers,
)
from .sections import FormCoordinates, SectionSpace, form_coordinates, relation_rows, section_space
from .varieties import ProjectiveVariety, dehomogenize

__all__ = [
    "DEFAULT_WINDOW",
    "CechDeRhamGrid",
    "DeRhamDimensions",
    "DegenerationVerdict",
    "FormCoordinates",
    "HodgeNumbers",
    "ProjectiveVariety",
    "SectionSpace",
    "build_grid",
    "build_window",
    "degeneration_check",
    "dehomogenize",
    "derham_hypercohomology",
    "form_coordinates",
    "hodge_numbers",
    "relation_rows",
    "section_space",
]
