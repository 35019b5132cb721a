from .chain import ChainComplex, exterior_basis, koszul_complex, make_complex, wedge_sign
from .forms import Form, Subset, add_forms, contract, exterior_derivative, scale_form, wedge_one_form
from .cohomology import (
    CohomologyEntry,
    CohomologyPresentation,
    CohomologyProfile,
    cohomology_profile,
    compare_entries,
    compare_profiles,
    cycle_generators,
    finite_profile,
    free_rank_of_quotient,
    minimize,
    present_cohomology,
    quotient_entry,
    smith_profile,
)

__all__ = [
    "ChainComplex",
    "Form",
    "Subset",
    "add_forms",
    "contract",
    "exterior_derivative",
    "scale_form",
    "wedge_one_form",
    "CohomologyEntry",
    "CohomologyPresentation",
    "CohomologyProfile",
    "cohomology_profile",
    "compare_entries",
    "compare_profiles",
    "cycle_generators",
    "exterior_basis",
    "finite_profile",
    "free_rank_of_quotient",
    "koszul_complex",
    "make_complex",
    "minimize",
    "present_cohomology",
    "quotient_entry",
    "smith_profile",
    "wedge_sign",
]
