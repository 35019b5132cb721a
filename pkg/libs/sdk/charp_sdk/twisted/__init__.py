from .bk import BKComparison, bk_report, compare_twisted_complexes, predicted_profile
from .critical import CriticalLocusAnalysis, critical_locus, find_retraction, tangent_generators
from .superpotential import Superpotential, build_twisted_pushforward, build_wedge_complex
from .support import LSupportResult, verify_L_support

__all__ = [
    "BKComparison",
    "CriticalLocusAnalysis",
    "LSupportResult",
    "Superpotential",
    "bk_report",
    "build_twisted_pushforward",
    "build_wedge_complex",
    "compare_twisted_complexes",
    "critical_locus",
    "find_retraction",
    "predicted_profile",
    "tangent_generators",
    "verify_L_support",
]
