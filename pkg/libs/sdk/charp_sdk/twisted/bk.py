import logging
from dataclasses import dataclass, field
from math import comb
from typing import Any, Dict, List, Optional

from charp_core.types import (
    ComparisonVerdict,
    ExperimentOutcome,
    ExperimentReport,
    ExperimentSpec,
    Finite,
    InfiniteOrAbove,
    Mode,
)

from charp_sdk.complexes.cohomology import CohomologyEntry, CohomologyProfile, cohomology_profile, compare_profiles
from charp_sdk.groebner.buchberger import module_groebner
from charp_sdk.groebner.quotient import ModuleSignature, module_signature, quotient_k_dimension
from charp_sdk.groebner.vectors import FreeModuleVector
from charp_sdk.twisted.critical import DEFAULT_RETRACTION_DEGREE, CriticalLocusAnalysis, critical_locus
from charp_sdk.twisted.superpotential import Superpotential, build_twisted_pushforward, build_wedge_complex
from charp_sdk.version import ENGINE_VERSION

logger = logging.getLogger(__name__)


def predicted_profile(
    superpotential: Superpotential, analysis: CriticalLocusAnalysis, degree_cap: int = 40
) -> Optional[CohomologyProfile]:
    """
    The profile ⊕_{a+b = i-c} H^a(Z′, Ω^b_{Z′} ⊗ ∧^c N), or None when Z is not smooth and split.

    Z′ is affine, so only a = 0 contributes. Ω^b_{Z′} ⊗ ∧^c N is locally free
    of rank C(dim Z, b) on Z′: for a point this is dim O_{Z′} in degree c; for
    positive dimension the entry is the signature (dim Z, C(dim Z, b)·e(O_{Z′})).
    """
    n = superpotential.n
    if analysis.empty:
        return CohomologyProfile(tuple(CohomologyEntry(i, Finite(0)) for i in range(n + 1)))
    if not analysis.hypotheses_hold:
        return None
    y = superpotential.structure.y_ring
    twisted_ideal = [
        FreeModuleVector(y, [g[0].p_power_substitute(y)]) for g in analysis.groebner.generators
    ]
    gb = module_groebner(twisted_ideal, ring=y, rank=1)
    c, m = analysis.codimension, analysis.dimension
    assert c is not None
    entries = []
    if m == 0:
        length = quotient_k_dimension(1, gb, degree_cap)
        for i in range(n + 1):
            entries.append(CohomologyEntry(i, length if i == c else Finite(0)))
        return CohomologyProfile(tuple(entries))
    multiplicity = module_signature(1, gb).multiplicity
    for i in range(n + 1):
        b = i - c
        if 0 <= b <= m:
            entries.append(
                CohomologyEntry(
                    i, InfiniteOrAbove(cap=degree_cap), signature=ModuleSignature(m, comb(m, b) * multiplicity)
                )
            )
        else:
            entries.append(CohomologyEntry(i, Finite(0)))
    return CohomologyProfile(tuple(entries))


@dataclass
class BKComparison:
    """
    Twisted de Rham, wedge and predicted profiles of one superpotential.

    Attributes:
        superpotential: f as text.
        twisted: Cohomology of F_*Ω•_{d − df∧}.
        wedge: Cohomology of the Koszul complex on ∂f′.
        predicted: Profile predicted from Crit f, None when its hypotheses fail.
        analysis: The critical locus.
        verdicts: compare_profiles for each pair.
    """

    superpotential: str
    twisted: CohomologyProfile
    wedge: CohomologyProfile
    predicted: Optional[CohomologyProfile]
    analysis: CriticalLocusAnalysis
    verdicts: Dict[str, str] = field(default_factory=dict)
    checks: Dict[str, bool] = field(default_factory=dict)
    notes: List[str] = field(default_factory=list)

    def outcome(self) -> ExperimentOutcome:
        tables: Dict[str, Any] = {
            "superpotential": self.superpotential,
            "twisted": self.twisted.to_record(),
            "wedge": self.wedge.to_record(),
            "predicted": self.predicted.to_record() if self.predicted is not None else None,
            "critical_locus": self.analysis.to_record(),
            "comparisons": dict(self.verdicts),
            "euler": {"twisted": self.twisted.euler_characteristic(), "wedge": self.wedge.euler_characteristic()},
        }
        return ExperimentOutcome(checks=dict(self.checks), tables=tables, notes=list(self.notes))


def compare_twisted_complexes(
    superpotential: Superpotential,
    degree_cap: int = 40,
    jobs: int = 1,
    retraction_degree: int = DEFAULT_RETRACTION_DEGREE,
) -> BKComparison:
    """
    Computes the three profiles and compares them.

    The Euler characteristics of the two twisted complexes are compared
    whenever both are finite. Profile equalities become checks only when Z is
    empty or smooth and split; otherwise they are recorded in `verdicts`.
    Infinite twisted cohomology is flagged, since properness of Crit f is
    approximated by finiteness.
    """
    twisted = cohomology_profile(build_twisted_pushforward(superpotential), degree_cap=degree_cap, jobs=jobs)
    wedge = cohomology_profile(build_wedge_complex(superpotential), degree_cap=degree_cap, jobs=jobs)
    analysis = critical_locus(superpotential, retraction_degree)
    predicted = predicted_profile(superpotential, analysis, degree_cap)

    verdicts: Dict[str, str] = {"twisted_vs_wedge": compare_profiles(twisted, wedge).value}
    if predicted is not None:
        verdicts["twisted_vs_predicted"] = compare_profiles(twisted, predicted).value
        verdicts["wedge_vs_predicted"] = compare_profiles(wedge, predicted).value

    checks: Dict[str, bool] = {}
    notes = list(analysis.notes)
    euler_twisted, euler_wedge = twisted.euler_characteristic(), wedge.euler_characteristic()
    if euler_twisted is not None and euler_wedge is not None:
        checks["euler_characteristics_agree"] = euler_twisted == euler_wedge
    else:
        notes.append("twisted cohomology is infinite-dimensional: Crit f is not proper over the base")
    if analysis.hypotheses_hold:
        equal = ComparisonVerdict.EQUAL.value
        checks["twisted_equals_wedge"] = verdicts["twisted_vs_wedge"] == equal
        checks["twisted_equals_predicted"] = verdicts["twisted_vs_predicted"] == equal
        checks["wedge_equals_predicted"] = verdicts["wedge_vs_predicted"] == equal
    else:
        notes.append("hypotheses on Crit f fail; profile equality is recorded, not asserted")
        logger.warning(f"Hypotheses fail for f = {superpotential}; comparing Euler characteristics only")

    logger.info(
        f"f = {superpotential}: twisted {twisted.summary()}, wedge {wedge.summary()}, "
        f"predicted {predicted.summary() if predicted else None}"
    )
    return BKComparison(str(superpotential), twisted, wedge, predicted, analysis, verdicts, checks, notes)


def bk_report(
    superpotential: Superpotential,
    degree_cap: int = 40,
    mode: Mode = Mode.ASSERT,
    experiment_id: str = "bk",
    jobs: int = 1,
    retraction_degree: int = DEFAULT_RETRACTION_DEGREE,
) -> ExperimentReport:
    """`compare_twisted_complexes` stamped into a report."""
    comparison = compare_twisted_complexes(superpotential, degree_cap, jobs, retraction_degree)
    params: Dict[str, Any] = {"n": superpotential.n, "f": str(superpotential)}
    if retraction_degree != DEFAULT_RETRACTION_DEGREE:
        params["retraction_degree"] = retraction_degree
    spec = ExperimentSpec(
        id=experiment_id,
        kind="bk",
        params=params,
        mode=mode,
        degree_cap=degree_cap,
    )
    return ExperimentReport.from_outcome(spec, superpotential.p, comparison.outcome(), ENGINE_VERSION)
