"""The experiment kinds a plan may name."""

import logging
from typing import Any, Dict, Optional

from charp_core.exceptions import StructuralError
from charp_core.experiments import Experiment
from charp_core.types import ExperimentOutcome, ExperimentSpec

from charp_sdk.algebra.polynomial import PolynomialRing, SparsePolynomial
from charp_sdk.frobenius import AffineVariety, build_obstruction_sequence, cartier_verify, splitting_module
from charp_sdk.frobenius.splitting import MAX_SPLITTING_RANK
from charp_sdk.projective import DEFAULT_WINDOW, ProjectiveVariety, degeneration_check
from charp_sdk.projective.varieties import MAX_AMBIENT_DIMENSION
from charp_sdk.twisted import Superpotential, compare_twisted_complexes, verify_L_support
from charp_sdk.twisted.critical import DEFAULT_RETRACTION_DEGREE, MAX_RETRACTION_DEGREE
from charp_sdk.weyl import weyl_identities

logger = logging.getLogger(__name__)

MAX_VARIABLES = 3
MAX_WEYL_VARIABLES = 2


def _integer(params: Dict[str, Any], key: str, default: Optional[int] = None, minimum: int = 0) -> int:
    value = params.get(key, default)
    if value is None:
        raise ValueError(f"missing required key '{key}'")
    if isinstance(value, bool) or not isinstance(value, int):
        raise ValueError(f"'{key}' must be an integer, got {value!r}")
    if value < minimum:
        raise ValueError(f"'{key}' must be at least {minimum}, got {value}")
    return value


def _variables(params: Dict[str, Any], maximum: int = MAX_VARIABLES) -> int:
    n = _integer(params, "n", minimum=1)
    if n > maximum:
        raise ValueError(f"'n' must be at most {maximum}, got {n}")
    return n


def _polynomial(text: Any, ring: PolynomialRing, key: str) -> SparsePolynomial:
    """Reads a plan value (text or a bare integer) into `ring`."""
    try:
        return ring.parse(str(text))
    except StructuralError as e:
        raise ValueError(f"'{key}': {e}") from e


def _reject_unknown(params: Dict[str, Any], allowed: set) -> None:
    unknown = sorted(set(params) - allowed)
    if unknown:
        raise ValueError(f"unknown keys {unknown}; expected a subset of {sorted(allowed)}")


def _affine_variety(params: Dict[str, Any], prime: int) -> AffineVariety:
    if params.get("g") is None:
        return AffineVariety.affine_space(params["n"], prime)
    return AffineVariety.hypersurface(PolynomialRing.x_ring(params["n"], prime).parse(params["g"]))


class _AffineExperiment(Experiment):
    """Shared validation for kinds on A^n or a hypersurface V(g) ⊂ A^n."""

    def validate(self, params: Dict[str, Any], prime: int) -> Dict[str, Any]:
        _reject_unknown(params, {"n", "g"})
        n = _variables(params)
        normalized: Dict[str, Any] = {"n": n}
        if params.get("g") is not None:
            g = _polynomial(params["g"], PolynomialRing.x_ring(n, prime), "g")
            if g.is_constant():
                raise ValueError(f"'g' must be non-constant, got {g}")
            normalized["g"] = str(g)
        return normalized


class CartierExperiment(_AffineExperiment):
    kind = "cartier"

    def run(self, spec: ExperimentSpec, prime: int) -> ExperimentOutcome:
        return cartier_verify(_affine_variety(spec.params, prime), spec.degree_cap).outcome()


class ObstructionExperiment(_AffineExperiment):
    kind = "obstruction"

    def run(self, spec: ExperimentSpec, prime: int) -> ExperimentOutcome:
        return build_obstruction_sequence(_affine_variety(spec.params, prime), spec.degree_cap).outcome()


class WeylIdentitiesExperiment(Experiment):
    kind = "weyl_identities"

    def validate(self, params: Dict[str, Any], prime: int) -> Dict[str, Any]:
        _reject_unknown(params, {"n", "samples", "seed", "max_degree"})
        return {
            "n": _variables(params, MAX_WEYL_VARIABLES),
            "samples": _integer(params, "samples", 20, minimum=1),
            "seed": _integer(params, "seed", 0),
            "max_degree": _integer(params, "max_degree", 3),
        }

    def run(self, spec: ExperimentSpec, prime: int) -> ExperimentOutcome:
        return weyl_identities(p=prime, **spec.params).outcome()


class _SuperpotentialExperiment(Experiment):
    """Kinds driven by a superpotential f on A^n."""

    requires_f = True
    optional_keys: frozenset = frozenset()

    def validate(self, params: Dict[str, Any], prime: int) -> Dict[str, Any]:
        _reject_unknown(params, {"n", "f"} | self.optional_keys)
        n = _variables(params)
        if params.get("f") is None:
            if self.requires_f:
                raise ValueError("missing required key 'f'")
            return {"n": n}
        return {"n": n, "f": str(_polynomial(params["f"], PolynomialRing.x_ring(n, prime), "f"))}

    @staticmethod
    def superpotential(params: Dict[str, Any], prime: int) -> Superpotential:
        return Superpotential.parse(params.get("f", "0"), params["n"], prime)


class BKExperiment(_SuperpotentialExperiment):
    """BK comparison; an optional `retraction_degree` widens the splitting search."""

    kind = "bk"
    optional_keys = frozenset({"retraction_degree"})

    def validate(self, params: Dict[str, Any], prime: int) -> Dict[str, Any]:
        normalized = super().validate(params, prime)
        if "retraction_degree" in params:
            degree = _integer(params, "retraction_degree")
            if degree > MAX_RETRACTION_DEGREE:
                raise ValueError(f"'retraction_degree' must be at most {MAX_RETRACTION_DEGREE}, got {degree}")
            normalized["retraction_degree"] = degree
        return normalized

    def run(self, spec: ExperimentSpec, prime: int) -> ExperimentOutcome:
        degree = spec.params.get("retraction_degree", DEFAULT_RETRACTION_DEGREE)
        return compare_twisted_complexes(
            self.superpotential(spec.params, prime), spec.degree_cap, retraction_degree=degree
        ).outcome()


class LSupportExperiment(_SuperpotentialExperiment):
    kind = "L_support"

    def run(self, spec: ExperimentSpec, prime: int) -> ExperimentOutcome:
        return verify_L_support(self.superpotential(spec.params, prime)).outcome()


class SplittingExperiment(_SuperpotentialExperiment):
    kind = "splitting"
    requires_f = False

    def validate(self, params: Dict[str, Any], prime: int) -> Dict[str, Any]:
        normalized = super().validate(params, prime)
        rank = prime ** normalized["n"]
        if rank > MAX_SPLITTING_RANK:
            raise ValueError(f"splitting module of rank {prime}^{normalized['n']} exceeds {MAX_SPLITTING_RANK}")
        return normalized

    def run(self, spec: ExperimentSpec, prime: int) -> ExperimentOutcome:
        f = self.superpotential(spec.params, prime).f if "f" in spec.params else None
        return splitting_module(spec.params["n"], prime, f).outcome()


class ProjectiveDegenerationExperiment(Experiment):
    """
    Hodge numbers, de Rham dimensions and their comparison for P^N or a plane curve.

    Parameters live under `projective`: either `space: N` or a homogeneous
    `G` in x0, x1, x2, plus optional `truncation` and `window`.
    """

    kind = "projective_degeneration"

    def validate(self, params: Dict[str, Any], prime: int) -> Dict[str, Any]:
        _reject_unknown(params, {"projective"})
        section = params.get("projective")
        if not isinstance(section, dict):
            raise ValueError("'projective' must be a mapping with either 'G' or 'space'")
        _reject_unknown(section, {"G", "space", "truncation", "window"})
        if ("G" in section) == ("space" in section):
            raise ValueError("'projective' needs exactly one of 'G' and 'space'")

        normalized: Dict[str, Any] = {}
        if "space" in section:
            space = _integer(section, "space", minimum=1)
            if space > MAX_AMBIENT_DIMENSION:
                raise ValueError(f"'space' must be at most {MAX_AMBIENT_DIMENSION}, got {space}")
            normalized["space"] = space
        else:
            g = _polynomial(section["G"], PolynomialRing.x_ring(3, prime), "G")
            if g.is_constant() or len({sum(m) for m in g.monomials()}) != 1:
                raise ValueError(f"'G' must be a homogeneous form of positive degree, got {g}")
            normalized["G"] = str(g)
        truncation = section.get("truncation")
        normalized["truncation"] = None if truncation is None else _integer(section, "truncation", minimum=1)
        normalized["window"] = _integer(section, "window", DEFAULT_WINDOW, minimum=1)
        return {"projective": normalized}

    def run(self, spec: ExperimentSpec, prime: int) -> ExperimentOutcome:
        section = spec.params["projective"]
        if "space" in section:
            variety = ProjectiveVariety.projective_space(section["space"], prime)
        else:
            variety = ProjectiveVariety.parse_curve(section["G"], prime)
        return degeneration_check(variety, section["truncation"], section["window"]).outcome()
