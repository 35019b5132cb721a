"""Built-in experiment suites, one validated plan per prime."""

from typing import Any, Callable, Dict, List

from charp_sdk.experiments.plan import ExperimentPlan, plan_from_mapping

Raw = Dict[str, Any]


def _cartier(p: int) -> List[Raw]:
    return [{"id": f"cartier-A{n}-p{p}", "kind": "cartier", "n": n} for n in (1, 2)]


def _obstruction(p: int) -> List[Raw]:
    return [{"id": f"obstruction-A{n}-p{p}", "kind": "obstruction", "n": n} for n in (1, 2)]


def _weyl(p: int) -> List[Raw]:
    return [{"id": f"weyl-identities-p{p}", "kind": "weyl_identities", "n": 2, "samples": 20, "max_degree": 3}]


def _quadratic_bk(p: int) -> List[Raw]:
    return [
        {"id": f"bk-quadratic-n1-p{p}", "kind": "bk", "n": 1, "f": "x0^2"},
        {"id": f"bk-quadratic-n2-p{p}", "kind": "bk", "n": 2, "f": "x0^2 + x1^2"},
    ]


def _l_support(p: int) -> List[Raw]:
    return [
        {"id": f"L-support-zero-p{p}", "kind": "L_support", "n": 1, "f": "0"},
        {"id": f"L-support-square-p{p}", "kind": "L_support", "n": 1, "f": "x0^2"},
        {"id": f"L-support-product-p{p}", "kind": "L_support", "n": 2, "f": "x0*x1"},
    ]


def _projective(id_: str, **section: Any) -> Raw:
    return {"id": id_, "kind": "projective_degeneration", "projective": section}


def acceptance_suite() -> List[ExperimentPlan]:
    """
    The acceptance matrix: Cartier sweeps, Weyl identities, obstruction
    sequences, BK comparisons, L-support, splitting modules and projective
    degeneration, grouped by prime.
    """
    by_prime: Dict[int, List[Raw]] = {
        2: _cartier(2) + _weyl(2) + _obstruction(2) + _l_support(2),
        3: _cartier(3)
        + _weyl(3)
        + _obstruction(3)
        + _quadratic_bk(3)
        + [{"id": "bk-line-critical-locus-p3", "kind": "bk", "n": 2, "f": "x1^2"}]
        + _l_support(3)
        + [
            {"id": "splitting-A1-p3", "kind": "splitting", "n": 1},
            {"id": "splitting-twisted-A1-p3", "kind": "splitting", "n": 1, "f": "x0^2"},
            _projective("P1-p3", space=1),
        ],
        5: _cartier(5)
        + _weyl(5)
        + _quadratic_bk(5)
        + [
            _projective("P2-p5", space=2),
            _projective("elliptic-cubic-p5", G="x0^3 + x1^3 + x2^3"),
        ],
        7: [
            _projective("P1-p7", space=1),
            _projective("quartic-p7", G="x0^4 + x1^4 + x2^4", truncation=5),
        ],
    }
    return [plan_from_mapping({"prime": p, "experiments": raw}) for p, raw in by_prime.items()]


# "acceptance" is kept as an alias of the default suite name.
SUITES: Dict[str, Callable[[], List[ExperimentPlan]]] = {"paper": acceptance_suite, "acceptance": acceptance_suite}
