import logging
from dataclasses import dataclass, field
from typing import Dict, List

from charp_core.types import ExperimentOutcome

from charp_sdk.twisted.superpotential import Superpotential
from charp_sdk.weyl.connections import Connection, p_curvature, p_curvature_apply
from charp_sdk.weyl.vector_fields import VectorField

logger = logging.getLogger(__name__)


@dataclass
class LSupportResult:
    """
    p-curvatures of L = (O, d − df) along the coordinate fields.

    Attributes:
        curvatures: The 1x1 p-curvature at ∂_i, as text.
        graph_equations: −∂f′/∂y_i, the expected value under the dictionary.
        checks: Per-coordinate exact equalities.
    """

    superpotential: str
    curvatures: List[str] = field(default_factory=list)
    graph_equations: List[str] = field(default_factory=list)
    checks: Dict[str, bool] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(self.checks.values())

    def outcome(self) -> ExperimentOutcome:
        return ExperimentOutcome(
            checks=dict(self.checks),
            tables={
                "superpotential": self.superpotential,
                "p_curvatures": list(self.curvatures),
                "graph_equations": list(self.graph_equations),
            },
        )


def verify_L_support(superpotential: Superpotential) -> LSupportResult:
    """
    Checks that the center acts on L through the graph of df′.

    For each i the p-curvature at ∂_i is −(∂_i f)^p exactly. Pushed through
    the Frobenius dictionary it is −∂f′/∂y_i at the basis element 1 and zero
    elsewhere, i.e. ∂′_i acts as ∂′_i(f′) up to sign, which are the graph
    equations. O-linearity is checked on x_k·e.
    """
    fs = superpotential.structure
    x = fs.x_ring
    connection = Connection.for_superpotential(superpotential.f)
    result = LSupportResult(str(superpotential))
    for i, (partial, twisted_partial) in enumerate(zip(superpotential.partials, superpotential.twisted_partials)):
        theta = VectorField.coordinate(x, i)
        curvature = p_curvature(connection, theta)[0, 0]
        expected = -(partial**fs.p)
        result.checks[f"p_curvature_{i}"] = curvature == expected

        components = fs.pushforward(curvature)
        graph = [-twisted_partial] + [fs.y_ring.zero()] * (fs.size - 1)
        result.checks[f"graph_equation_{i}"] = components == graph

        linear = all(
            p_curvature_apply(connection, theta, (x.var(k),))[0] == x.var(k) * curvature for k in range(fs.n)
        )
        result.checks[f"o_linear_{i}"] = linear
        result.curvatures.append(str(curvature))
        result.graph_equations.append(str(-twisted_partial))
    logger.info(f"L-support for f = {superpotential}: p-curvatures {result.curvatures}")
    return result
