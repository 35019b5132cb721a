import logging
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence, Tuple, TypeVar

from charp_core.exceptions import InternalInconsistencyError, StructuralError, UnstabilizedError
from charp_core.types import ExperimentOutcome

from charp_sdk.projective.grid import CechDeRhamGrid, build_grid
from charp_sdk.projective.varieties import ProjectiveVariety

logger = logging.getLogger(__name__)

DEFAULT_WINDOW = 3

T = TypeVar("T")


def _truncations(variety: ProjectiveVariety, truncation: Optional[int], window: int) -> List[int]:
    if window < 1:
        raise StructuralError(f"stabilization window must be positive, got {window}")
    start = variety.default_truncation() if truncation is None else truncation
    return list(range(start, start + window))


def build_window(
    variety: ProjectiveVariety, truncation: Optional[int] = None, window: int = DEFAULT_WINDOW, jobs: int = 1
) -> List[CechDeRhamGrid]:
    """Grids at D, D+1, ..., D+window-1, D defaulting to `default_truncation`."""
    return [build_grid(variety, D, jobs) for D in _truncations(variety, truncation, window)]


def _stabilized(values: Dict[int, T]) -> T:
    """
    The common value of a window.

    Values need not be monotone in D below the stable range: the total
    de Rham dimensions of a pole-order grid can grow before they settle.

    Raises:
        UnstabilizedError: If the window disagrees.
    """
    distinct = list(values.values())
    if any(v != distinct[0] for v in distinct[1:]):
        raise UnstabilizedError(max(values), {D: v for D, v in values.items()})
    return distinct[0]


@dataclass
class HodgeNumbers:
    """
    h^{q,k} = dim H^k(X, Ω^q), indexed numbers[q][k] for 0 <= q, k <= dim X.

    Attributes:
        variety: X, as text.
        numbers: The stabilized table.
        window_values: The full Čech table at every truncation of the window.
    """

    variety: str
    numbers: Tuple[Tuple[int, ...], ...]
    window_values: Dict[int, List[List[int]]] = field(default_factory=dict)

    def hodge_sum(self, i: int) -> int:
        return sum(row[i - q] for q, row in enumerate(self.numbers) if 0 <= i - q < len(row))

    def satisfies_serre_duality(self) -> bool:
        """h^{q,k} = h^{d-q,d-k} with d = dim X; an under-truncated window breaks it."""
        d = len(self.numbers) - 1
        return all(self.numbers[q][k] == self.numbers[d - q][d - k] for q in range(d + 1) for k in range(d + 1))

    @property
    def euler_characteristic(self) -> int:
        return sum((-1) ** (q + k) * h for q, row in enumerate(self.numbers) for k, h in enumerate(row))

    def to_record(self) -> Dict[str, Any]:
        return {
            "numbers": [list(row) for row in self.numbers],
            "window_values": {str(D): v for D, v in self.window_values.items()},
            "euler_characteristic": self.euler_characteristic,
        }


@dataclass
class DeRhamDimensions:
    """dim H^i_dR(X) for 0 <= i <= 2 dim X, with the window it stabilized over."""

    variety: str
    dimensions: Tuple[int, ...]
    window_values: Dict[int, List[int]] = field(default_factory=dict)

    @property
    def euler_characteristic(self) -> int:
        return sum((-1) ** i * h for i, h in enumerate(self.dimensions))

    def to_record(self) -> Dict[str, Any]:
        return {
            "dimensions": list(self.dimensions),
            "window_values": {str(D): v for D, v in self.window_values.items()},
            "euler_characteristic": self.euler_characteristic,
        }


def _hodge_from(grids: Sequence[CechDeRhamGrid]) -> HodgeNumbers:
    variety = grids[0].variety
    window = {g.truncation: [g.cech_cohomology(q) for q in g.form_degrees] for g in grids}
    table = _stabilized(window)
    dim = variety.dimension
    for q, row in enumerate(table):
        if any(row[dim + 1 :]):
            raise InternalInconsistencyError(f"H^k(X, Ω^{q}) is nonzero above k = dim X = {dim}: {row}")
    numbers = tuple(tuple(row[: dim + 1]) for row in table)
    logger.info(f"Hodge numbers of {variety.describe()}: {[list(r) for r in numbers]}")
    return HodgeNumbers(variety.describe(), numbers, window)


def _derham_from(grids: Sequence[CechDeRhamGrid]) -> DeRhamDimensions:
    variety = grids[0].variety
    window = {g.truncation: g.total_cohomology() for g in grids}
    values = _stabilized(window)
    top = 2 * variety.dimension
    if any(values[top + 1 :]):
        raise InternalInconsistencyError(f"H^i_dR is nonzero above i = 2 dim X = {top}: {values}")
    logger.info(f"de Rham dimensions of {variety.describe()}: {values[: top + 1]}")
    return DeRhamDimensions(variety.describe(), tuple(values[: top + 1]), window)


def hodge_numbers(
    variety: ProjectiveVariety, truncation: Optional[int] = None, window: int = DEFAULT_WINDOW, jobs: int = 1
) -> HodgeNumbers:
    """
    Čech cohomology of each Ω^q on the standard cover.

    Raises:
        UnstabilizedError: If the tables at D, ..., D+window-1 disagree.
    """
    return _hodge_from(build_window(variety, truncation, window, jobs))


def derham_hypercohomology(
    variety: ProjectiveVariety, truncation: Optional[int] = None, window: int = DEFAULT_WINDOW, jobs: int = 1
) -> DeRhamDimensions:
    """
    Cohomology of the total complex of the Čech-de Rham grid.

    Raises:
        UnstabilizedError: If the dimensions at D, ..., D+window-1 disagree.
    """
    return _derham_from(build_window(variety, truncation, window, jobs))


@dataclass
class DegenerationVerdict:
    """
    Hodge numbers against de Rham dimensions, degree by degree.

    Attributes:
        hodge: The stabilized Hodge table.
        derham: The stabilized de Rham dimensions.
        hodge_sums: Σ_{q+k=i} h^{q,k} for each i.
        checks: Per-degree equalities, Euler characteristics, Serre duality and grid identities.
        gluing: Chart equations and transitions of the cover.
        grids: Block dimensions of the grid at each truncation.
    """

    variety: str
    hodge: HodgeNumbers
    derham: DeRhamDimensions
    hodge_sums: Tuple[int, ...]
    checks: Dict[str, bool] = field(default_factory=dict)
    notes: List[str] = field(default_factory=list)
    gluing: Dict[str, List[str]] = field(default_factory=dict)
    grids: Dict[int, Dict[str, int]] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(self.checks.values())

    def outcome(self) -> ExperimentOutcome:
        return ExperimentOutcome(
            checks=dict(self.checks),
            tables={
                "variety": self.variety,
                "hodge_numbers": self.hodge.to_record(),
                "derham": self.derham.to_record(),
                "hodge_sums": list(self.hodge_sums),
            },
            witnesses={"gluing": self.gluing, "grid_dimensions": {str(D): b for D, b in self.grids.items()}},
            notes=list(self.notes),
        )


def degeneration_check(
    variety: ProjectiveVariety, truncation: Optional[int] = None, window: int = DEFAULT_WINDOW, jobs: int = 1
) -> DegenerationVerdict:
    """
    Compares dim H^i_dR with Σ_{q+k=i} h^{q,k}.

    The spectral sequence of the stupid filtration gives dim H^i_dR <= the
    Hodge sum; degeneration is equality in every degree. Both sides come from
    the same window of grids.

    Raises:
        UnstabilizedError: If either computation fails to stabilize.
        InternalInconsistencyError: If some dim H^i_dR exceeds its Hodge sum.
    """
    grids = build_window(variety, truncation, window, jobs)
    hodge = _hodge_from(grids)
    derham = _derham_from(grids)
    sums = tuple(hodge.hodge_sum(i) for i in range(len(derham.dimensions)))

    checks: Dict[str, bool] = {}
    for i, (dr, h) in enumerate(zip(derham.dimensions, sums)):
        if dr > h:
            raise InternalInconsistencyError(
                f"dim H^{i}_dR = {dr} exceeds the Hodge sum {h} for {variety.describe()}"
            )
        checks[f"degeneration_H{i}"] = dr == h
    checks["euler_characteristics_agree"] = derham.euler_characteristic == hodge.euler_characteristic
    checks["serre_duality"] = hodge.satisfies_serre_duality()
    checks["grid_identities"] = all(all(g.identities().values()) for g in grids)

    notes: List[str] = []
    if not variety.satisfies_prime_bound:
        notes.append(f"p = {variety.p} <= dim X = {variety.dimension}: degeneration is not predicted here")
        logger.warning(f"{variety.describe()} has p <= dim X; treat the verdict as exploratory")
    logger.info(f"Degeneration for {variety.describe()}: de Rham {list(derham.dimensions)} vs Hodge sums {list(sums)}")
    return DegenerationVerdict(
        variety.describe(),
        hodge,
        derham,
        sums,
        checks,
        notes,
        variety.gluing_data(),
        {g.truncation: g.block_dimensions() for g in grids},
    )
