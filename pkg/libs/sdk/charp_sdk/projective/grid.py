import contextvars
import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations
from typing import Dict, List, Tuple

import numpy as np
from charp_core.exceptions import NonComplexError, StructuralError

from charp_sdk.algebra.polynomial import SparsePolynomial
from charp_sdk.complexes.forms import Form, add_forms, exterior_derivative, scale_form, wedge_one_form
from charp_sdk.linalg.fp_matrix import FpMatrix
from charp_sdk.projective.sections import SectionSpace, forms_of, section_space
from charp_sdk.projective.varieties import ProjectiveVariety

logger = logging.getLogger(__name__)

Chart = Tuple[int, ...]
Block = Tuple[int, int]


def _chart_monomial(n: int, chart: Chart, power: int) -> Tuple[int, ...]:
    return tuple(power if i in chart else 0 for i in range(n))


@dataclass
class CechDeRhamGrid:
    """
    The truncated Čech-de Rham double complex of X on the standard cover.

    C^{k,q} is the product over (k+1)-fold intersections U_I of the sections
    w / x_I^L of Ω^q with L = D + q and w basic of weight L·|I|. The Čech
    differential δ multiplies numerators by x_i^L; the de Rham differential
    raises the level by one, d(w / x_I^L) = (x_I dw − L dx_I ∧ w) / x_I^{L+1},
    and carries the sign (-1)^k so that δ and d anticommute.

    Attributes:
        variety: X.
        truncation: D.
        charts: Intersections of each Čech degree, lexicographic.
        spaces: M^q_m keyed by (q, m).
        cech: δ^{k,q} : C^{k,q} → C^{k+1,q}.
        derham: (-1)^k d : C^{k,q} → C^{k,q+1}.
    """

    variety: ProjectiveVariety
    truncation: int
    charts: Dict[int, List[Chart]]
    spaces: Dict[Block, SectionSpace] = field(repr=False)
    cech: Dict[Block, FpMatrix] = field(repr=False)
    derham: Dict[Block, FpMatrix] = field(repr=False)

    @property
    def cech_degrees(self) -> range:
        return range(self.variety.ambient_dimension + 1)

    @property
    def form_degrees(self) -> range:
        return range(self.variety.dimension + 1)

    def level(self, q: int) -> int:
        return self.truncation + q

    def space(self, k: int, q: int) -> SectionSpace:
        return self.spaces[(q, self.level(q) * (k + 1))]

    def dimension(self, k: int, q: int) -> int:
        if k not in self.cech_degrees or q not in self.form_degrees:
            return 0
        return len(self.charts[k]) * self.space(k, q).dimension

    def block_dimensions(self) -> Dict[str, int]:
        return {f"C^{k},{q}": self.dimension(k, q) for k in self.cech_degrees for q in self.form_degrees}

    def identities(self) -> Dict[str, bool]:
        """δ² = 0, d² = 0 and δd + dδ = 0 on every block."""
        checks: Dict[str, bool] = {}
        for (k, q), delta in self.cech.items():
            after = self.cech.get((k + 1, q))
            if after is not None:
                checks[f"cech_squared_{k}_{q}"] = (after @ delta).is_zero()
        for (k, q), d in self.derham.items():
            after = self.derham.get((k, q + 1))
            if after is not None:
                checks[f"derham_squared_{k}_{q}"] = (after @ d).is_zero()
            right = self.cech.get((k, q + 1))
            down = self.derham.get((k + 1, q))
            if right is not None and down is not None:
                checks[f"anticommute_{k}_{q}"] = ((right @ d) + (down @ self.cech[(k, q)])).is_zero()
        return checks

    def verify(self) -> None:
        """
        Raises:
            NonComplexError: If a grid identity fails.
        """
        for name, ok in self.identities().items():
            if not ok:
                raise NonComplexError(
                    self.truncation, name, f"grid identity {name} fails at truncation {self.truncation}"
                )

    def cech_cohomology(self, q: int) -> List[int]:
        """dim H^k(X, Ω^q) for k over the Čech degrees."""
        ranks = {k: self.cech[(k, q)].rank() for k in self.cech_degrees if (k, q) in self.cech}
        return [
            self.dimension(k, q) - ranks.get(k, 0) - ranks.get(k - 1, 0) for k in self.cech_degrees
        ]

    def total_differential(self, i: int) -> FpMatrix:
        """D = δ + (-1)^k d from the total degree i to i + 1."""
        source = [(k, i - k) for k in self.cech_degrees if (i - k) in self.form_degrees]
        target = [(k, i + 1 - k) for k in self.cech_degrees if (i + 1 - k) in self.form_degrees]
        offsets_s = np.cumsum([0] + [self.dimension(*b) for b in source])
        offsets_t = np.cumsum([0] + [self.dimension(*b) for b in target])
        out = np.zeros((int(offsets_t[-1]), int(offsets_s[-1])), dtype=np.int64)
        for a, (k, q) in enumerate(source):
            for b, (k2, q2) in enumerate(target):
                if (k2, q2) == (k + 1, q) and (k, q) in self.cech:
                    block = self.cech[(k, q)]
                elif (k2, q2) == (k, q + 1) and (k, q) in self.derham:
                    block = self.derham[(k, q)]
                else:
                    continue
                out[offsets_t[b] : offsets_t[b + 1], offsets_s[a] : offsets_s[a + 1]] = block.data
        return FpMatrix(out, self.variety.p)

    def total_cohomology(self) -> List[int]:
        """dim H^i of the total complex for i = 0..dim(Čech) + dim X."""
        top = self.variety.ambient_dimension + self.variety.dimension
        sizes = [sum(self.dimension(k, i - k) for k in self.cech_degrees) for i in range(top + 1)]
        ranks = [self.total_differential(i).rank() for i in range(top)]
        return [sizes[i] - (ranks[i] if i < top else 0) - (ranks[i - 1] if i > 0 else 0) for i in range(top + 1)]


def _restriction(
    source: SectionSpace, target: SectionSpace, variety: ProjectiveVariety, i: int, level: int
) -> np.ndarray:
    """Matrix of w ↦ x_i^level · w between section spaces (target rows, source columns)."""
    ring = variety.ring
    factor = ring.monomial(_chart_monomial(ring.n, (i,), level))
    images = [target.coordinates.vector(scale_form(w, factor)) for w in forms_of(source, ring)]
    if not images:
        return np.zeros((target.dimension, 0), dtype=np.int64)
    return target.coordinates_of(np.array(images)).T


def _chart_derivative(w: Form, variety: ProjectiveVariety, chart: Chart, level: int) -> Form:
    """Numerator of d(w / x_I^level) over x_I^(level+1)."""
    ring = variety.ring
    x_chart = ring.monomial(_chart_monomial(ring.n, chart, 1))
    dx_chart: List[SparsePolynomial] = [
        ring.monomial(tuple(1 if (k in chart and k != j) else 0 for k in range(ring.n))) if j in chart else ring.zero()
        for j in range(ring.n)
    ]
    return add_forms(
        ring,
        scale_form(exterior_derivative(ring, w), x_chart),
        scale_form(wedge_one_form(ring, dx_chart, w), ring.constant(-level)),
    )


def _derivative(
    source: SectionSpace, target: SectionSpace, variety: ProjectiveVariety, chart: Chart, level: int
) -> np.ndarray:
    images = [
        target.coordinates.vector(_chart_derivative(w, variety, chart, level)) for w in forms_of(source, variety.ring)
    ]
    if not images:
        return np.zeros((target.dimension, 0), dtype=np.int64)
    return target.coordinates_of(np.array(images)).T


def _block_diagonal(blocks: List[np.ndarray], p: int) -> FpMatrix:
    rows = sum(b.shape[0] for b in blocks)
    cols = sum(b.shape[1] for b in blocks)
    out = np.zeros((rows, cols), dtype=np.int64)
    r = c = 0
    for b in blocks:
        out[r : r + b.shape[0], c : c + b.shape[1]] = b
        r, c = r + b.shape[0], c + b.shape[1]
    return FpMatrix(out, p)


def build_grid(variety: ProjectiveVariety, truncation: int, jobs: int = 1) -> CechDeRhamGrid:
    """
    Assembles the grid at truncation D and checks its identities.

    Section spaces depend only on (q, weight), so they are built once per
    weight; with `jobs` > 1 they are built on a thread pool.

    Raises:
        StructuralError: If D < 1.
        NonComplexError: If a grid identity fails.
    """
    if truncation < 1:
        raise StructuralError(f"truncation degree must be positive, got {truncation}")
    n_charts = variety.charts
    cech_degrees = range(variety.ambient_dimension + 1)
    form_degrees = range(variety.dimension + 1)
    charts = {k: list(combinations(range(n_charts), k + 1)) for k in cech_degrees}
    weights = sorted({(q, (truncation + q) * (k + 1)) for q in form_degrees for k in cech_degrees})

    if jobs > 1 and len(weights) > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            futures = [pool.submit(contextvars.copy_context().run, section_space, variety, q, m) for q, m in weights]
            spaces = dict(zip(weights, [f.result() for f in futures]))
    else:
        spaces = {(q, m): section_space(variety, q, m) for q, m in weights}

    p = variety.p
    cech: Dict[Block, FpMatrix] = {}
    derham: Dict[Block, FpMatrix] = {}
    for q in form_degrees:
        level = truncation + q
        for k in cech_degrees:
            source = spaces[(q, level * (k + 1))]
            if k + 1 in cech_degrees:
                target = spaces[(q, level * (k + 2))]
                restrictions = {i: _restriction(source, target, variety, i, level) for i in range(n_charts)}
                rows, cols = target.dimension, source.dimension
                delta = np.zeros((len(charts[k + 1]) * rows, len(charts[k]) * cols), dtype=np.int64)
                column_of = {J: b for b, J in enumerate(charts[k])}
                for a, chart in enumerate(charts[k + 1]):
                    for t, i in enumerate(chart):
                        b = column_of[chart[:t] + chart[t + 1 :]]
                        sign = 1 if t % 2 == 0 else -1
                        delta[a * rows : (a + 1) * rows, b * cols : (b + 1) * cols] += sign * restrictions[i]
                cech[(k, q)] = FpMatrix(delta, p)
            if q + 1 in form_degrees:
                target = spaces[(q + 1, (level + 1) * (k + 1))]
                sign = 1 if k % 2 == 0 else -1
                blocks = [sign * _derivative(source, target, variety, chart, level) for chart in charts[k]]
                derham[(k, q)] = _block_diagonal(blocks, p)

    grid = CechDeRhamGrid(variety, truncation, charts, spaces, cech, derham)
    grid.verify()
    logger.debug(f"Čech-de Rham grid of {variety.describe()} at D={truncation}: {grid.block_dimensions()}")
    return grid
