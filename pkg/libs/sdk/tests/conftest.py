import random

import pytest

from charp_sdk.algebra.polynomial import PolynomialRing

# --- Fixtures ---


@pytest.fixture
def rng() -> random.Random:
    """A seeded generator, so property samples are reproducible."""
    return random.Random(20240601)


@pytest.fixture
def ring3() -> PolynomialRing:
    """F_3[x0, x1]."""
    return PolynomialRing.x_ring(2, 3)


@pytest.fixture
def ring5() -> PolynomialRing:
    """F_5[x0, x1]."""
    return PolynomialRing.x_ring(2, 5)
