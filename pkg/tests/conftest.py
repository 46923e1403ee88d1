from __future__ import annotations

import random
from fractions import Fraction

import pytest

from sepgap.fixtures import ancestors_k4, prism_point


@pytest.fixture(scope="session")
def prism():
    return prism_point()


@pytest.fixture(scope="session")
def a4():
    return ancestors_k4()


@pytest.fixture(scope="session")
def all_ancestors(prism, a4):
    return (prism,) + tuple(a4)


def random_metric(rng: random.Random, n: int) -> dict:
    """Random rational costs in [1, 2]; any such vector is a metric."""
    costs = {}
    for i in range(n):
        for j in range(i + 1, n):
            den = rng.randint(1, 12)
            costs[(i, j)] = Fraction(rng.randint(den, 2 * den), den)
    return costs


def random_costs(rng: random.Random, edges) -> dict:
    """Random nonnegative rational edge costs (zeros allowed)."""
    return {e: Fraction(rng.randint(0, 30), rng.randint(1, 10)) for e in edges}
