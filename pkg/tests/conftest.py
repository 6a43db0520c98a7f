"""Shared fixtures and independent test oracles.

The helpers here deliberately avoid the package's own solvers: tour
enumeration is plain itertools, so package bugs cannot hide behind
themselves.
"""

from itertools import permutations

import pytest

from atsplab import INF, AsymCostMatrix, Distribution, InstanceSpec, gen_instance


@pytest.fixture
def e1():
    """The 3-city instance used throughout: optimum (0,1,2) cost 3."""
    return AsymCostMatrix.from_rows([[INF, 1, 2], [2, INF, 1], [1, 2, INF]])


@pytest.fixture
def uniform4():
    """4 cities, every arc 1; every tour costs 4."""
    return AsymCostMatrix.from_rows(
        [[INF if i == j else 1 for j in range(4)] for i in range(4)]
    )


def all_tours(n):
    """Every tour with city 0 fixed first, in lexicographic order."""
    for suffix in permutations(range(1, n)):
        yield (0,) + suffix


def slow_tour_cost(grid, tour):
    return sum(grid[tour[k]][tour[(k + 1) % len(tour)]] for k in range(len(tour)))


def exhaustive_optimum(matrix):
    """Reference optimum by plain enumeration; independent of the package."""
    best_tour = None
    best = None
    for tour in all_tours(matrix.n):
        c = slow_tour_cost(matrix.entries, tour)
        if best is None or c < best:
            best, best_tour = c, tour
    return best_tour, best


def uniform_instance(n, seed, lo=1, hi=100):
    return gen_instance(
        InstanceSpec(Distribution.UNIFORM, n=n, seed=seed, lo=lo, hi=hi)
    )
