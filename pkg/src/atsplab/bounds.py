"""Greedy tour heuristics that supply the acceptance bound for the search.

Any tour works as a bound; nearest-neighbor over all starts is cheap and
deterministic.  The worst start is exposed too because a loose bound admits
more cycles, which is an experimental axis worth sweeping.
"""

from __future__ import annotations

from .costs import NormalizedInstance
from .errors import InstanceError
from .tours import Tour, canonical_tour, tour_cost


def nearest_neighbor(m: NormalizedInstance, start: int) -> Tour:
    """Greedy tour from ``start``: always the cheapest unvisited city next.

    Ties break toward the smallest city index.  The result is returned in
    canonical rotation (starting at city 0), not at ``start``.
    """
    n = m.n
    if not 0 <= start < n:
        raise InstanceError(f"start city {start} out of range 0..{n - 1}")
    entries = m.matrix.entries
    visited = [False] * n
    visited[start] = True
    order = [start]
    current = start
    for _ in range(n - 1):
        row = entries[current]
        best_city = -1
        best_cost = None
        for city in range(n):
            if not visited[city] and (best_cost is None or row[city] < best_cost):
                best_city, best_cost = city, row[city]
        visited[best_city] = True
        order.append(best_city)
        current = best_city
    return canonical_tour(order)


def best_upper_bound(m: NormalizedInstance) -> Tour:
    """Cheapest nearest-neighbor tour over all starts (ties: lowest start)."""
    best = None
    best_cost = None
    for start in range(m.n):
        t = nearest_neighbor(m, start)
        c = tour_cost(m.matrix.entries, t)
        if best_cost is None or c < best_cost:
            best, best_cost = t, c
    return best


def worst_upper_bound(m: NormalizedInstance) -> Tour:
    """Costliest nearest-neighbor tour over all starts (ties: lowest start).

    Deliberately bad: widens the gap between the bound and the optimum so the
    cycle search has the largest possible acceptance window.
    """
    worst = None
    worst_cost = None
    for start in range(m.n):
        t = nearest_neighbor(m, start)
        c = tour_cost(m.matrix.entries, t)
        if worst_cost is None or c > worst_cost:
            worst, worst_cost = t, c
    return worst
