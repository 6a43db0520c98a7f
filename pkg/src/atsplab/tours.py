"""Permutations, tours, and the moves between the n-city and 2n-vertex spaces.

A permutation is a tuple ``p`` with ``p[v]`` the successor (image) of vertex
``v``.  A tour is a tuple listing each city exactly once, canonically rotated
to start at city 0.  Lifting interleaves a tour with its ghosts:

    (t0, t1, ..., t_{n-1})  ->  (t0, t1+n, t1, t2+n, t2, ..., t_{n-1}+n? ...)

more precisely (t0, ghost(t1), t1, ghost(t2), t2, ..., ghost(t0)), so every
ghost is immediately followed by its own city and those pairing arcs cost 0
in the zero-diagonal symmetric instance.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple, Sequence, Union

from .costs import INF, Cost, Grid, SymmetricInstance, SymmetricVariant
from .errors import InstanceError, NotAlternatingError

Permutation = tuple  # tuple[int, ...], successor form
Tour = tuple  # tuple[int, ...], canonical rotation (starts at 0)


# ---------------------------------------------------------------------------
# permutation basics
# ---------------------------------------------------------------------------

def identity_permutation(size: int) -> Permutation:
    return tuple(range(size))


def is_permutation(p: Sequence[int]) -> bool:
    return sorted(p) == list(range(len(p)))


def compose(p: Permutation, q: Permutation) -> Permutation:
    """(p o q)(v) = p(q(v))."""
    return tuple(p[q[v]] for v in range(len(p)))


def inverse(p: Permutation) -> Permutation:
    inv = [0] * len(p)
    for v, image in enumerate(p):
        inv[image] = v
    return tuple(inv)


def cycle_decomposition(p: Permutation) -> list:
    """Cycles of a successor permutation, each rotated to start at its
    smallest vertex, listed in order of that smallest vertex."""
    seen = [False] * len(p)
    cycles = []
    for start in range(len(p)):
        if seen[start]:
            continue
        cycle = []
        v = start
        while not seen[v]:
            seen[v] = True
            cycle.append(v)
            v = p[v]
        cycles.append(tuple(cycle))
    return cycles


def ghost_pairing(n: int) -> Permutation:
    """The involution swapping each city i with its ghost i+n.

    This is the product of the n two-cycles (ghost(t), t) for any tour order,
    so it does not depend on a tour.
    """
    if n < 2:
        raise InstanceError(f"need at least 2 cities, got n={n}")
    return tuple(list(range(n, 2 * n)) + list(range(n)))


# ---------------------------------------------------------------------------
# tours
# ---------------------------------------------------------------------------

def canonical_tour(seq: Sequence[int]) -> Tour:
    """Validate a city sequence and rotate it to start at city 0."""
    n = len(seq)
    if n < 2 or sorted(seq) != list(range(n)):
        raise InstanceError(f"not a tour over 0..{n - 1}: {tuple(seq)}")
    k = seq.index(0) if not isinstance(seq, tuple) else seq.index(0)
    return tuple(seq[k:]) + tuple(seq[:k])


def tour_cost(grid: Grid, order: Sequence[int]) -> Cost:
    """Sum of arc costs along a cyclic vertex sequence; INF if any arc is INF."""
    total = 0
    for k, u in enumerate(order):
        v = order[(k + 1) % len(order)]
        c = grid[u][v]
        if c == INF:
            return INF
        total += c
    return total


def successor_cost(grid: Grid, p: Permutation) -> Cost:
    """Sum of grid[v][p(v)] over all vertices; INF if any arc is INF."""
    total = 0
    for v, image in enumerate(p):
        c = grid[v][image]
        if c == INF:
            return INF
        total += c
    return total


class LiftedTour(NamedTuple):
    order: tuple  # 2n vertices, alternating city / ghost
    cost: Cost


def lift_tour(t: Sequence[int], s: SymmetricInstance) -> LiftedTour:
    """Interleave a tour with ghosts and price it in the symmetric instance.

    Under the zero-diagonal variant the pairing arcs contribute 0, so the
    lifted cost equals the tour's cost in the normalized asymmetric matrix.
    """
    n = s.n
    if len(t) != n:
        raise InstanceError(f"tour has {len(t)} cities but instance has {n}")
    order = [t[0]]
    for k in range(1, n):
        order.append(t[k] + n)  # ghost of the next city, then the city itself
        order.append(t[k])
    order.append(t[0] + n)
    order = tuple(order)
    return LiftedTour(order=order, cost=tour_cost(s.entries, order))


def project_tour(order: Sequence[int], n: int) -> Tour:
    """Collapse a 2n-vertex cycle back to its asymmetric tour.

    The cycle must alternate city/ghost with every ghost immediately followed
    by its own city (its pairing partner).  Both traversal orientations are
    tried because a cycle and its reversal describe the same symmetric tour;
    in the valid orientation the city -> ghost arcs are the cost-carrying
    (non-pairing) ones.  Raises NotAlternatingError when neither orientation
    alternates correctly, meaning the symmetric cycle corresponds to no
    asymmetric tour.
    """
    size = 2 * n
    if sorted(order) != list(range(size)):
        raise InstanceError(f"cycle must visit each of 0..{size - 1} once")

    def try_orient(seq):
        k = seq.index(0)
        rotated = seq[k:] + seq[:k]
        cities = []
        for pos in range(0, size, 2):
            city, ghost = rotated[pos], rotated[pos + 1]
            if city >= n or ghost < n:
                return None
            # the ghost must pair with the *following* city (cyclically)
            nxt = rotated[(pos + 2) % size]
            if ghost != nxt + n:
                return None
            cities.append(city)
        return tuple(cities)

    seq = list(order)
    for candidate in (seq, seq[::-1]):
        cities = try_orient(candidate)
        if cities is not None:
            return canonical_tour(cities)
    raise NotAlternatingError(
        "cycle does not alternate pairing steps; no corresponding tour"
    )


# ---------------------------------------------------------------------------
# the pairing-permuted matrix
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PermutedMatrix:
    """The symmetric instance with its columns permuted by the ghost pairing.

    P[i][j] = M(s)[i][pairing(j)].  The diagonal is all zero and every finite
    off-diagonal entry is strictly positive; finite support is exactly the
    city block (both indices < n) and the ghost block (both >= n), which
    reproduce the zero-diagonal source matrix and its transpose.
    """

    size: int
    entries: Grid
    pairing: Permutation

    @property
    def n(self) -> int:
        return self.size // 2

    def block_of(self, v: int) -> int:
        """0 for the city block, 1 for the ghost block."""
        return 0 if v < self.n else 1

    def block_vertices(self, block: int) -> range:
        return range(0, self.n) if block == 0 else range(self.n, self.size)


def permuted_matrix(s: SymmetricInstance, sigma: Permutation) -> PermutedMatrix:
    """Apply the pairing involution to the columns of the symmetric matrix.

    Only the zero-diagonal variant yields the all-zero diagonal the cycle
    search relies on, and only the exact pairing involution produces it, so
    both are enforced here.
    """
    if s.variant is not SymmetricVariant.ZERO_DIAG:
        raise InstanceError("permuted matrix requires the zero-diagonal variant")
    if tuple(sigma) != ghost_pairing(s.n):
        raise InstanceError("column permutation must be the ghost pairing involution")
    size = s.size
    rows = tuple(
        tuple(s.entries[i][sigma[j]] for j in range(size)) for i in range(size)
    )
    n = s.n
    for i in range(size):
        if rows[i][i] != 0:
            raise InstanceError(f"permuted diagonal entry ({i},{i}) is not zero")
        for j in range(size):
            same_block = (i < n) == (j < n)
            if i != j and same_block and rows[i][j] != INF and rows[i][j] < 1:
                raise InstanceError(
                    f"permuted entry ({i},{j}) = {rows[i][j]} is not strictly positive"
                )
    return PermutedMatrix(size=size, entries=rows, pairing=tuple(sigma))


def apply_cycle(sigma: Permutation, cycle: Sequence[int]) -> Permutation:
    """Redirect the pairing along a cycle of the permuted matrix.

    ``cycle`` lists distinct vertices v0 -> v1 -> ... -> v_{k-1} -> v0.  The
    result maps each cycle vertex v to sigma(successor of v in the cycle) and
    every other vertex to sigma(v).  Arc (v, w) of the permuted matrix prices
    the symmetric arc (v, sigma(w)), so the cost of the returned successor
    structure over the symmetric instance equals the cycle's value (pairs not
    on the cycle ride the zero diagonal).
    """
    if len(set(cycle)) != len(cycle):
        raise InstanceError(f"cycle vertices must be distinct: {tuple(cycle)}")
    result = list(sigma)
    k = len(cycle)
    for idx, v in enumerate(cycle):
        result[v] = sigma[cycle[(idx + 1) % k]]
    return tuple(result)


def random_tour(n: int, rng) -> Tour:
    """Canonical random tour drawn with the portable RNG (Fisher-Yates)."""
    order = list(range(n))
    rng.shuffle(order)
    return canonical_tour(order)
