"""K-best simple-path relaxation over the permuted matrix, and cycle closure.

The permuted matrix has zero diagonal and strictly positive finite entries
confined to its two n x n blocks, so within a block every simple path using
positive arcs prices a same-cost alternating path of the symmetric instance
(each arc i -> j stands for the symmetric arc pair i -> pairing(j),
pairing(j) -> j, whose second half is a free pairing step).

The table keeps, for every ordered in-block pair (i, j), up to K cheapest
simple paths i -> j.  Cells are relaxed Floyd-Warshall style: for each
intermediate vertex w, concatenations of cell(i, w) and cell(w, j) are tried
in ascending value order, and a concatenation is kept only if the two halves
share no vertex besides w (so the path stays simple).  Skipping a cheaper
non-simple concatenation and moving on to the next one in value order is the
backtracking step; the counters record how often it engages.

With K unbounded the relaxation provably enumerates every simple path (each
path splits at its highest-numbered interior vertex into two halves built in
earlier rounds).  Finite K is a genuine truncation: a cell can lose the path
a later concatenation would have needed, which is exactly the behaviour the
experiment harness measures.
"""

from __future__ import annotations

import heapq
from bisect import insort
from dataclasses import dataclass, field
from typing import NamedTuple, Optional, Union

from .costs import INF
from .errors import InstanceError
from .tours import PermutedMatrix


class PathCandidate(NamedTuple):
    value: int
    vertices: tuple  # full vertex sequence, endpoints included
    mask: int  # bitset of the vertices, for O(1) overlap tests


class CycleCandidate(NamedTuple):
    value: int
    vertices: tuple  # canonical rotation: starts at the smallest vertex


def _order_key(c: PathCandidate):
    # value first, then fewer vertices, then lexicographic sequence
    return (c.value, len(c.vertices), c.vertices)


def cycle_key(value: int, vertices: tuple, block: int):
    return (value, block, vertices)


@dataclass
class SearchCounters:
    """Work accounting for the relaxation (all counts are exact and
    deterministic; nothing here measures wall-clock)."""

    relaxation_steps: int = 0  # candidate concatenations inspected
    rejected_nonsimple: int = 0  # concatenations dropped for repeating a vertex
    backtracks: int = 0  # cell updates that skipped a non-simple cheaper option
    closure_steps: int = 0  # candidates inspected while closing cycles
    empty_cells: int = 0  # in-block cells left without any candidate

    @property
    def total_steps(self) -> int:
        return self.relaxation_steps + self.closure_steps


@dataclass
class CandidateTable:
    """Per-endpoint-pair retained simple paths plus the work counters."""

    n: int
    size: int
    k_best: Optional[int]  # None means unbounded retention
    cells: dict  # (i, j) -> list[PathCandidate], sorted by _order_key
    counters: SearchCounters = field(default_factory=SearchCounters)

    def cell(self, i: int, j: int) -> tuple:
        return tuple(self.cells.get((i, j), ()))

    def best_value(self, i: int, j: int) -> Union[int, float]:
        cands = self.cells.get((i, j))
        return cands[0].value if cands else INF


def _merge_cell(target: list, proposals: list, k: Optional[int]) -> list:
    combined = sorted(target + proposals, key=_order_key)
    merged = []
    seen = set()
    for cand in combined:
        if cand.vertices in seen:
            continue
        seen.add(cand.vertices)
        merged.append(cand)
        if k is not None and len(merged) == k:
            break
    return merged


def _relax_bounded(cells, key, left, right, w_bit, k, counters) -> None:
    """Try concatenations in ascending value order, stopping as soon as no
    further combination can still enter the cell's k-best."""
    target = cells.get(key, [])
    pool_values = sorted([c.value for c in target])
    cutoff = pool_values[k - 1] if len(pool_values) >= k else INF
    proposals = []
    rejected_here = 0

    heap = [(left[0].value + right[0].value, 0, 0)]
    pushed = {(0, 0)}
    while heap:
        value, a, b = heap[0]
        counters.relaxation_steps += 1
        if value > cutoff:
            break  # nothing cheaper is left; the cell cannot improve
        heapq.heappop(heap)
        pa, pb = left[a], right[b]
        if (pa.mask & pb.mask) == w_bit:
            proposals.append(
                PathCandidate(value, pa.vertices + pb.vertices[1:], pa.mask | pb.mask)
            )
            if len(pool_values) < k or value < pool_values[-1]:
                insort(pool_values, value)
                if len(pool_values) > k:
                    pool_values.pop()
            if len(pool_values) >= k:
                cutoff = pool_values[k - 1]
        else:
            counters.rejected_nonsimple += 1
            rejected_here += 1
        if a + 1 < len(left) and (a + 1, b) not in pushed:
            heapq.heappush(heap, (left[a + 1].value + right[b].value, a + 1, b))
            pushed.add((a + 1, b))
        if b + 1 < len(right) and (a, b + 1) not in pushed:
            heapq.heappush(heap, (left[a].value + right[b + 1].value, a, b + 1))
            pushed.add((a, b + 1))

    if rejected_here and proposals:
        counters.backtracks += 1
    if proposals:
        cells[key] = _merge_cell(target, proposals, k)


def _relax_unbounded(cells, key, left, right, w_bit, counters) -> None:
    proposals = []
    rejected_here = 0
    for pa in left:
        va, verts_a, mask_a = pa
        for pb in right:
            counters.relaxation_steps += 1
            if (mask_a & pb.mask) == w_bit:
                proposals.append(
                    PathCandidate(va + pb.value, verts_a + pb.vertices[1:], mask_a | pb.mask)
                )
            else:
                counters.rejected_nonsimple += 1
                rejected_here += 1
    if rejected_here and proposals:
        counters.backtracks += 1
    if proposals:
        cells[key] = _merge_cell(cells.get(key, []), proposals, None)


def floyd_warshall_k_best(p: PermutedMatrix, k_best: Optional[int]) -> CandidateTable:
    """Build the table of up to ``k_best`` cheapest simple paths per cell.

    Cells start from the single positive arcs of the permuted matrix and are
    relaxed block by block; paths never leave their block because every
    cross-block entry is INF.  ``k_best=None`` retains every simple path
    (exhaustive; exponential space, fine at referee scale).
    """
    if k_best is not None and k_best < 1:
        raise InstanceError(f"k_best must be >= 1 or None, got {k_best}")
    counters = SearchCounters()
    cells: dict = {}
    entries = p.entries
    for block in (0, 1):
        verts = list(p.block_vertices(block))
        for i in verts:
            row = entries[i]
            for j in verts:
                if i != j and row[j] != INF and row[j] > 0:
                    cells[(i, j)] = [
                        PathCandidate(row[j], (i, j), (1 << i) | (1 << j))
                    ]
        for w in verts:
            w_bit = 1 << w
            for i in verts:
                if i == w:
                    continue
                left = cells.get((i, w))
                if not left:
                    continue
                for j in verts:
                    if j == w or j == i:
                        continue
                    right = cells.get((w, j))
                    if not right:
                        continue
                    if k_best is None:
                        _relax_unbounded(cells, (i, j), left, right, w_bit, counters)
                    else:
                        _relax_bounded(cells, (i, j), left, right, w_bit, k_best, counters)
        counters.empty_cells += sum(
            1 for i in verts for j in verts if i != j and not cells.get((i, j))
        )
    return CandidateTable(
        n=p.n, size=p.size, k_best=k_best, cells=cells, counters=counters
    )


def _canonical_rotation(vertices: tuple) -> tuple:
    k = vertices.index(min(vertices))
    return vertices[k:] + vertices[:k]


def min_n_arc_cycle(
    table: CandidateTable, p: PermutedMatrix, bound: Union[int, float]
) -> Optional[CycleCandidate]:
    """Cheapest n-arc simple cycle with value strictly below ``bound``.

    Closes each retained path i -> j with the arc j -> i and keeps closures
    whose vertex count is exactly n (one vertex per city/ghost pairing, all
    inside one block); shorter cycles cannot produce tours.  Ties prefer the
    city block, then the lexicographically smallest canonical rotation.
    Returns None when no qualifying cycle beats the bound, which signals the
    caller to fall back to the upper-bound tour.  Candidate inspections are
    added to ``table.counters.closure_steps``.
    """
    n = table.n
    entries = p.entries
    best = None
    best_key = None
    for block in (0, 1):
        verts = p.block_vertices(block)
        for i in verts:
            for j in verts:
                if i == j:
                    continue
                cands = table.cells.get((i, j))
                if not cands:
                    continue
                closing = entries[j][i]
                if closing == INF or closing <= 0:
                    continue
                for cand in cands:
                    table.counters.closure_steps += 1
                    if len(cand.vertices) != n:
                        continue
                    value = cand.value + closing
                    if value >= bound:
                        continue
                    canon = _canonical_rotation(cand.vertices)
                    key = cycle_key(value, canon, block)
                    if best_key is None or key < best_key:
                        best = CycleCandidate(value=value, vertices=canon)
                        best_key = key
    return best
