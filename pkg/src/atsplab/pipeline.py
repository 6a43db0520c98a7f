"""End-to-end solve: normalize, lift, search for a cycle, fall back if none.

The chain is: normalize the instance, build the zero-diagonal symmetric
lift, take a greedy tour as the acceptance bound, permute columns by the
ghost pairing, run the k-best simple-path relaxation, and look for a minimal
positive n-arc cycle cheaper than the bound.  If one exists it is spliced
into the pairing and projected back to an asymmetric tour; otherwise the
bound tour is already the answer the procedure can certify.

Costs in the result are reported in the units of the *original* matrix
(normalization adds exactly n * shift to every tour, so the subtraction is
exact).  When verification is on and the instance is small enough, the exact
Held-Karp optimum is attached and the result carries a verdict; a pipeline
cost below the oracle cost or above the bound is impossible by construction,
so either one raises SoundnessError instead of producing a verdict.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Optional, Union

from .bounds import best_upper_bound, worst_upper_bound
from .costs import AsymCostMatrix, SymmetricVariant, build_symmetric, normalize
from .cyclesearch import (
    CandidateTable,
    CycleCandidate,
    SearchCounters,
    floyd_warshall_k_best,
    min_n_arc_cycle,
)
from .errors import InstanceError, SoundnessError
from .oracles import HELD_KARP_MAX_N, held_karp
from .tours import (
    Tour,
    apply_cycle,
    cycle_decomposition,
    ghost_pairing,
    lift_tour,
    permuted_matrix,
    project_tour,
    tour_cost,
)


class Verdict(Enum):
    OPTIMAL = "OPTIMAL"
    SUBOPTIMAL = "SUBOPTIMAL"
    UNVERIFIED = "UNVERIFIED"


@dataclass(frozen=True)
class PipelineResult:
    instance_id: str
    n: int
    k_best: Optional[int]
    shift: int  # per-entry normalization shift; tour costs moved by n * shift
    upper_bound_tour: Tour
    upper_bound_cost: int  # original units
    found_cycle: Optional[CycleCandidate]  # value in normalized units
    final_tour: Tour
    final_cost: int  # original units
    oracle_cost: Optional[int]
    oracle_tour: Optional[Tour]
    verdict: Verdict
    gap: Optional[int]  # final_cost - oracle_cost when verified
    counters: SearchCounters

    def __post_init__(self):
        if self.final_cost > self.upper_bound_cost:
            raise SoundnessError("final cost exceeds the upper bound")
        if self.verdict is Verdict.OPTIMAL and self.final_cost != self.oracle_cost:
            raise SoundnessError("OPTIMAL verdict with final != oracle")

    @property
    def normalized_final_cost(self) -> int:
        return self.final_cost + self.n * self.shift

    @property
    def normalized_upper_bound_cost(self) -> int:
        return self.upper_bound_cost + self.n * self.shift


def run_pipeline(
    matrix: AsymCostMatrix,
    k_best: Optional[int] = 3,
    verify: bool = True,
    oracle_limit: int = HELD_KARP_MAX_N,
    upper_bound: str = "best",
    instance_id: str = "adhoc",
) -> PipelineResult:
    """Run the full search on one instance.

    ``upper_bound`` selects the greedy bound: "best" (cheapest
    nearest-neighbor start) or "worst" (costliest start, loosening the
    acceptance window on purpose).  ``verify`` attaches the exact optimum
    whenever n <= min(oracle_limit, Held-Karp's own limit).  Fully
    deterministic for fixed inputs.
    """
    n = matrix.n
    norm = normalize(matrix)
    sym = build_symmetric(norm, SymmetricVariant.ZERO_DIAG)
    if upper_bound == "best":
        ub_tour = best_upper_bound(norm)
    elif upper_bound == "worst":
        ub_tour = worst_upper_bound(norm)
    else:
        raise InstanceError(f"unknown upper_bound choice: {upper_bound!r}")
    lifted = lift_tour(ub_tour, sym)
    bound_norm = lifted.cost
    if bound_norm != tour_cost(norm.matrix.entries, ub_tour):
        raise SoundnessError("lifted tour cost differs from asymmetric tour cost")

    sigma = ghost_pairing(n)
    p = permuted_matrix(sym, sigma)
    table = floyd_warshall_k_best(p, k_best)
    cycle = min_n_arc_cycle(table, p, bound_norm)

    if cycle is None:
        final_tour = ub_tour
        final_norm = bound_norm
    else:
        successor = apply_cycle(sigma, cycle.vertices)
        cycles = cycle_decomposition(successor)
        if len(cycles) != 1 or len(cycles[0]) != 2 * n:
            raise SoundnessError("accepted cycle did not produce a single 2n-cycle")
        final_tour = project_tour(cycles[0], n)
        final_norm = tour_cost(norm.matrix.entries, final_tour)
        if final_norm != cycle.value:
            raise SoundnessError("projected tour cost differs from cycle value")

    shift_total = n * norm.shift
    final_cost = final_norm - shift_total
    ub_cost = bound_norm - shift_total
    if final_cost > ub_cost:
        raise SoundnessError("final cost exceeds the upper bound")

    oracle_cost = None
    oracle_tour = None
    gap = None
    verdict = Verdict.UNVERIFIED
    if verify and n <= min(oracle_limit, HELD_KARP_MAX_N):
        oracle = held_karp(matrix)
        oracle_cost = oracle.optimal_cost
        oracle_tour = oracle.optimal_tour
        if final_cost < oracle_cost:
            raise SoundnessError("pipeline beat the exact optimum; impossible")
        gap = final_cost - oracle_cost
        verdict = Verdict.OPTIMAL if gap == 0 else Verdict.SUBOPTIMAL

    return PipelineResult(
        instance_id=instance_id,
        n=n,
        k_best=k_best,
        shift=norm.shift,
        upper_bound_tour=ub_tour,
        upper_bound_cost=ub_cost,
        found_cycle=cycle,
        final_tour=final_tour,
        final_cost=final_cost,
        oracle_cost=oracle_cost,
        oracle_tour=oracle_tour,
        verdict=verdict,
        gap=gap,
        counters=table.counters,
    )
