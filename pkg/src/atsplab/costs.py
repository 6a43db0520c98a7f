"""Cost matrices with an infinity sentinel and the symmetric 2n-vertex lift.

Costs are exact integers; ``INF`` (``math.inf``) marks blocked arcs such as
the diagonal of an asymmetric instance and the city-city / ghost-ghost blocks
of the symmetric construction.  Floats are rejected as inputs because the
cycle search depends on exact zero / non-zero distinctions.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Sequence, Union

from .errors import InstanceError

INF = math.inf

# Entries are capped so that any sum along a 2n-vertex cycle stays far below
# 2**63 (and below 2**53, so float64 mirrors used by the oracles stay exact).
MAX_ABS_COST = 1 << 40

Cost = Union[int, float]  # an exact int, or the INF sentinel
Grid = tuple  # tuple of row tuples of Cost


def is_finite_cost(x) -> bool:
    """True for plain ints (bool is not a cost)."""
    return isinstance(x, int) and not isinstance(x, bool)


def _check_finite_entry(value, i: int, j: int) -> None:
    if not is_finite_cost(value):
        raise InstanceError(f"entry ({i},{j}) must be an integer, got {value!r}")
    if abs(value) > MAX_ABS_COST:
        raise InstanceError(
            f"entry ({i},{j}) = {value} exceeds the magnitude bound {MAX_ABS_COST}"
        )


def _freeze(rows: Iterable[Sequence[Cost]]) -> Grid:
    return tuple(tuple(row) for row in rows)


@dataclass(frozen=True)
class AsymCostMatrix:
    """n x n asymmetric cost matrix: INF diagonal, finite integer arcs.

    Vertices are 0-based cities 0..n-1.  Off-diagonal entries may be negative;
    ``normalize`` shifts them to be >= 1 before any construction that relies
    on positivity.
    """

    n: int
    entries: Grid

    def __post_init__(self):
        object.__setattr__(self, "entries", _freeze(self.entries))
        if self.n < 2:
            raise InstanceError(f"need at least 2 cities, got n={self.n}")
        if len(self.entries) != self.n or any(len(r) != self.n for r in self.entries):
            raise InstanceError(f"entries must form an {self.n}x{self.n} grid")
        for i, row in enumerate(self.entries):
            for j, value in enumerate(row):
                if i == j:
                    if value != INF:
                        raise InstanceError(f"diagonal entry ({i},{i}) must be INF")
                else:
                    _check_finite_entry(value, i, j)

    @classmethod
    def from_rows(cls, rows: Iterable[Sequence[Cost]]) -> "AsymCostMatrix":
        grid = _freeze(rows)
        return cls(n=len(grid), entries=grid)

    def min_off_diagonal(self) -> int:
        return min(
            self.entries[i][j] for i in range(self.n) for j in range(self.n) if i != j
        )

    def max_off_diagonal(self) -> int:
        return max(
            self.entries[i][j] for i in range(self.n) for j in range(self.n) if i != j
        )


@dataclass(frozen=True)
class NormalizedInstance:
    """An AsymCostMatrix whose off-diagonal entries are all >= 1.

    ``shift`` was added to every off-diagonal entry of the source matrix
    (0 when the source already had positive entries), so every tour cost grew
    by exactly n * shift and the ranking of tours is unchanged.
    ``original_min`` is the smallest off-diagonal entry of the source.
    """

    matrix: AsymCostMatrix
    shift: int
    original_min: int

    def __post_init__(self):
        if self.matrix.min_off_diagonal() < 1:
            raise InstanceError("normalized matrix must have off-diagonal entries >= 1")

    @property
    def n(self) -> int:
        return self.matrix.n


def normalize(m: AsymCostMatrix) -> NormalizedInstance:
    """Shift off-diagonal entries so the smallest becomes 1 when it was <= 0.

    The diagonal stays INF (INF absorbs any shift).  Instances whose shifted
    entries would leave the documented magnitude bound are rejected rather
    than silently wrapped.
    """
    smallest = m.min_off_diagonal()
    shift = 1 - smallest if smallest <= 0 else 0
    if shift == 0:
        return NormalizedInstance(matrix=m, shift=0, original_min=smallest)
    if m.max_off_diagonal() + shift > MAX_ABS_COST:
        raise InstanceError(
            f"normalization shift {shift} pushes entries past the bound {MAX_ABS_COST}"
        )
    rows = [
        [INF if i == j else m.entries[i][j] + shift for j in range(m.n)]
        for i in range(m.n)
    ]
    return NormalizedInstance(
        matrix=AsymCostMatrix.from_rows(rows), shift=shift, original_min=smallest
    )


def zero_diagonal(m: AsymCostMatrix) -> Grid:
    """Copy of the matrix grid with the INF diagonal replaced by 0."""
    return tuple(
        tuple(0 if i == j else m.entries[i][j] for j in range(m.n))
        for i in range(m.n)
    )


class SymmetricVariant(Enum):
    """Diagonal treatment used when pairing each city with its ghost."""

    ZERO_DIAG = "zero-diag"  # pairing arcs cost 0
    JV_NEG_M = "jv-negm"  # classic variant: pairing arcs cost -M' (largest arc)


@dataclass(frozen=True)
class SymmetricInstance:
    """2n x 2n symmetric matrix pairing cities 0..n-1 with ghosts n..2n-1.

    Finite entries live only in the city/ghost cross blocks:
    entries[i][n+j] = entries[n+j][i] = d[i][j] where d is the source matrix
    with its diagonal replaced (by 0 or by -M' depending on the variant).
    Both same-kind blocks are INF.
    """

    n: int
    size: int
    entries: Grid
    variant: SymmetricVariant
    mprime: Union[int, None]  # largest off-diagonal source entry; JV_NEG_M only

    def __post_init__(self):
        object.__setattr__(self, "entries", _freeze(self.entries))
        if self.size != 2 * self.n:
            raise InstanceError("symmetric instance must have size 2n")
        if len(self.entries) != self.size or any(
            len(r) != self.size for r in self.entries
        ):
            raise InstanceError(f"entries must form a {self.size}x{self.size} grid")


def build_symmetric(
    m: NormalizedInstance, variant: SymmetricVariant = SymmetricVariant.ZERO_DIAG
) -> SymmetricInstance:
    """Assemble the symmetric 2n-vertex instance from a normalized matrix."""
    n = m.n
    mprime = m.matrix.max_off_diagonal() if variant is SymmetricVariant.JV_NEG_M else None
    pair_cost = 0 if variant is SymmetricVariant.ZERO_DIAG else -mprime
    d = [
        [pair_cost if i == j else m.matrix.entries[i][j] for j in range(n)]
        for i in range(n)
    ]
    size = 2 * n
    rows = [[INF] * size for _ in range(size)]
    for i in range(n):
        for j in range(n):
            rows[i][n + j] = d[i][j]
            rows[n + j][i] = d[i][j]
    return SymmetricInstance(
        n=n, size=size, entries=rows, variant=variant, mprime=mprime
    )
