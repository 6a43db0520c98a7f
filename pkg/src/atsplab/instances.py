"""Seeded instance generation and TSPLIB ingestion.

Generation is bit-reproducible: the draw order for every distribution is
fixed and documented on ``gen_instance``, and the RNG is the portable
xoshiro256** stream, so (spec, seed) identifies a matrix across platforms
and languages.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from enum import Enum

from .costs import INF, MAX_ABS_COST, AsymCostMatrix
from .errors import (
    InstanceError,
    MalformedError,
    NonIntegerError,
    UnsupportedFormatError,
)
from .rng import MASK64, Xoshiro256StarStar


class Distribution(str, Enum):
    UNIFORM = "uniform"
    NEAR_SYMMETRIC = "near-symmetric"
    PLANTED = "planted"
    NEGATIVE_SHIFTED = "negative-shifted"


@dataclass(frozen=True)
class InstanceSpec:
    """Recipe for one matrix: distribution, size, parameters, 64-bit seed.

    Parameter meaning by distribution:
      UNIFORM            every arc uniform in [lo, hi]
      NEAR_SYMMETRIC     symmetric base in [lo, hi] plus independent uniform
                         [0, perturbation] on each direction
      PLANTED            background arcs uniform in [lo, hi], one hidden tour
                         whose arcs all cost planted_cost < lo (so the
                         planted tour is the unique optimum)
      NEGATIVE_SHIFTED   uniform in [lo, hi] with lo <= 0, then translated so
                         the smallest arc equals lo exactly (guaranteeing the
                         normalization shift engages)
    """

    distribution: Distribution
    n: int
    seed: int
    lo: int = 1
    hi: int = 100
    perturbation: int = 10
    planted_cost: int = 1

    def __post_init__(self):
        object.__setattr__(self, "distribution", Distribution(self.distribution))
        if self.n < 2:
            raise InstanceError(f"need n >= 2, got {self.n}")
        if not 0 <= self.seed <= MASK64:
            raise InstanceError(f"seed must fit in 64 bits, got {self.seed}")
        if self.lo > self.hi:
            raise InstanceError(f"empty range [{self.lo}, {self.hi}]")
        bound = max(abs(self.lo), abs(self.hi)) + max(self.perturbation, 0)
        if bound > MAX_ABS_COST:
            raise InstanceError(f"range leaves the magnitude bound {MAX_ABS_COST}")
        if self.distribution is Distribution.UNIFORM:
            pass
        elif self.distribution is Distribution.NEAR_SYMMETRIC:
            if self.perturbation < 0:
                raise InstanceError("perturbation must be >= 0")
        elif self.distribution is Distribution.PLANTED:
            if self.planted_cost < 1:
                raise InstanceError("planted_cost must be >= 1")
            if self.lo <= self.planted_cost:
                raise InstanceError(
                    "background range must start above planted_cost, "
                    "otherwise the planted tour need not be optimal"
                )
        elif self.distribution is Distribution.NEGATIVE_SHIFTED:
            if self.lo > 0:
                raise InstanceError("NEGATIVE_SHIFTED requires lo <= 0")

    @property
    def instance_id(self) -> str:
        return f"{self.distribution.value}-n{self.n}-s{self.seed}"


def gen_instance(spec: InstanceSpec) -> AsymCostMatrix:
    """Deterministic matrix for a spec; identical spec and seed, identical bits.

    Draw order: UNIFORM and NEGATIVE_SHIFTED fill off-diagonal entries in
    row-major order.  NEAR_SYMMETRIC walks unordered pairs i < j in row-major
    order drawing (base, delta_ij, delta_ji).  PLANTED draws the background
    row-major, then Fisher-Yates-shuffles [0..n-1] for the hidden tour.
    """
    rng = Xoshiro256StarStar(spec.seed)
    n = spec.n
    rows = [[INF] * n for _ in range(n)]
    dist = spec.distribution
    if dist in (Distribution.UNIFORM, Distribution.NEGATIVE_SHIFTED):
        for i in range(n):
            for j in range(n):
                if i != j:
                    rows[i][j] = rng.randint(spec.lo, spec.hi)
        if dist is Distribution.NEGATIVE_SHIFTED:
            # pin the minimum to lo so the normalization shift always engages
            drawn_min = min(rows[i][j] for i in range(n) for j in range(n) if i != j)
            delta = drawn_min - spec.lo
            for i in range(n):
                for j in range(n):
                    if i != j:
                        rows[i][j] -= delta
    elif dist is Distribution.NEAR_SYMMETRIC:
        for i in range(n):
            for j in range(i + 1, n):
                base = rng.randint(spec.lo, spec.hi)
                rows[i][j] = base + rng.randint(0, spec.perturbation)
                rows[j][i] = base + rng.randint(0, spec.perturbation)
    elif dist is Distribution.PLANTED:
        for i in range(n):
            for j in range(n):
                if i != j:
                    rows[i][j] = rng.randint(spec.lo, spec.hi)
        order = list(range(n))
        rng.shuffle(order)
        for k in range(n):
            rows[order[k]][order[(k + 1) % n]] = spec.planted_cost
    return AsymCostMatrix.from_rows(rows)


def planted_tour(spec: InstanceSpec):
    """Re-derive the hidden tour of a PLANTED spec (same stream, same draws)."""
    if spec.distribution is not Distribution.PLANTED:
        raise InstanceError("planted_tour only applies to PLANTED specs")
    rng = Xoshiro256StarStar(spec.seed)
    for _ in range(spec.n * (spec.n - 1)):
        rng.randint(spec.lo, spec.hi)
    order = list(range(spec.n))
    rng.shuffle(order)
    return tuple(order)


# ---------------------------------------------------------------------------
# TSPLIB
# ---------------------------------------------------------------------------

_INT_TOKEN = re.compile(r"^[+-]?\d+$")
_HEADER_LINE = re.compile(r"^\s*([A-Z_][A-Z_0-9]*)\s*(?::\s*(.*?))?\s*$")


def parse_tsplib(text: str) -> AsymCostMatrix:
    """Parse an EXPLICIT / FULL_MATRIX ATSP file into a cost matrix.

    The header part is line-oriented (KEY: VALUE); the weight section
    is a whitespace-insensitive stream of exactly DIMENSION**2 integer
    tokens.  Diagonal entries in the file (conventionally a huge placeholder)
    are replaced by the INF sentinel.  Raises UnsupportedFormatError for
    non-ATSP types or other weight encodings, NonIntegerError for bad weight
    tokens, MalformedError for everything else.
    """
    header: dict = {}
    weight_tokens: list = []
    in_weights = False
    for raw_line in text.splitlines():
        line = raw_line.strip()
        if not line:
            continue
        if in_weights:
            if line == "EOF":
                in_weights = False
                continue
            weight_tokens.extend(line.split())
            continue
        match = _HEADER_LINE.match(line)
        if match and match.group(2) is not None:
            header[match.group(1)] = match.group(2).strip()
        elif match and match.group(2) is None:
            keyword = match.group(1)
            if keyword == "EDGE_WEIGHT_SECTION":
                in_weights = True
            elif keyword == "EOF":
                break
            else:
                raise MalformedError(f"unsupported section: {keyword}")
        else:
            raise MalformedError(f"unparseable header line: {raw_line!r}")

    file_type = header.get("TYPE")
    if file_type is None:
        raise MalformedError("missing TYPE")
    if file_type != "ATSP":
        raise UnsupportedFormatError(f"TYPE must be ATSP, got {file_type}")
    weight_type = header.get("EDGE_WEIGHT_TYPE")
    if weight_type != "EXPLICIT":
        raise UnsupportedFormatError(
            f"EDGE_WEIGHT_TYPE must be EXPLICIT, got {weight_type}"
        )
    weight_format = header.get("EDGE_WEIGHT_FORMAT")
    if weight_format != "FULL_MATRIX":
        raise UnsupportedFormatError(
            f"EDGE_WEIGHT_FORMAT must be FULL_MATRIX, got {weight_format}"
        )
    dimension_text = header.get("DIMENSION")
    if dimension_text is None or not _INT_TOKEN.match(dimension_text):
        raise MalformedError(f"missing or non-integer DIMENSION: {dimension_text!r}")
    n = int(dimension_text)
    if n < 2:
        raise MalformedError(f"DIMENSION must be >= 2, got {n}")
    if len(weight_tokens) != n * n:
        raise MalformedError(
            f"DIMENSION {n} needs {n * n} weights, found {len(weight_tokens)}"
        )
    rows = []
    for i in range(n):
        row = []
        for j in range(n):
            token = weight_tokens[i * n + j]
            if not _INT_TOKEN.match(token):
                raise NonIntegerError(f"weight ({i},{j}) is not an integer: {token!r}")
            # self-loop weights in the file are placeholders; store INF
            row.append(INF if i == j else int(token))
        rows.append(row)
    try:
        return AsymCostMatrix.from_rows(rows)
    except InstanceError as exc:
        raise MalformedError(str(exc)) from exc
