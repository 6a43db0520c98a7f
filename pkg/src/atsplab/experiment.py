"""Seeded campaigns over the pipeline, with machine-readable reports.

A campaign is a pure function of its configuration: rows are generated,
solved, and verified instance by instance, sorted by (n, seed), and the
emitted report body contains no timestamps, so two runs of the same config
are byte-identical.  Every SUBOPTIMAL row is archived as a standalone
counterexample file that reproduces its verdict when replayed.
"""

from __future__ import annotations

import csv
import io
import json
import time
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Optional, Union

from .costs import INF, AsymCostMatrix
from .errors import InstanceError, SoundnessError
from .instances import Distribution, InstanceSpec, gen_instance
from .oracles import HELD_KARP_MAX_N
from .pipeline import PipelineResult, Verdict, run_pipeline

KBest = Optional[int]  # None = unbounded retention


def _k_label(k: KBest) -> str:
    return "inf" if k is None else str(k)


def _k_sort_key(k: KBest):
    return (1, 0) if k is None else (0, k)


@dataclass(frozen=True)
class InstanceGroup:
    """A block of seeds sharing one distribution and parameter set."""

    distribution: Distribution
    n: int
    seed_start: int
    seed_count: int
    lo: int = 1
    hi: int = 100
    perturbation: int = 10
    planted_cost: int = 1

    def __post_init__(self):
        object.__setattr__(self, "distribution", Distribution(self.distribution))
        if self.seed_count < 1:
            raise InstanceError("seed_count must be >= 1")
        # validate the parameter set eagerly via a probe spec
        self.spec(self.seed_start)

    def spec(self, seed: int) -> InstanceSpec:
        return InstanceSpec(
            distribution=self.distribution,
            n=self.n,
            seed=seed,
            lo=self.lo,
            hi=self.hi,
            perturbation=self.perturbation,
            planted_cost=self.planted_cost,
        )

    def specs(self):
        return [self.spec(s) for s in range(self.seed_start, self.seed_start + self.seed_count)]

    def to_dict(self) -> dict:
        d = asdict(self)
        d["distribution"] = self.distribution.value
        return d


@dataclass(frozen=True)
class ExperimentConfig:
    name: str
    groups: tuple
    k_values: tuple = (3,)
    verify: bool = True
    upper_bound: str = "best"
    oracle_limit: int = HELD_KARP_MAX_N

    def __post_init__(self):
        if not self.groups:
            raise InstanceError("config lists no instance groups")
        for k in self.k_values:
            if k is not None and (not isinstance(k, int) or k < 1):
                raise InstanceError(f"k_best values must be positive ints or null: {k!r}")
        if self.upper_bound not in ("best", "worst"):
            raise InstanceError(f"upper_bound must be 'best' or 'worst': {self.upper_bound!r}")

    @classmethod
    def from_dict(cls, data: dict) -> "ExperimentConfig":
        try:
            groups = tuple(InstanceGroup(**g) for g in data["instances"])
            k_raw = data.get("k_best", [3])
            k_values = tuple(None if k in (None, "inf") else int(k) for k in k_raw)
            return cls(
                name=str(data.get("name", "campaign")),
                groups=groups,
                k_values=k_values,
                verify=bool(data.get("verify", True)),
                upper_bound=str(data.get("upper_bound", "best")),
                oracle_limit=int(data.get("oracle_limit", HELD_KARP_MAX_N)),
            )
        except (KeyError, TypeError, ValueError) as exc:
            if isinstance(exc, InstanceError):
                raise
            raise InstanceError(f"bad experiment config: {exc}") from exc

    @classmethod
    def from_json(cls, text: str) -> "ExperimentConfig":
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise InstanceError(f"config is not valid JSON: {exc}") from exc
        return cls.from_dict(data)

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "k_best": [None if k is None else k for k in self.k_values],
            "verify": self.verify,
            "upper_bound": self.upper_bound,
            "oracle_limit": self.oracle_limit,
            "instances": [g.to_dict() for g in self.groups],
        }


@dataclass
class RowResult:
    instance_id: str
    distribution: str
    n: int
    seed: int
    k_best: KBest
    shift: Optional[int]
    upper_bound_cost: Optional[int]
    cycle_found: Optional[bool]
    final_cost: Optional[int]
    oracle_cost: Optional[int]
    verdict: str
    gap: Optional[int]
    relaxation_steps: Optional[int]
    backtracks: Optional[int]
    rejected_nonsimple: Optional[int]
    closure_steps: Optional[int]
    counterexample: Optional[str] = None
    error: Optional[str] = None
    elapsed_ms: float = 0.0  # never emitted; kept for interactive use


# column order of the CSV body and the per-row JSON objects
ROW_FIELDS = [
    "instance_id",
    "distribution",
    "n",
    "seed",
    "k_best",
    "shift",
    "upper_bound_cost",
    "cycle_found",
    "final_cost",
    "oracle_cost",
    "verdict",
    "gap",
    "relaxation_steps",
    "backtracks",
    "rejected_nonsimple",
    "closure_steps",
    "counterexample",
    "error",
]


@dataclass
class ExperimentReport:
    config: dict
    rows: list
    aggregates: dict


def _row_from_result(spec: InstanceSpec, result: PipelineResult) -> RowResult:
    c = result.counters
    return RowResult(
        instance_id=spec.instance_id,
        distribution=spec.distribution.value,
        n=spec.n,
        seed=spec.seed,
        k_best=result.k_best,
        shift=result.shift,
        upper_bound_cost=result.upper_bound_cost,
        cycle_found=result.found_cycle is not None,
        final_cost=result.final_cost,
        oracle_cost=result.oracle_cost,
        verdict=result.verdict.value,
        gap=result.gap,
        relaxation_steps=c.relaxation_steps,
        backtracks=c.backtracks,
        rejected_nonsimple=c.rejected_nonsimple,
        closure_steps=c.closure_steps,
    )


def archive_counterexample(
    spec: InstanceSpec,
    matrix: AsymCostMatrix,
    result: PipelineResult,
    upper_bound: str,
    path: Path,
) -> None:
    """Write a standalone JSON artifact that reproduces a SUBOPTIMAL verdict."""
    payload = {
        "format": "atsp-counterexample.v1",
        "instance_id": spec.instance_id,
        "distribution": spec.distribution.value,
        "n": spec.n,
        "seed": spec.seed,
        "params": {
            "lo": spec.lo,
            "hi": spec.hi,
            "perturbation": spec.perturbation,
            "planted_cost": spec.planted_cost,
        },
        "k_best": result.k_best,
        "upper_bound": upper_bound,
        "matrix": [
            [None if v == INF else v for v in row] for row in matrix.entries
        ],
        "shift": result.shift,
        "upper_bound_cost": result.upper_bound_cost,
        "final_tour": list(result.final_tour),
        "final_cost": result.final_cost,
        "oracle_tour": list(result.oracle_tour),
        "oracle_cost": result.oracle_cost,
        "gap": result.gap,
    }
    path.write_text(json.dumps(payload, sort_keys=True, indent=2) + "\n")


def load_counterexample(path: Path) -> tuple:
    """Read an archived counterexample; returns (payload, matrix)."""
    payload = json.loads(Path(path).read_text())
    if payload.get("format") != "atsp-counterexample.v1":
        raise InstanceError(f"not a counterexample artifact: {path}")
    rows = [
        [INF if v is None else v for v in row] for row in payload["matrix"]
    ]
    return payload, AsymCostMatrix.from_rows(rows)


def replay_counterexample(path: Path) -> PipelineResult:
    """Re-run the pipeline on an archived instance with its archived settings."""
    payload, matrix = load_counterexample(path)
    return run_pipeline(
        matrix,
        k_best=payload["k_best"],
        verify=True,
        upper_bound=payload.get("upper_bound", "best"),
        instance_id=payload["instance_id"],
    )


def run_experiment(
    config: ExperimentConfig, counterexample_dir: Optional[Path] = None
) -> ExperimentReport:
    """Execute the campaign and assemble the report.

    Rows are deterministic functions of (config) alone; per-row generation
    errors are recorded in the row instead of aborting (soundness violations
    are not survivable and propagate).  When ``counterexample_dir`` is given,
    every SUBOPTIMAL instance is archived there.
    """
    if counterexample_dir is not None:
        counterexample_dir = Path(counterexample_dir)
        counterexample_dir.mkdir(parents=True, exist_ok=True)
    rows = []
    for group in config.groups:
        for spec in group.specs():
            for k in config.k_values:
                rows.append(_run_row(config, spec, k, counterexample_dir))
    rows.sort(key=lambda r: (r.n, r.seed, r.distribution, _k_sort_key(r.k_best)))
    return ExperimentReport(
        config=config.to_dict(), rows=rows, aggregates=_aggregate(rows)
    )


def _run_row(config, spec, k, counterexample_dir) -> RowResult:
    start = time.perf_counter()
    try:
        matrix = gen_instance(spec)
        result = run_pipeline(
            matrix,
            k_best=k,
            verify=config.verify,
            oracle_limit=config.oracle_limit,
            upper_bound=config.upper_bound,
            instance_id=spec.instance_id,
        )
    except SoundnessError:
        raise
    except InstanceError as exc:
        return RowResult(
            instance_id=spec.instance_id,
            distribution=spec.distribution.value,
            n=spec.n,
            seed=spec.seed,
            k_best=k,
            shift=None,
            upper_bound_cost=None,
            cycle_found=None,
            final_cost=None,
            oracle_cost=None,
            verdict="ERROR",
            gap=None,
            relaxation_steps=None,
            backtracks=None,
            rejected_nonsimple=None,
            closure_steps=None,
            error=str(exc),
        )
    row = _row_from_result(spec, result)
    row.elapsed_ms = (time.perf_counter() - start) * 1000.0
    if result.verdict is Verdict.SUBOPTIMAL and counterexample_dir is not None:
        name = f"{spec.instance_id}-k{_k_label(k)}.json"
        archive_counterexample(
            spec, matrix, result, config.upper_bound, counterexample_dir / name
        )
        row.counterexample = name
    return row


def _aggregate(rows) -> dict:
    groups: dict = {}
    for r in rows:
        key = (r.distribution, r.n, _k_label(r.k_best))
        groups.setdefault(key, []).append(r)
    out = []
    for (dist, n, k), members in sorted(groups.items(), key=lambda kv: (kv[0][1], kv[0][0], kv[0][2])):
        verified = [r for r in members if r.verdict in ("OPTIMAL", "SUBOPTIMAL")]
        optimal = sum(1 for r in verified if r.verdict == "OPTIMAL")
        gaps = [r.gap for r in verified]
        backtracks = [r.backtracks for r in members if r.backtracks is not None]
        entry = {
            "distribution": dist,
            "n": n,
            "k_best": k,
            "instances": len(members),
            "errors": sum(1 for r in members if r.verdict == "ERROR"),
            "verified": len(verified),
            "optimal": optimal,
            "suboptimal": len(verified) - optimal,
            "optimality_rate": (
                round(optimal / len(verified), 6) if verified else None
            ),
            "mean_gap": round(sum(gaps) / len(gaps), 6) if gaps else None,
            "max_gap": max(gaps) if gaps else None,
            "mean_backtracks": (
                round(sum(backtracks) / len(backtracks), 6) if backtracks else None
            ),
            "max_backtracks": max(backtracks) if backtracks else None,
        }
        out.append(entry)
    return {
        "groups": out,
        "total_rows": len(rows),
        "total_optimal": sum(1 for r in rows if r.verdict == "OPTIMAL"),
        "total_suboptimal": sum(1 for r in rows if r.verdict == "SUBOPTIMAL"),
        "total_errors": sum(1 for r in rows if r.verdict == "ERROR"),
    }


def _row_cell(value) -> str:
    if value is None:
        return ""
    if value is True:
        return "true"
    if value is False:
        return "false"
    return str(value)


def emit_report(report: ExperimentReport, fmt: str) -> bytes:
    """Serialize the report body; no timestamps, so bodies are reproducible.

    JSON: one object with "config", "rows", "aggregates".  CSV: a header row
    followed by one line per instance in the ROW_FIELDS column order; an
    unbounded k_best renders as "inf"; decimal numbers only.
    """
    if fmt == "json":
        rows = []
        for r in report.rows:
            d = {f: getattr(r, f) for f in ROW_FIELDS}
            d["k_best"] = _k_label(r.k_best)
            rows.append(d)
        doc = {"config": report.config, "rows": rows, "aggregates": report.aggregates}
        return (json.dumps(doc, sort_keys=True, indent=2) + "\n").encode()
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(ROW_FIELDS)
        for r in report.rows:
            writer.writerow(
                [
                    _row_cell(_k_label(r.k_best) if f == "k_best" else getattr(r, f))
                    for f in ROW_FIELDS
                ]
            )
        return buf.getvalue().encode()
    raise InstanceError(f"unknown report format: {fmt!r}")
