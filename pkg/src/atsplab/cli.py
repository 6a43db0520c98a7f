"""Command-line front end.

Verbs: transform (emit the symmetric and permuted matrices), solve (run the
pipeline on one instance), oracle (exact solve), experiment (seeded
campaign from a JSON config), verify (invariant suite on one instance).

Exit codes: 0 success, 1 configuration or input error, 2 soundness
violation (the pipeline's oracle <= final <= bound sandwich failed, or a
verify check found an invariant broken).
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .bounds import best_upper_bound
from .costs import (
    INF,
    AsymCostMatrix,
    SymmetricVariant,
    build_symmetric,
    normalize,
)
from .errors import AtspError, SoundnessError
from .experiment import ExperimentConfig, emit_report, run_experiment
from .instances import Distribution, InstanceSpec, gen_instance, parse_tsplib
from .oracles import (
    BRUTE_FORCE_MAX_N,
    HELD_KARP_MAX_N,
    brute_force_atsp,
    held_karp,
)
from .pipeline import run_pipeline
from .rng import Xoshiro256StarStar
from .tours import (
    ghost_pairing,
    lift_tour,
    permuted_matrix,
    project_tour,
    random_tour,
    tour_cost,
)


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse defaults to exit code 2; keep 2 for soundness
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _k_best_arg(text: str):
    if text == "inf":
        return None
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("k-best must be >= 1 or 'inf'")
    return value


def _common_flags() -> _Parser:
    common = _Parser(add_help=False)
    g = common.add_argument_group("global flags")
    g.add_argument("--n", type=int, default=8, help="instance size (default 8)")
    g.add_argument("--seed", type=int, default=1, help="64-bit instance seed")
    g.add_argument("--k-best", type=_k_best_arg, default=3,
                   help="retention width K, or 'inf' for unbounded (default 3)")
    g.add_argument("--variant", choices=[v.value for v in SymmetricVariant],
                   default=SymmetricVariant.ZERO_DIAG.value,
                   help="symmetric diagonal variant (default zero-diag)")
    g.add_argument("--format", choices=["json", "csv"], default="json",
                   help="output format (default json)")
    g.add_argument("--limit-oracle", type=int, default=HELD_KARP_MAX_N,
                   help="largest n the verification oracle may attempt")
    s = common.add_argument_group("instance source")
    s.add_argument("--dist", choices=[d.value for d in Distribution],
                   default=Distribution.UNIFORM.value)
    s.add_argument("--lo", type=int, default=1)
    s.add_argument("--hi", type=int, default=100)
    s.add_argument("--perturbation", type=int, default=10)
    s.add_argument("--planted-cost", type=int, default=1)
    s.add_argument("--tsplib", type=Path, default=None,
                   help="read the instance from a TSPLIB ATSP file instead")
    return common


def _load_instance(args):
    if args.tsplib is not None:
        matrix = parse_tsplib(args.tsplib.read_text())
        return matrix, f"tsplib:{args.tsplib.name}"
    spec = InstanceSpec(
        distribution=Distribution(args.dist),
        n=args.n,
        seed=args.seed,
        lo=args.lo,
        hi=args.hi,
        perturbation=args.perturbation,
        planted_cost=args.planted_cost,
    )
    return gen_instance(spec), spec.instance_id


def _grid_jsonable(grid):
    return [[None if v == INF else v for v in row] for row in grid]


def _emit(args, doc: dict, csv_rows=None) -> None:
    if args.format == "json":
        print(json.dumps(doc, sort_keys=True, indent=2))
    else:
        import csv as _csv

        writer = _csv.writer(sys.stdout, lineterminator="\n")
        for row in csv_rows or []:
            writer.writerow(row)


def _cmd_transform(args) -> int:
    matrix, instance_id = _load_instance(args)
    norm = normalize(matrix)
    variant = SymmetricVariant(args.variant)
    sym = build_symmetric(norm, variant)
    doc = {
        "instance_id": instance_id,
        "n": matrix.n,
        "shift": norm.shift,
        "variant": variant.value,
        "symmetric": _grid_jsonable(sym.entries),
    }
    grids = [("symmetric", sym.entries)]
    if variant is SymmetricVariant.ZERO_DIAG:
        p = permuted_matrix(sym, ghost_pairing(matrix.n))
        doc["permuted"] = _grid_jsonable(p.entries)
        grids.append(("permuted", p.entries))
    rows = [["matrix", "row", "col", "value"]]
    for name, grid in grids:
        for i, grow in enumerate(grid):
            for j, v in enumerate(grow):
                rows.append([name, i, j, "inf" if v == INF else v])
    _emit(args, doc, rows)
    return 0


def _result_doc(result) -> dict:
    c = result.counters
    return {
        "instance_id": result.instance_id,
        "n": result.n,
        "k_best": "inf" if result.k_best is None else result.k_best,
        "shift": result.shift,
        "upper_bound_cost": result.upper_bound_cost,
        "upper_bound_tour": list(result.upper_bound_tour),
        "cycle_found": result.found_cycle is not None,
        "cycle_value": result.found_cycle.value if result.found_cycle else None,
        "final_tour": list(result.final_tour),
        "final_cost": result.final_cost,
        "oracle_cost": result.oracle_cost,
        "verdict": result.verdict.value,
        "gap": result.gap,
        "relaxation_steps": c.relaxation_steps,
        "backtracks": c.backtracks,
        "rejected_nonsimple": c.rejected_nonsimple,
        "closure_steps": c.closure_steps,
    }


def _cmd_solve(args) -> int:
    matrix, instance_id = _load_instance(args)
    result = run_pipeline(
        matrix,
        k_best=args.k_best,
        verify=not args.no_verify,
        oracle_limit=args.limit_oracle,
        upper_bound=args.upper_bound,
        instance_id=instance_id,
    )
    doc = _result_doc(result)
    keys = list(doc)
    _emit(args, doc, [keys, [doc[k] for k in keys]])
    return 0


def _cmd_oracle(args) -> int:
    matrix, instance_id = _load_instance(args)
    method = args.method
    if method == "auto":
        method = "brute-force" if matrix.n <= BRUTE_FORCE_MAX_N else "held-karp"
    solver = brute_force_atsp if method == "brute-force" else held_karp
    res = solver(matrix)
    doc = {
        "instance_id": instance_id,
        "n": matrix.n,
        "method": res.method,
        "optimal_tour": list(res.optimal_tour),
        "optimal_cost": res.optimal_cost,
        "explored": res.explored,
    }
    keys = list(doc)
    _emit(args, doc, [keys, [doc[k] for k in keys]])
    return 0


def _cmd_experiment(args) -> int:
    config = ExperimentConfig.from_json(args.config.read_text())
    out_dir = args.out
    out_dir.mkdir(parents=True, exist_ok=True)
    report = run_experiment(config, counterexample_dir=out_dir / "counterexamples")
    body = emit_report(report, args.format)
    out_path = out_dir / f"{config.name}.{args.format}"
    out_path.write_bytes(body)
    agg = report.aggregates
    print(
        f"{config.name}: {agg['total_rows']} rows, "
        f"{agg['total_optimal']} optimal, {agg['total_suboptimal']} suboptimal, "
        f"{agg['total_errors']} errors -> {out_path}"
    )
    return 0


def _cmd_verify(args) -> int:
    matrix, instance_id = _load_instance(args)
    checks = []
    n = matrix.n
    norm = normalize(matrix)
    sym = build_symmetric(norm, SymmetricVariant.ZERO_DIAG)
    size = sym.size
    ok = all(
        sym.entries[i][j] == sym.entries[j][i] for i in range(size) for j in range(size)
    )
    checks.append(("symmetric-matrix", ok))
    ok = all(
        (sym.entries[i][j] == INF) == ((i < n) == (j < n))
        for i in range(size)
        for j in range(size)
    )
    checks.append(("block-pattern", ok))
    p = permuted_matrix(sym, ghost_pairing(n))
    checks.append(("permuted-zero-diagonal", all(p.entries[i][i] == 0 for i in range(size))))
    ok = all(
        (p.entries[i][j] != INF and p.entries[i][j] >= 1) == ((i < n) == (j < n))
        for i in range(size)
        for j in range(size)
        if i != j
    )
    checks.append(("permuted-block-support", ok))

    rng = Xoshiro256StarStar(args.seed)
    transport_ok = True
    roundtrip_ok = True
    for _ in range(10):
        t = random_tour(n, rng)
        lifted = lift_tour(t, sym)
        transport_ok &= lifted.cost == tour_cost(norm.matrix.entries, t)
        roundtrip_ok &= project_tour(lifted.order, n) == t
    checks.append(("lift-cost-transport", transport_ok))
    checks.append(("lift-project-roundtrip", roundtrip_ok))

    result = run_pipeline(
        matrix,
        k_best=args.k_best,
        verify=True,
        oracle_limit=args.limit_oracle,
        upper_bound=args.upper_bound,
        instance_id=instance_id,
    )
    checks.append(("final-below-bound", result.final_cost <= result.upper_bound_cost))
    if result.oracle_cost is not None:
        checks.append(("oracle-below-final", result.oracle_cost <= result.final_cost))
    if result.found_cycle is not None:
        cyc = result.found_cycle
        checks.append(
            (
                "cycle-shape",
                len(cyc.vertices) == n
                and len(set(cyc.vertices)) == n
                and cyc.value >= n
                and cyc.value < result.normalized_upper_bound_cost,
            )
        )
        checks.append(
            ("cycle-cost-transport", result.normalized_final_cost == cyc.value)
        )

    failed = [name for name, ok in checks if not ok]
    for name, ok in checks:
        print(f"{'PASS' if ok else 'FAIL'}  {name}")
    print(f"{instance_id}: {len(checks) - len(failed)}/{len(checks)} checks passed")
    return 2 if failed else 0


def build_parser() -> _Parser:
    common = _common_flags()
    parser = _Parser(prog="atsplab", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    sub.add_parser("transform", parents=[common],
                   help="emit the symmetric and permuted matrices")

    solve = sub.add_parser("solve", parents=[common], help="run the pipeline")
    solve.add_argument("--no-verify", action="store_true",
                       help="skip the exact-oracle comparison")
    solve.add_argument("--upper-bound", choices=["best", "worst"], default="best")

    oracle = sub.add_parser("oracle", parents=[common], help="exact solve")
    oracle.add_argument("--method", choices=["auto", "brute-force", "held-karp"],
                        default="auto")

    exp = sub.add_parser("experiment", help="run a campaign from a JSON config")
    exp.add_argument("config", type=Path)
    exp.add_argument("--out", type=Path, default=Path("reports"))
    exp.add_argument("--format", choices=["json", "csv"], default="json")

    verify = sub.add_parser("verify", parents=[common],
                            help="invariant suite on one instance")
    verify.add_argument("--upper-bound", choices=["best", "worst"], default="best")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    handlers = {
        "transform": _cmd_transform,
        "solve": _cmd_solve,
        "oracle": _cmd_oracle,
        "experiment": _cmd_experiment,
        "verify": _cmd_verify,
    }
    try:
        return handlers[args.command](args)
    except SoundnessError as exc:
        print(f"soundness violation: {exc}", file=sys.stderr)
        return 2
    except (AtspError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
