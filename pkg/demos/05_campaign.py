"""
A reproducible campaign
=======================

Runs a small seeded experiment twice, shows that the emitted report bodies
are byte-identical, and replays an archived counterexample on its own.
"""

import tempfile
from pathlib import Path

from atsplab import (
    ExperimentConfig,
    emit_report,
    replay_counterexample,
    run_experiment,
)

config = ExperimentConfig.from_dict(
    {
        "name": "demo",
        "k_best": [1, 3],
        "verify": True,
        "upper_bound": "worst",
        "instances": [
            {"distribution": "uniform", "n": 5, "seed_start": 1, "seed_count": 25},
            {"distribution": "near-symmetric", "n": 6, "seed_start": 1, "seed_count": 25},
        ],
    }
)

with tempfile.TemporaryDirectory() as tmp:
    cx_dir = Path(tmp) / "counterexamples"
    report = run_experiment(config, counterexample_dir=cx_dir)
    again = run_experiment(config, counterexample_dir=Path(tmp) / "again")
    print("report bodies byte-identical:",
          emit_report(report, "json") == emit_report(again, "json"))

    print("\nper-group aggregates:")
    for g in report.aggregates["groups"]:
        print(f"  {g['distribution']:>15} n={g['n']} K={g['k_best']:>3}: "
              f"optimality rate {g['optimality_rate']}, max gap {g['max_gap']}")

    archived = sorted(cx_dir.glob("*.json"))
    print(f"\n{len(archived)} counterexamples archived")
    if archived:
        probe = archived[0]
        result = replay_counterexample(probe)
        print(f"replaying {probe.name}: verdict {result.verdict.value}, "
              f"final {result.final_cost} vs optimum {result.oracle_cost}")

    csv_head = emit_report(report, "csv").decode().splitlines()[:3]
    print("\nCSV body starts:")
    for line in csv_head:
        print("  " + line)
