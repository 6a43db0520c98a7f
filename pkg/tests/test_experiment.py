import json

import pytest

from atsplab import (
    ExperimentConfig,
    InstanceError,
    Verdict,
    emit_report,
    load_counterexample,
    replay_counterexample,
    run_experiment,
)

SMALL = {
    "name": "small",
    "k_best": [1, 3],
    "verify": True,
    "upper_bound": "best",
    "instances": [
        {"distribution": "uniform", "n": 5, "seed_start": 1, "seed_count": 10},
        {"distribution": "uniform", "n": 6, "seed_start": 1, "seed_count": 10},
    ],
}

LOOSE = {
    "name": "loose",
    "k_best": [3],
    "upper_bound": "worst",
    "instances": [
        {"distribution": "uniform", "n": 5, "seed_start": 1, "seed_count": 30}
    ],
}


def test_config_parsing_and_validation():
    cfg = ExperimentConfig.from_dict(SMALL)
    assert cfg.k_values == (1, 3)
    assert len(cfg.groups) == 2
    with pytest.raises(InstanceError):
        ExperimentConfig.from_dict({"name": "x", "instances": []})
    with pytest.raises(InstanceError):
        ExperimentConfig.from_dict({"instances": [{"distribution": "nope", "n": 5,
                                                   "seed_start": 1, "seed_count": 1}]})
    with pytest.raises(InstanceError):
        ExperimentConfig.from_json("{not json")
    with pytest.raises(InstanceError):
        ExperimentConfig.from_dict({**SMALL, "k_best": [0]})
    with pytest.raises(InstanceError):
        ExperimentConfig.from_dict({**SMALL, "upper_bound": "median"})
    roundtrip = ExperimentConfig.from_dict(ExperimentConfig.from_dict(SMALL).to_dict())
    assert roundtrip == ExperimentConfig.from_dict(SMALL)


def test_rows_sorted_and_aggregates_recomputable():
    report = run_experiment(ExperimentConfig.from_dict(SMALL))
    keys = [(r.n, r.seed, r.distribution, (r.k_best is None, r.k_best or 0)) for r in report.rows]
    assert keys == sorted(keys)
    assert len(report.rows) == 40  # 20 instances x 2 K values
    # recompute one aggregate group from the rows
    for group in report.aggregates["groups"]:
        members = [
            r
            for r in report.rows
            if r.distribution == group["distribution"]
            and r.n == group["n"]
            and ("inf" if r.k_best is None else str(r.k_best)) == group["k_best"]
        ]
        assert group["instances"] == len(members)
        optimal = sum(1 for r in members if r.verdict == "OPTIMAL")
        assert group["optimal"] == optimal
        verified = [r for r in members if r.verdict in ("OPTIMAL", "SUBOPTIMAL")]
        if verified:
            assert group["optimality_rate"] == round(optimal / len(verified), 6)
        gaps = [r.gap for r in verified]
        if gaps:
            assert group["max_gap"] == max(gaps)


def test_report_bodies_are_reproducible():
    cfg = ExperimentConfig.from_dict(SMALL)
    a = run_experiment(cfg)
    b = run_experiment(cfg)
    assert emit_report(a, "json") == emit_report(b, "json")
    assert emit_report(a, "csv") == emit_report(b, "csv")


def test_csv_shape_and_gap_column():
    report = run_experiment(ExperimentConfig.from_dict(SMALL))
    lines = emit_report(report, "csv").decode().splitlines()
    assert len(lines) == 1 + len(report.rows)
    header = lines[0].split(",")
    iv, ig, io_ = header.index("final_cost"), header.index("gap"), header.index("oracle_cost")
    for line in lines[1:]:
        cells = line.split(",")
        if cells[ig]:
            assert int(cells[ig]) == int(cells[iv]) - int(cells[io_])
            assert int(cells[ig]) >= 0


def test_json_round_trips():
    report = run_experiment(ExperimentConfig.from_dict(SMALL))
    doc = json.loads(emit_report(report, "json"))
    assert doc["config"] == report.config
    assert doc["aggregates"] == report.aggregates
    assert len(doc["rows"]) == len(report.rows)
    assert doc["rows"][0]["instance_id"] == report.rows[0].instance_id


def test_counterexamples_archive_and_replay(tmp_path):
    cfg = ExperimentConfig.from_dict(LOOSE)
    report = run_experiment(cfg, counterexample_dir=tmp_path)
    suboptimal = [r for r in report.rows if r.verdict == "SUBOPTIMAL"]
    assert suboptimal, "loose-bound campaign should produce suboptimal rows"
    for row in suboptimal:
        assert row.counterexample is not None
        path = tmp_path / row.counterexample
        assert path.exists()
        payload, matrix = load_counterexample(path)
        assert payload["final_cost"] == row.final_cost
        assert matrix.n == row.n
        result = replay_counterexample(path)
        assert result.verdict is Verdict.SUBOPTIMAL
        assert result.final_cost == payload["final_cost"]
        assert result.oracle_cost == payload["oracle_cost"]
    optimal_rows = [r for r in report.rows if r.verdict == "OPTIMAL"]
    assert all(r.counterexample is None for r in optimal_rows)


def test_generation_errors_become_rows_not_crashes():
    # entries fit the bound, but normalization pushes them past it (seeds
    # 1..3 all draw a min far enough below zero; the stream is frozen)
    big = 1 << 40
    cfg = ExperimentConfig.from_dict(
        {
            "name": "overflow",
            "k_best": [3],
            "instances": [
                {
                    "distribution": "uniform",
                    "n": 4,
                    "lo": -(big - 10),
                    "hi": big - 10,
                    "seed_start": 1,
                    "seed_count": 3,
                }
            ],
        }
    )
    report = run_experiment(cfg)
    assert [r.verdict for r in report.rows] == ["ERROR"] * 3
    assert all(r.error for r in report.rows)
    assert report.aggregates["total_errors"] == 3
