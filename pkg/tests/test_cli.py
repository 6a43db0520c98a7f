import json

import pytest

from atsplab import SoundnessError
from atsplab.cli import main

E1_TEXT = """NAME: e1
TYPE: ATSP
DIMENSION: 3
EDGE_WEIGHT_TYPE: EXPLICIT
EDGE_WEIGHT_FORMAT: FULL_MATRIX
EDGE_WEIGHT_SECTION
9999 1 2
2 9999 1
1 2 9999
EOF
"""


def test_solve_json(capsys):
    assert main(["solve", "--n", "6", "--seed", "3"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["verdict"] in ("OPTIMAL", "SUBOPTIMAL")
    assert doc["final_cost"] <= doc["upper_bound_cost"]


def test_solve_tsplib_file(tmp_path, capsys):
    path = tmp_path / "e1.atsp"
    path.write_text(E1_TEXT)
    assert main(["solve", "--tsplib", str(path)]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["final_cost"] == 3
    assert doc["final_tour"] == [0, 1, 2]
    assert doc["verdict"] == "OPTIMAL"


def test_oracle_csv(capsys):
    assert main(["oracle", "--n", "5", "--seed", "2", "--format", "csv"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[0].startswith("instance_id,")
    assert len(lines) == 2


def test_transform_emits_matrices(capsys):
    assert main(["transform", "--n", "4", "--seed", "1"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert len(doc["symmetric"]) == 8
    assert len(doc["permuted"]) == 8
    assert doc["permuted"][0][0] == 0
    assert doc["symmetric"][0][0] is None  # INF serializes as null


def test_verify_passes(capsys):
    assert main(["verify", "--n", "5", "--seed", "2", "--upper-bound", "worst"]) == 0
    out = capsys.readouterr().out
    assert "FAIL" not in out
    assert "checks passed" in out


def test_experiment_end_to_end(tmp_path, capsys):
    config = {
        "name": "mini",
        "k_best": [3],
        "upper_bound": "worst",
        "instances": [
            {"distribution": "uniform", "n": 5, "seed_start": 1, "seed_count": 8}
        ],
    }
    cfg_path = tmp_path / "mini.json"
    cfg_path.write_text(json.dumps(config))
    out_dir = tmp_path / "out"
    assert main(["experiment", str(cfg_path), "--out", str(out_dir)]) == 0
    report = json.loads((out_dir / "mini.json").read_text())
    assert len(report["rows"]) == 8
    for row in report["rows"]:
        if row["verdict"] == "SUBOPTIMAL":
            assert (out_dir / "counterexamples" / row["counterexample"]).exists()


def test_bad_inputs_exit_1(tmp_path, capsys):
    assert main(["experiment", str(tmp_path / "missing.json")]) == 1
    bad = tmp_path / "bad.json"
    bad.write_text("{\"name\": \"x\"}")
    assert main(["experiment", str(bad)]) == 1
    assert main(["solve", "--n", "1"]) == 1
    with pytest.raises(SystemExit) as exc:
        main(["solve", "--not-a-flag"])
    assert exc.value.code == 1


def test_soundness_violation_exits_2(monkeypatch, capsys):
    import atsplab.cli as cli

    def boom(*args, **kwargs):
        raise SoundnessError("forced for the exit-code contract")

    monkeypatch.setattr(cli, "run_pipeline", boom)
    assert main(["solve", "--n", "5", "--seed", "1"]) == 2
