import json
import math

import pytest

from qys.cli import main
from qys.model import Effect, PureState, build_scenario, load_scenario, save_scenario


@pytest.fixture
def paper_scenario_file(tmp_path):
    scenario = build_scenario(
        PureState.from_qubit_angles(0.0, 0.0),
        PureState.from_qubit_angles(math.pi / 4, 0.0),
        Effect.from_bloch(1.0, (0, 0, 1)),
        Effect.from_bloch(1.0, (0, 0, -1)),
    )
    path = tmp_path / "scenario.json"
    save_scenario(scenario, path)
    return path


class TestSample:
    def test_writes_csv_and_summary(self, tmp_path, capsys):
        out = tmp_path / "runs.csv"
        code = main(["sample", "--trials", "50", "--seed", "42",
                     "--out", str(out), "--no-timestamp"])
        assert code == 0
        lines = out.read_text().strip().split("\n")
        assert lines[0].startswith("trial,p1,p2")
        assert len(lines) == 51
        payload = json.loads(capsys.readouterr().out)
        assert payload["metadata"]["seed"] == 42
        assert payload["summary"]["n_trials"] == 50
        assert payload["summary"]["config"]["measure"] == "haar"

    def test_seed_required(self, capsys):
        with pytest.raises(SystemExit) as err:
            main(["sample", "--trials", "10"])
        assert err.value.code == 2

    def test_byte_identical_reruns(self, tmp_path):
        a, b = tmp_path / "a.csv", tmp_path / "b.csv"
        main(["sample", "--trials", "40", "--seed", "3", "--out", str(a), "--no-timestamp"])
        main(["sample", "--trials", "40", "--seed", "3", "--out", str(b), "--no-timestamp"])
        assert a.read_bytes() == b.read_bytes()

    def test_worker_flag_and_thread_cap(self, tmp_path, monkeypatch):
        a, b = tmp_path / "a.csv", tmp_path / "b.csv"
        main(["sample", "--trials", "40", "--seed", "3", "--out", str(a),
              "--no-timestamp", "--workers", "4"])
        monkeypatch.setenv("YSQ_THREADS", "2")
        main(["sample", "--trials", "40", "--seed", "3", "--out", str(b),
              "--no-timestamp", "--workers", "4"])
        assert a.read_bytes() == b.read_bytes()

    def test_equal_mixing_zero_qc(self, tmp_path, capsys):
        main(["sample", "--trials", "200", "--seed", "7", "--equal-mixing",
              "--out", str(tmp_path / "e.csv"), "--no-timestamp"])
        payload = json.loads(capsys.readouterr().out)
        assert payload["summary"]["rates"]["rate_qc_only"]["rate"] == 0.0
        assert payload["summary"]["rates"]["rate_both"]["rate"] == 0.0


class TestLambdaSweep:
    def test_lambda_columns(self, tmp_path):
        out = tmp_path / "sweep.csv"
        code = main(["lambda-sweep", "--trials", "20", "--seed", "11",
                     "--lambdas", "0.1,0.5,0.9", "--out", str(out), "--no-timestamp"])
        assert code == 0
        header = out.read_text().split("\n")[0]
        assert header.count("lambda,P_lambda,Q_lambda,occurs") == 3

    def test_lambdas_required(self):
        with pytest.raises(SystemExit) as err:
            main(["lambda-sweep", "--trials", "5", "--seed", "1"])
        assert err.value.code == 2

    def test_lambda_out_of_range(self):
        with pytest.raises(SystemExit) as err:
            main(["lambda-sweep", "--trials", "5", "--seed", "1", "--lambdas", "0.5,1.5"])
        assert err.value.code == 2


class TestClassify:
    def test_paper_example(self, paper_scenario_file, capsys):
        code = main(["classify", "--scenario", str(paper_scenario_file),
                     "--alpha", str(math.pi / 2), "--beta", str(math.pi / 4),
                     "--phi-alpha", str(math.pi), "--phi-beta", str(math.pi),
                     "--no-timestamp"])
        assert code == 0
        result = json.loads(capsys.readouterr().out)["result"]
        assert result["category"] == "QQ_ONLY"
        assert result["P"] == pytest.approx(0.5, abs=1e-10)
        assert result["Q"] == pytest.approx(0.25 / (1 - 1 / math.sqrt(2)), abs=1e-6)

    def test_missing_file_is_runtime_error(self, tmp_path, capsys):
        code = main(["classify", "--scenario", str(tmp_path / "nope.json"),
                     "--alpha", "0.5", "--beta", "0.5", "--no-timestamp"])
        assert code == 1
        assert "error:" in capsys.readouterr().err

    def test_scenario_round_trip(self, paper_scenario_file):
        loaded = load_scenario(paper_scenario_file)
        assert loaded.p1 == pytest.approx(1.0, abs=1e-12)
        assert loaded.q2 == pytest.approx(0.5, abs=1e-12)


class TestHypTest:
    def test_reports_exact_and_simulated(self, tmp_path, capsys):
        scenario = build_scenario(
            PureState([1, 0]), PureState([0, 1]),
            Effect([[0.8, 0], [0, 0.3]]), Effect([[0.7, 0], [0, 0.2]]),
        )
        path = tmp_path / "diag.json"
        save_scenario(scenario, path)
        code = main(["hyptest", "--scenario", str(path), "--seed", "5",
                     "--m", "200", "--frac1", "0.1", "--frac1-alt", "0.9",
                     "--frac1-run", "0.9", "--repeats", "2000", "--no-timestamp"])
        assert code == 0
        result = json.loads(capsys.readouterr().out)["result"]
        assert result["M1"] == 180
        assert result["exact_disagreement_probability"] > 0.5
        assert abs(result["disagreement_rate"] - result["exact_disagreement_probability"]) < 0.05

    def test_bad_fraction_is_runtime_error(self, paper_scenario_file, capsys):
        code = main(["hyptest", "--scenario", str(paper_scenario_file), "--seed", "5",
                     "--m", "100", "--frac1", "1.5", "--frac1-alt", "0.5",
                     "--no-timestamp"])
        assert code == 1

    def test_unknown_subcommand_usage_error(self):
        with pytest.raises(SystemExit) as err:
            main(["frobnicate"])
        assert err.value.code == 2
