import csv
import io
import json
import math
import subprocess
import sys
from pathlib import Path

import numpy as np
import pytest

from mtbounds.cli import empirical_interval, main, parse_grid
from mtbounds.errors import ConfigError
from mtbounds.linalg import HermitianMatrix

ROOT = Path(__file__).resolve().parents[1]
UNIT = ["--alpha", "1", "--sigma", "1", "--bigU", "1", "--bigK", "1"]


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out=out)
    return code, out.getvalue()


def test_bound_bernstein_example():
    code, text = run("bound", "--theorem", "thm1-ber", *UNIT, "--x", "1", "--d", "1")
    assert code == 0
    obj = json.loads(text)
    assert text.count("\n") == 1
    assert obj["deviation"] == pytest.approx(math.sqrt(2) + 3)
    assert obj["failure_budget"] == pytest.approx(math.exp(-1))
    assert obj["formula"] == "martingale_bernstein"


def test_bound_with_cov_file(tmp_path):
    cov = tmp_path / "cov.json"
    cov.write_text(HermitianMatrix(np.eye(2)).to_json())
    code, text = run("bound", "--theorem", "thm3-ber", "--alpha", "1", "--bigU", "1", "--bigK", "1", "--x", "1",
                     "--cov", str(cov))
    assert code == 0
    assert json.loads(text)["deviation"] == pytest.approx(2 * math.sqrt(2) + 8 * math.log(8))


def test_bound_thm2_without_bigU():
    code, text = run("bound", "--theorem", "thm2", "--alpha", "1", "--sigma", "1", "--bigK", "1", "--x", "1",
                     "--d", "1")
    assert code == 0 and json.loads(text)["deviation"] == pytest.approx(math.e - 1)


def test_bound_extra_theorems():
    code, text = run("bound", "--theorem", "cor-emp", "--alpha", "1", "--sigma", "1", "--bigK", "1", "--x", "1",
                     "--n", "100")
    assert code == 0 and json.loads(text)["deviation"] == pytest.approx(0.741421, abs=1e-6)
    code, text = run("bound", "--theorem", "cor-emp", "--alpha", "1", "--sigma", "0", "--bigK", "1", "--x", "1",
                     "--n", "100")
    assert code == 0 and json.loads(text)["deviation"] is None
    code, text = run("bound", "--theorem", "mcdiarmid-norm-ber", "--alpha", "1", "--x", "1",
                     "--norms", "1,1", "--moments", "1,1")
    assert code == 0 and json.loads(text)["formula"] == "norm_sum_bernstein"


@pytest.mark.parametrize("argv", [
    ["bound", "--theorem", "thm1-ber", *UNIT, "--x", "0", "--d", "1"],
    ["bound", "--theorem", "thm1-ber", *UNIT, "--x", "1"],
    ["bound", "--theorem", "nope", *UNIT, "--x", "1", "--d", "1"],
    ["bound", "--theorem", "thm2", *UNIT, "--x", "0.5", "--d", "1"],
    ["bound", "--theorem", "thm1-ber", "--alpha", "1", "--sigma", "1", "--bigU", "0.5", "--bigK", "1", "--x", "1",
     "--d", "1"],
    ["bound", "--theorem", "cor-emp", "--alpha", "1", "--sigma", "1", "--bigK", "1", "--x", "2", "--n", "15"],
    ["frobnicate"],
    [],
])
def test_errors_exit_two_with_json(argv):
    code, text = run(*argv)
    assert code == 2
    assert "error" in json.loads(text)


def test_scan_rows_match_single_calls(tmp_path):
    out = tmp_path / "scan.csv"
    code, _ = run("scan", "--theorem", "thm1-mixed", *UNIT, "--d", "1", "--x-grid", "0.5:2:3", "--out", str(out))
    assert code == 0
    rows = list(csv.DictReader(out.open()))
    assert [r["x"] for r in rows] == ["0.5", "1.25", "2.0"]
    for row in rows:
        _, single = run("bound", "--theorem", "thm1-mixed", *UNIT, "--d", "1", "--x", row["x"])
        obj = json.loads(single)
        assert float(row["deviation"]) == obj["deviation"]
        assert float(row["failure_budget"]) == obj["failure_budget"]
        assert row["regime"] == obj["regime"] and row["formula"] == obj["formula"]


def test_scan_regime_sequence_on_log_grid():
    code, text = run("scan", "--theorem", "thm1-mixed", *UNIT, "--d", "1", "--x-grid", "1e-4:1e7:45:log")
    rows = list(csv.DictReader(io.StringIO(text)))
    regimes = [r["regime"] for r in rows]
    collapsed = [r for i, r in enumerate(regimes) if i == 0 or regimes[i - 1] != r]
    assert collapsed == ["SubGaussian", "SubPoisson", "SubExponential"]


def test_scan_empty_grid_writes_header_only():
    code, text = run("scan", "--theorem", "thm1-mixed", *UNIT, "--d", "1", "--x-grid", "1:2:0")
    assert code == 0 and text == "x,deviation,failure_budget,regime,formula\n"


@pytest.mark.parametrize("bad", ["1:2", "a:b:3", "1:2:-1", "0:2:3:log", "1:2:3:cubic"])
def test_parse_grid_rejects(bad):
    with pytest.raises(ConfigError):
        parse_grid(bad)


def test_verify_threads_and_exit_code(tmp_path):
    cfg = ROOT / "configs" / "rademacher_d1.json"
    out = tmp_path / "report.json"
    code1, one = run("verify", "--config", str(cfg), "--seed", "42", "--threads", "1", "--out", str(out))
    code8, eight = run("verify", "--config", str(cfg), "--seed", "42", "--threads", "8")
    assert code1 == code8 == 0
    assert one == eight and out.read_text() == one
    assert json.loads(one)["pass"] is True


def test_verify_failing_report_exits_one(tmp_path, monkeypatch):
    # a spec whose declarations lie (steps of size 3 declared as 1) must be caught
    monkeypatch.delenv("MTB_SEED", raising=False)
    from mtbounds.montecarlo import experiments

    real = experiments.simulate

    def inflated(spec, trials, seed, threads=None, trial_offset=0):
        stats = real(spec, trials, seed, threads, trial_offset)
        return experiments.TrialStatistics(stats.path_max * 3.0, stats.final * 3.0)

    monkeypatch.setattr(experiments, "simulate", inflated)
    code, text = run("verify", "--config", str(ROOT / "configs" / "rademacher_d1.json"), "--seed", "1")
    assert code == 1 and json.loads(text)["pass"] is False


def test_verify_malformed_config(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text('{"spec": {"kind": "gaussian_wigner", "n": 3}, "trials": 10, "seed": 1, "x": 1, "colour": 2}')
    code, text = run("verify", "--config", str(bad))
    assert code == 2 and "colour" in json.loads(text)["error"]
    bad.write_text("{not json")
    assert run("verify", "--config", str(bad))[0] == 2


def _write_samples(path, mats):
    path.write_text(json.dumps([HermitianMatrix(m).to_json_obj() for m in mats]))


def test_empirical_scalar_cross_check(tmp_path):
    rng = np.random.default_rng(3)
    v = rng.standard_normal(40)
    path = tmp_path / "s.json"
    _write_samples(path, [[[float(a)]] for a in v])
    code, text = run("empirical", "--input", str(path), "--alpha", "1", "--bigK", "3", "--x", "2")
    assert code == 0
    obj = json.loads(text)
    sigma_hat = float(np.std(v))
    z_hat = 4 * max(math.log(3 * math.e / sigma_hat), 1.0)
    assert obj["sigma_hat"] == pytest.approx(sigma_hat, rel=1e-10)
    assert obj["z_hat"] == pytest.approx(z_hat, rel=1e-10)
    assert obj["center_norm_bound"] == pytest.approx(sigma_hat * math.sqrt(4 / 40) + 15 * 3 * z_hat * 2 / 40)
    assert obj["budget"] == pytest.approx(3 * math.exp(-2))


def test_empirical_identical_matrices(tmp_path):
    path = tmp_path / "s.json"
    _write_samples(path, [np.diag([1.0, 2.0])] * 16)
    code, text = run("empirical", "--input", str(path), "--alpha", "1", "--bigK", "1", "--x", "2")
    obj = json.loads(text)
    assert code == 0 and obj["sigma_hat"] == 0.0 and obj["center_norm_bound"] is None


def test_empirical_matrix_sigma_hat():
    rng = np.random.default_rng(9)
    mats = []
    for _ in range(30):
        g = rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2))
        mats.append(HermitianMatrix((g + g.conj().T) / 2))
    res = empirical_interval(mats, 2.0, 3.0, 1.0)
    stack = np.array([m.data for m in mats])
    dev = stack - stack.mean(axis=0)
    ref = math.sqrt(np.linalg.eigvalsh(np.mean(dev @ dev, axis=0))[-1])
    assert res["sigma_hat"] == pytest.approx(ref, rel=1e-10)


def test_empirical_rejections(tmp_path):
    path = tmp_path / "s.json"
    _write_samples(path, [[[1.0]]] * 15)
    assert run("empirical", "--input", str(path), "--alpha", "1", "--bigK", "1", "--x", "2")[0] == 2
    path.write_text(json.dumps([{"d": 2, "re": [[0, 1], [0, 0]]}] * 20))
    code, text = run("empirical", "--input", str(path), "--alpha", "1", "--bigK", "1", "--x", "2")
    assert code == 2 and "Hermitian" in json.loads(text)["error"]
    path.write_text(json.dumps([]))
    assert run("empirical", "--input", str(path), "--alpha", "1", "--bigK", "1", "--x", "2")[0] == 2


def test_baseline_command():
    code, text = run("baseline", "--kind", "maurer_general", "--bigU", "1", "--bigK", "1", "--x", "1")
    assert code == 0 and json.loads(text)["deviation"] == pytest.approx(4 * math.e)
    code, text = run("baseline", "--kind", "bernstein_scalar", "--t", "0", "--sigma", "1", "--bigK", "1")
    assert code == 0 and json.loads(text)["tail_probability"] == 1.0
    assert run("baseline", "--kind", "matrix_freedman", "--t", "1")[0] == 2


def test_selftest_single_suite():
    code, text = run("selftest", "--suite", "scalar")
    assert code == 0
    lines = text.strip().splitlines()
    assert all(line.startswith("PASS scalar.") for line in lines[:-1])
    assert lines[-1] == "0 failure(s)"
    code, text = run("selftest", "--suite", "quantum")
    assert code == 2 and "error" in json.loads(text)


def test_console_entry_points():
    res = subprocess.run([sys.executable, "-m", "mtbounds", "bound", "--theorem", "thm1-ber", *UNIT, "--x", "1",
                          "--d", "1"], capture_output=True, text=True, check=False)
    assert res.returncode == 0 and json.loads(res.stdout)["deviation"] == pytest.approx(4.414213562)
    res = subprocess.run([sys.executable, "-m", "mtbounds", "bound"], capture_output=True, text=True, check=False)
    assert res.returncode == 2 and "error" in json.loads(res.stdout)
