import json
import subprocess
import sys

from smibounds.cli import main
from smibounds.data import load_dataset


def _run(*args):
    return subprocess.run([sys.executable, "-m", "smibounds", *args], capture_output=True, text=True)


def test_generate(tmp_path, capsys):
    assert main(["generate", "--preset", "one-target", "--seed", "3", "--out", str(tmp_path)]) == 0
    path = tmp_path / "one-target-seed3.json"
    assert capsys.readouterr().out.strip() == str(path)
    assert load_dataset(path).n_targeted == 40


def test_run_and_rerun(tmp_path):
    for sub in ("a", "b"):
        assert main(["run", "--preset", "one-target", "--seed", "2", "--samples", "30",
                     "--out", str(tmp_path / sub)]) == 0
    for name in ("samples.csv", "correlations.csv"):
        assert (tmp_path / "a" / name).read_bytes() == (tmp_path / "b" / name).read_bytes()


def test_zero_samples_run(tmp_path):
    assert main(["run", "--samples", "0", "--out", str(tmp_path)]) == 0
    assert (tmp_path / "samples.csv").read_text().count("\n") == 1


def test_config_file_with_plots(tmp_path):
    cfg = {"scenario": {"preset": "two-target", "samples": 20}, "emit_plots": True,
           "functions": [{"function": "GCMI", "lambda": 0.5}], "outputs": str(tmp_path)}
    path = tmp_path / "cfg.json"
    path.write_text(json.dumps(cfg))
    assert main(["run", "--config", str(path)]) == 0
    assert (tmp_path / "two-target_GCMI_eta1_relevance.svg").exists()


def test_sweep_and_plot(tmp_path):
    assert main(["sweep", "--samples", "20", "--out", str(tmp_path)]) == 0
    rows = (tmp_path / "correlations.csv").read_text().splitlines()
    assert len(rows) == 1 + 9 * 2
    assert main(["plot", "--samples", "20", "--out", str(tmp_path / "svg")]) == 0
    assert len(list((tmp_path / "svg").glob("*.svg"))) == 8


def test_errors_are_machine_readable(tmp_path):
    proc = _run("run", "--config", str(tmp_path / "missing.json"))
    assert proc.returncode != 0
    err = json.loads(proc.stderr.strip().splitlines()[-1])
    assert err["error"] == "FileNotFoundError"
    proc = _run("run", "--preset", "three-target")
    assert proc.returncode != 0 and json.loads(proc.stderr)["error"] == "UsageError"
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"scenario": {"preset": "two-target", "budget": 50}}))
    proc = _run("run", "--config", str(bad))
    assert proc.returncode != 0 and json.loads(proc.stderr)["error"] == "InsufficientPartition"
