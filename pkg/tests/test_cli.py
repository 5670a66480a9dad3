import json
import subprocess
import sys

import pytest

from phaselab import __version__
from phaselab.cli import main


@pytest.fixture
def run(tmp_path, capsys, monkeypatch):
    monkeypatch.chdir(tmp_path)

    def _run(*argv):
        code = main(list(argv))
        out = capsys.readouterr()
        report = None
        if (tmp_path / "report.json").exists():
            report = json.loads((tmp_path / "report.json").read_text())
        return code, out, report

    return _run


def test_ap_check_example(run):
    code, out, report = run("ap-check", "--set", "0,1,2")
    assert code == 0
    result = json.loads(out.out)
    assert result["contained"] and result["a"] == 1 and result["b"] == 0
    assert report["version"] == __version__ and report["config"]["set"] == "0,1,2"
    assert all(c["passed"] for c in report["claims"])


def test_ap_check_irrational(run):
    code, out, _ = run("ap-check", "--set", "0,1,sqrt(2)")
    assert code == 0 and json.loads(out.out)["contained"] is False


def test_counterexample_example(run, tmp_path):
    code, _, report = run("counterexample", "--a", "1", "--b", "0", "--theta", "0", "--verify", "--csv", "gaps.csv")
    assert code == 0
    assert report["result"]["pair"]["max_gap"] < 1e-9
    assert report["claims"] and all(c["passed"] for c in report["claims"])
    rows = (tmp_path / "gaps.csv").read_text().splitlines()
    assert rows[0] == "line_height,max_modulus_gap" and len(rows) == 8


def test_laplace_example(run):
    code, out, _ = run("laplace", "--seq", "power:a=1,p=2")
    assert code == 0 and json.loads(out.out)["diverges"] is False


def test_laplace_with_heights(run):
    code, out, _ = run("laplace", "--seq", "affine:a=1", "--lambdas", "0,1,sqrt(2)")
    assert code == 0 and json.loads(out.out)["unique"] is True


def test_verify_lines(run):
    code, out, report = run("verify-lines", "--set", "0,1/2,3/2", "--theta", "0.3")
    assert code == 0
    res = json.loads(out.out)
    assert res["unique"] is False and res["witness"]["a_exact"] == "1/2"
    code, out, _ = run("verify-lines", "--set", "0,1,sqrt(2)")
    assert code == 0 and json.loads(out.out)["unique"] is True


def test_verify_lines_invariant_failure(run):
    # the pair overflows on a window this wide, so verification cannot succeed
    code, _, report = run("verify-lines", "--set", "0,0.001", "--x-window=-300,300,5")
    assert code == 2 and not report["passed"]


def test_transforms_check(run):
    code, out, _ = run("transforms-check")
    res = json.loads(out.out)
    assert code == 0 and res["relation_failures"] == 0 and res["hardy_swap"]


def test_zeros(run):
    code, out, _ = run("zeros")
    assert code == 0 and json.loads(out.out)["count"] == 3
    code, out, _ = run("zeros", "--preset", "pair", "--rect=-0.5,0.5,0.1,0.5", "--periodicity", "0,1")
    res = json.loads(out.out)
    assert code == 0 and res["count"] == 1 and res["periodic"]


def test_zeros_on_contour_is_input_error(run):
    assert run("zeros", "--rect=0,1,-1,1")[0] == 1


def test_pauli(run):
    code, out, _ = run("pauli", "--set", "0,1,2,2.414213562373095")
    res = json.loads(out.out)
    assert code == 0 and res["matched"] == [0, 1, 2] and res["first_mismatch"][0] == pytest.approx(2.4142135)


def test_unknown_subcommand(run):
    code, out, _ = run("explode")
    assert code == 64 and "usage" in out.err
    assert run()[0] == 64


def test_input_errors(run):
    assert run("ap-check", "--set", "0,x")[0] == 1
    assert run("ap-check", "--set", "1,1")[0] == 1
    assert run("ap-check", "--set", "0,1", "--tol", "0")[0] == 1
    assert run("counterexample", "--a", "0")[0] == 1
    assert run("ap-check", "--bogus")[0] == 1
    assert run("counterexample", "--x-window", "0,1,1")[0] == 1


def test_config_file_and_flag_precedence(run, tmp_path):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"set": "0,1,3", "mode": "exact"}))
    code, out, report = run("ap-check", "--config", str(cfg))
    assert code == 0 and report["config"]["mode"] == "exact" and json.loads(out.out)["a"] == 1
    code, out, report = run("ap-check", "--config", str(cfg), "--set", "0,2,4")
    assert json.loads(out.out)["a"] == 2 and report["config"]["set"] == "0,2,4"
    cfg.write_text(json.dumps({"nonsense": 1}))
    assert run("ap-check", "--config", str(cfg))[0] == 1


def test_report_is_deterministic(run, tmp_path):
    run("transforms-check", "--seed", "7")
    first = (tmp_path / "report.json").read_text()
    run("transforms-check", "--seed", "7")
    assert (tmp_path / "report.json").read_text() == first


def test_plot_is_deterministic_svg(run, tmp_path):
    run("counterexample", "--plot", "--svg", "a.svg")
    run("counterexample", "--plot", "--svg", "b.svg")
    a = (tmp_path / "a.svg").read_text()
    assert a.startswith("<?xml") and "<svg" in a
    assert a == (tmp_path / "b.svg").read_text()


def test_no_plot_without_flag(run, tmp_path):
    run("counterexample")
    assert not (tmp_path / "heatmap.svg").exists()


def test_threads_env(run, monkeypatch):
    monkeypatch.setenv("PHASELAB_THREADS", "1")
    assert run("counterexample", "--verify")[0] == 0
    monkeypatch.setenv("PHASELAB_THREADS", "zero")
    assert run("counterexample")[0] == 1


def test_report_all(run):
    code, out, report = run("report-all")
    assert code == 0 and len(report["claims"]) == 12
    assert out.err.count("[PASS]") == 12


def test_module_entry_point(tmp_path):
    proc = subprocess.run(
        [sys.executable, "-m", "phaselab", "ap-check", "--set", "1/2,5/6,7/3"],
        capture_output=True, text=True, cwd=tmp_path,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["a_exact"] == "1/6"
