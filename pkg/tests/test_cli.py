import json
import subprocess
import sys

import pytest

from decomp_species.cli import RunConfig, main, run


def cli(capsys, *args):
    code = main(list(args))
    out, err = capsys.readouterr()
    return code, out, err


def test_union_d1_and_exp_pass(capsys):
    code, out, _ = cli(capsys, "run", "--species", "bipartite", "--variant", "union",
                       "--checks", "d1,exp-formula", "--cap", "3,3")
    assert code == 0
    assert "PASS  d1" in out and "PASS  exp-formula" in out


def test_wrong_weight_fails_w2(capsys):
    code, out, _ = cli(capsys, "run", "--species", "bipartite", "--variant", "completion", "--weight", "edges",
                       "--checks", "w2", "--cap", "2,2")
    assert code == 1
    assert "FAIL  w2" in out and '"axiom": "W2"' in out


def test_magic_closed_forms(capsys):
    code, out, _ = cli(capsys, "run", "--species", "magic", "--s", "2", "--checks", "closed-forms", "--cap", "4")
    assert code == 0 and "PASS  closed-forms" in out


def test_unknown_check_rejected_before_work(capsys):
    code, out, err = cli(capsys, "run", "--species", "binary", "--checks", "d1,frobnicate")
    assert code == 2 and out == "" and "frobnicate" in err


@pytest.mark.parametrize("args", [
    ["--species", "hypergraph"],
    ["--species", "bipartite", "--variant", "strange"],
    ["--species", "bipartite", "--cap", "1,2,3"],
    ["--species", "binary", "--weight", "edges"],
    ["--species", "binary", "--checks", "closed-forms"],
    ["--species", "magic", "--s", "0"],
])
def test_config_errors(capsys, args):
    code, _, err = cli(capsys, "run", *args)
    assert code == 2 and err.startswith("error:")


def test_budget_exit_code(capsys):
    code, _, err = cli(capsys, "run", "--species", "binary", "--checks", "exp-formula", "--cap", "8", "--budget", "50")
    assert code == 3 and "budget" in err


def test_json_output_is_deterministic(capsys):
    args = ["run", "--species", "bipartite", "--variant", "completion", "--weight", "edges",
            "--checks", "inject,w2", "--cap", "2,2", "--json", "--seed", "7"]
    _, first, _ = cli(capsys, *args)
    _, second, _ = cli(capsys, *args)
    assert first == second
    doc = json.loads(first)
    assert doc["config"]["cap"] == [2, 2] and doc["config"]["seed"] == 7
    names = [r["name"] for r in doc["reports"]]
    assert names == ["inject", "w2"]
    assert all(r["elapsed_ms"] == 0 for r in doc["reports"])
    assert doc["reports"][1]["verdict"] == "fail" and "witness" in doc["reports"][1]


def test_timings_go_to_stderr(capsys):
    code, out, err = cli(capsys, "run", "--species", "binary", "--checks", "d1", "--cap", "3", "--timings")
    assert code == 0 and "total:" in err and "ms" not in out


def test_series_binary(capsys):
    code, out, _ = cli(capsys, "series", "--species", "binary", "--cap", "3")
    assert code == 0
    assert out.splitlines()[1:] == ["0\t1", "1\t2", "2\t4", "3\t8"]


def test_series_magic_diagonal(capsys):
    code, out, _ = cli(capsys, "series", "--species", "magic", "--cap", "3")
    rows = dict(line.split("\t") for line in out.splitlines()[1:])
    assert [rows[f"{n},{n}"] for n in range(4)] == ["1", "1", "3", "21"]


def test_series_refined_bipartite(capsys):
    code, out, _ = cli(capsys, "series", "--species", "bipartite", "--cap", "1,1", "--refined")
    rows = dict(line.split("\t") for line in out.splitlines()[1:])
    assert rows["1,1"] == "y^2 + t*y"


def test_series_config_error(capsys):
    code, _, err = cli(capsys, "series", "--species", "nothing")
    assert code == 2


def test_run_api_default_suite():
    code, reports, error = run(RunConfig("twist", checks=["inject", "natural", "d1"], cap=(4,)))
    assert code == 0 and error is None and [r.name for r in reports] == ["inject", "natural", "d1"]


def test_psi_check_via_cli(capsys):
    code, out, _ = cli(capsys, "run", "--species", "bipartite", "--variant", "completion",
                       "--checks", "pointwise,psi", "--cap", "2,2")
    assert code == 0 and "PASS  psi" in out


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "decomp_species", "run", "--species", "binary",
                           "--checks", "pointwise", "--cap", "3"], capture_output=True, text=True)
    assert proc.returncode == 1 and "FAIL  pointwise" in proc.stdout
