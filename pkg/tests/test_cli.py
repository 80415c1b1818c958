import json
import subprocess
import sys

import pytest

from tancone.cli import CliConfig, main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_semigroup_info_json(capsys):
    code, out, _ = run(capsys, "semigroup", "info", "5,6,9", "--format", "json")
    data = json.loads(out)
    assert code == 0 and data["schema"] == "tancone/v1"
    assert data["frobenius"] == 13 and data["apery"] == [0, 6, 12, 18, 9]


def test_text_and_json_show_same_numbers(capsys):
    _, text, _ = run(capsys, "tangentcone", "4,5,11")
    _, js, _ = run(capsys, "tangentcone", "4,5,11", "--format", "json")
    data = json.loads(js)
    assert data["mu_star"] == 4 and data["cm"] is False
    assert "mu_star: 4" in text and "cm: False" in text


def test_shift_option(capsys):
    _, out, _ = run(capsys, "semigroup", "info", "3,5,7", "--shift", "2", "--format", "json")
    assert json.loads(out)["semigroup"] == [5, 7, 9]


def test_betti(capsys):
    code, out, _ = run(capsys, "betti", "3,5,7", "--star", "--format", "json")
    assert code == 0 and json.loads(out)["total"] == [1, 3, 2]


def test_family_exit_codes(capsys):
    code, out, _ = run(capsys, "family", "shibuta", "--a", "7", "--format", "json")
    assert code == 0 and json.loads(out)["verdict"] == "pass"
    code, _, err = run(capsys, "family", "shibuta")
    assert code == 2 and "needs parameters" in err


def test_usage_and_budget_exit_codes(capsys):
    assert run(capsys, "ideal", "3,x")[0] == 2
    assert run(capsys, "frobnicate")[0] == 2
    code, _, err = run(capsys, "ideal", "30,37,41,53", "--pair-budget", "3", "--format", "json")
    assert code == 3 and json.loads(err)["error"] == "budget"
    assert run(capsys, "ideal", "3,5,7", "--pair-budget", "0")[0] == 2


def test_scan_writes_outputs(capsys, tmp_path):
    prefix = tmp_path / "scan"
    code, out, err = run(capsys, "scan", "--base", "3,5,7", "--kmax", "12", "--jobs", "1",
                         "--out", str(prefix), "--format", "json")
    assert code == 0
    data = json.loads(out)
    assert data["detected_period"] == 4
    assert (tmp_path / "scan.jsonl").read_text().count("\n") == 14
    assert (tmp_path / "scan.csv").exists()
    assert "[tancone]" in err


def test_scan_csv_output(capsys):
    code, out, _ = run(capsys, "scan", "--base", "0,2,4", "--kmax", "9", "--jobs", "1", "--format", "csv")
    assert code == 0 and out.splitlines()[0].startswith("k,generators")


def test_conjecture_commands(capsys):
    code, out, _ = run(capsys, "conjecture", "width", "--wmax", "2", "--format", "json")
    assert code == 0 and json.loads(out)["verdict"] == "pass"
    code, out, _ = run(capsys, "conjecture", "tilde", "--samples", "3,5,7;4,7,10", "--format", "json")
    assert code == 0 and json.loads(out)["checked"] == 2
    a = run(capsys, "conjecture", "tilde", "--random", "3", "--seed", "5", "--format", "json", "--items")[1]
    b = run(capsys, "conjecture", "tilde", "--random", "3", "--seed", "5", "--format", "json", "--items")[1]
    assert a == b


def test_config_file_and_env(capsys, tmp_path, monkeypatch):
    cfg = tmp_path / "t.conf"
    cfg.write_text("# budgets\nformat = json\npair_budget = 3\n")
    code, _, err = run(capsys, "ideal", "30,37,41,53", "--config", str(cfg))
    assert code == 3 and json.loads(err)["error"] == "budget"
    monkeypatch.setenv("TANCONE_CONFIG", str(cfg))
    # flags override the file
    code, out, _ = run(capsys, "ideal", "3,5,7", "--pair-budget", "1000")
    assert code == 0 and json.loads(out)["mu_I"] == 3
    cfg.write_text("bogus = 1\n")
    assert run(capsys, "ideal", "3,5,7")[0] == 2


def test_config_validation():
    with pytest.raises(ValueError):
        CliConfig(degree_budget=0)
    with pytest.raises(ValueError):
        CliConfig(format="xml")


def test_console_script_entry_point():
    proc = subprocess.run([sys.executable, "-m", "tancone.cli", "semigroup", "info", "3,7"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and "interval_completion: 3, 4, 5" in proc.stdout
