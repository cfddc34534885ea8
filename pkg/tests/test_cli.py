import json

import pytest

from invforge import cli


def run(argv):
    return cli.main(argv)


def test_verify_q3_passes(capsys):
    assert run(["verify", "--p", "3", "--n", "1"]) == 0
    out = capsys.readouterr().out
    assert "PASS" in out and "FAIL" not in out


def test_verify_q9_passes():
    assert run(["verify", "--p", "3", "--n", "2"]) == 0


def test_verify_characteristic_two_is_config_error(capsys):
    assert run(["verify", "--p", "2", "--n", "1"]) == 2
    assert "characteristic 2 unsupported" in capsys.readouterr().err


@pytest.mark.parametrize("argv", [
    ["verify", "--p", "4", "--n", "1"],
    ["verify", "--p", "3", "--n", "0"],
    ["verify", "--p", "3", "--n", "1", "--checks", "nonsense"],
    ["verify", "--p", "3", "--n", "5"],
    ["hilbert", "--p", "7", "--n", "1", "--max-degree", "500"],
])
def test_config_errors_exit_2(argv):
    assert run(argv) == 2


def test_checks_subset(capsys):
    assert run(["verify", "--p", "3", "--checks", "p-relation,invariance",
                "--format", "json"]) == 0
    report = json.loads(capsys.readouterr().out)
    names = {e["name"].split(":")[0] for e in report["checks"]}
    assert names == {"p-relation", "invariance"}


def test_json_report_schema(capsys):
    assert run(["verify", "--p", "3", "--checks", "p-relation",
                "--format", "json"]) == 0
    report = json.loads(capsys.readouterr().out)
    assert set(report) == {"config", "checks", "elapsed_ms"}
    assert report["config"]["q"] == 3
    for entry in report["checks"]:
        assert set(entry) == {"name", "paper_anchor", "pass", "detail"}
        assert entry["pass"] is True


def test_reports_deterministic():
    config = cli.RunConfig(3, 1, checks=("p-relation", "invariance", "sagbi"))
    first = cli.run_checks(config)
    second = cli.run_checks(cli.RunConfig(
        3, 1, checks=("p-relation", "invariance", "sagbi")))
    first.pop("elapsed_ms")
    second.pop("elapsed_ms")
    assert json.dumps(first, sort_keys=True) \
        == json.dumps(second, sort_keys=True)


def test_phi_json_gamma_free_q3(capsys):
    assert run(["phi", "--p", "3", "--n", "1", "--format", "json"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["vars"] == ["Delta", "J", "Gamma"]
    assert all(t["e"][2] == 0 for t in data["terms"])


def test_phi_text_q5(capsys):
    assert run(["phi", "--p", "5", "--n", "1"]) == 0
    out = capsys.readouterr().out.strip()
    assert out and out != "0"
    assert "Delta" in out


def test_phi_q7_gamma_free(capsys):
    assert run(["phi", "--p", "7", "--n", "1"]) == 0
    out = capsys.readouterr().out.strip()
    assert out and "Gamma" not in out


def test_hilbert_table_output(capsys):
    assert run(["hilbert", "--p", "3", "--n", "1", "--max-degree", "12"]) == 0
    out = capsys.readouterr().out
    # 13 data rows per group table.
    assert out.count("yes") == 26
    assert "NO" not in out


def test_hilbert_writes_files_and_figure(tmp_path):
    out = tmp_path / "report"
    assert run(["hilbert", "--p", "3", "--n", "1", "--max-degree", "6",
                "--out", str(out)]) == 0
    for name in ("hilbert_P.csv", "hilbert_SL2.csv", "hilbert_P.txt",
                 "hilbert_SL2.txt", "hilbert.png"):
        assert (out / name).exists(), name
    csv = (out / "hilbert_P.csv").read_text().splitlines()
    assert csv[0] == "degree,observed,predicted,pass"
    assert len(csv) == 8
    assert (out / "hilbert.png").stat().st_size > 0


def test_verify_writes_report_file(tmp_path):
    out = tmp_path / "verify"
    assert run(["verify", "--p", "3", "--checks", "p-relation",
                "--format", "json", "--out", str(out)]) == 0
    report = json.loads((out / "report.json").read_text())
    assert report["checks"][0]["pass"] is True


def test_export_writes_all_invariants(tmp_path):
    out = tmp_path / "inv"
    assert run(["export", "--p", "3", "--n", "1", "--format", "json",
                "--out", str(out)]) == 0
    names = {p.name for p in out.iterdir()}
    assert names == {"Delta.json", "beta.json", "gamma0.json", "Gamma.json",
                     "B.json", "J.json", "Phi.json"}
    delta = json.loads((out / "Delta.json").read_text())
    assert delta["degree"] == 2
    assert delta["terms"][0] == {"e0": 0, "e1": 2, "e2": 0, "coeff": [1]}


def test_export_text_format(tmp_path):
    out = tmp_path / "inv_text"
    assert run(["export", "--p", "3", "--out", str(out)]) == 0
    assert (out / "beta.txt").read_text().strip() == "a1^3 + 2*a0^2*a1"


def test_max_q_env_override(monkeypatch, capsys):
    # q=121 is rejected by default ...
    assert run(["hilbert", "--p", "11", "--n", "2", "--max-degree", "0"]) == 2
    # ... and allowed, with a loud warning, under INVFORGE_MAX_Q.
    monkeypatch.setenv("INVFORGE_MAX_Q", "121")
    capsys.readouterr()
    assert run(["hilbert", "--p", "11", "--n", "2", "--max-degree", "0"]) == 0
    captured = capsys.readouterr()
    assert "WARNING" in captured.err and "unsupported" in captured.err


def test_bad_env_override_rejected(monkeypatch):
    monkeypatch.setenv("INVFORGE_MAX_Q", "lots")
    assert run(["verify", "--p", "3", "--n", "1"]) == 2
