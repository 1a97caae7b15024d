import json
import os

import pytest

from mgreg import cli
from mgreg.checks import FAIL, Report

INST = os.path.join(os.path.dirname(__file__), "..", "instances")


def inst(name):
    return os.path.join(INST, f"{name}.json")


def test_support_ascii(capsys):
    code = cli.main(["support", inst("hyp_F1"), "--box=-3,-3:1,2", "--i", "1", "--ascii"])
    out = capsys.readouterr().out
    assert code == cli.EX_OK
    assert out.startswith("i,g1,g2,dim,status,path,t_stab\n")
    assert "1,-3,2,2,stabilized,P1," in out
    assert "hyp_F1: Supp H^1_B(M)" in out


def test_regularity_csv_and_plot(tmp_path, capsys):
    code = cli.main(["regularity", inst("ex11_Rplus"), "--box=-1,-1:3,3", "--out", str(tmp_path), "--ascii"])
    assert code == cli.EX_OK
    rows = (tmp_path / "regularity.csv").read_text().splitlines()
    assert rows[0] == "g1,g2,regular,weakly_regular,status"
    regular = {tuple(map(int, r.split(",")[:2])) for r in rows[1:] if r.split(",")[2] == "1"}
    assert (1, 1) in regular and (0, 2) in regular and (1, 0) not in regular
    assert (tmp_path / "regularity.svg").read_text().startswith("<svg")
    assert "#" in capsys.readouterr().out


def test_betti(capsys):
    assert cli.main(["betti", inst("ex11_B")]) == cli.EX_OK
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == "j,g1,g2,dim"
    assert set(lines[1:]) == {"0,0,0,1", "1,0,2,1", "1,2,0,1", "2,2,2,1"}


def test_hilbert(capsys):
    assert cli.main(["hilbert", inst("ex11_B")]) == cli.EX_OK
    out = capsys.readouterr().out
    assert "status: PASS" in out
    assert "P (monomial basis): 4" in out


def test_verify_one_instance(capsys):
    assert cli.main(["verify", inst("ring_Rplus")]) == cli.EX_OK
    captured = capsys.readouterr()
    reports = json.loads(captured.out)
    assert {r["status"] for r in reports} <= {"PASS", "SKIPPED"}
    assert "ring_Rplus" in captured.err


def test_failed_check_exit_code(monkeypatch, capsys):
    def fake(inst, t_max, window):
        return [Report("ThmLCtoTor1", inst.name, FAIL, [0, (1, 1)])], None

    monkeypatch.setattr(cli, "verify_instance", fake)
    assert cli.main(["verify", inst("ring_B")]) == cli.EX_FAIL
    assert "FAIL" in capsys.readouterr().err


def test_uncertified_exit_code(capsys):
    args = ["support", inst("ex11_B"), "--box=-3,1:-3,1", "--tmax", "2"]
    assert cli.main(args) == cli.EX_UNCERTIFIED
    assert cli.main(args + ["--allow-uncertified"]) == cli.EX_OK
    assert "t_max_reached" in capsys.readouterr().out


@pytest.mark.parametrize(
    "argv",
    [
        ["frobnicate", "x.json"],
        ["support"],
        ["support", "missing.json"],
        ["support", inst("ex11_B"), "--box=1,2"],
        ["support", inst("ex11_B"), "--field", "seven"],
        ["support", inst("ex11_B"), "--field", "8"],
    ],
)
def test_usage_errors(argv, capsys):
    assert cli.main(argv) == cli.EX_USAGE
    assert "mgreg:" in capsys.readouterr().err


def test_schema_errors(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert cli.main(["support", str(bad)]) == cli.EX_USAGE
    doc = json.load(open(inst("ex11_B")))
    doc["degrees"] = [[1, 1, 0]]
    bad.write_text(json.dumps(doc))
    assert cli.main(["support", str(bad)]) == cli.EX_USAGE


def test_run_task_list(tmp_path, capsys):
    doc = json.load(open(inst("ex11_B")))
    doc["box"] = {"lo": [0, 0], "hi": [2, 2], "padding": 2}
    doc["tasks"] = [{"kind": "betti", "parameters": {}}, {"kind": "hilbert", "parameters": {}}]
    path = tmp_path / "tasks.json"
    path.write_text(json.dumps(doc))
    assert cli.main(["run", str(path)]) == cli.EX_OK
    out = capsys.readouterr().out
    assert out.startswith("j,g1,g2,dim") and "status: PASS" in out


def test_plot_writes_svgs(tmp_path):
    code = cli.main(["plot", inst("hyp_F1"), "--box=-2,-2:1,1", "--out", str(tmp_path)])
    assert code == cli.EX_OK
    svgs = sorted(p.name for p in tmp_path.glob("*.svg"))
    assert svgs == ["H0.svg", "H1.svg", "H2.svg", "H3.svg", "H4.svg"]
