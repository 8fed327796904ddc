import json
import os

import pytest

from ttgeom.cli import main

GOLDEN = os.path.join(os.path.dirname(__file__), "golden")
UPDATE = os.environ.get("TTG_UPDATE_GOLDEN") == "1"

CASES = {
    "support_k": ["support", "v22.ttg", "k"],
    "support_free": ["support", "v22.ttg", "F"],
    "support_kos": ["support", "v22.ttg", "K"],
    "support_rank": ["support", "v22.ttg", "L", "--oracle", "rank"],
    "koszul_sum": ["koszul", "v22.ttg", "S", "J"],
    "restrict_k": ["restrict", "v22.ttg", "k", "H"],
    "restrict_line": ["restrict", "v22.ttg", "L", "A"],
    "induce": ["induce", "v32.ttg", "Y", "H"],
    "lattice_xy": ["lattice", "xy.ttg", "X", "Y"],
    "lattice_mixed": ["lattice", "v22.ttg", "I", "L", "F"],
    "bgg_phi": ["bgg", "v22.ttg", "phi"],
    "bgg_all": ["bgg", "v22.ttg", "all", "--truncation", "4", "--degree-bound", "6"],
    "quillen": ["quillen", "z4.ttg"],
}


def run(argv, tmp_path, capsys):
    out = tmp_path / "r.json"
    code = main(argv + ["--json", str(out)])
    text = capsys.readouterr().out
    return code, out.read_text(encoding="utf-8"), text


@pytest.fixture(autouse=True)
def in_data(datadir, monkeypatch):
    monkeypatch.chdir(datadir)


@pytest.mark.parametrize("case", sorted(CASES))
def test_golden(case, tmp_path, capsys):
    code, report, _ = run(CASES[case], tmp_path, capsys)
    path = os.path.join(GOLDEN, case + ".json")
    if UPDATE:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(report)
    with open(path, encoding="utf-8") as fh:
        assert report == fh.read()
    assert code == 0
    data = json.loads(report)
    assert list(data) == ["command", "inputs", "result", "checks"]
    assert all(list(c) == ["name", "status", "witness"] for c in data["checks"])


def test_support_examples(tmp_path, capsys):
    r = json.loads(run(["support", "v22.ttg", "k"], tmp_path, capsys)[1])["result"]
    assert r["support"] == "Spec R" and r["stabilized"] and r["degree_bound"] == 10
    r = json.loads(run(["support", "v22.ttg", "F"], tmp_path, capsys)[1])["result"]
    assert sorted(r["components"][0]) == ["eta1", "eta2"]
    r = json.loads(run(["support", "v22.ttg", "K"], tmp_path, capsys)[1])["result"]
    assert r["support"] == "V(eta1)"


def test_restrict_output_reparses(tmp_path, capsys):
    from ttgeom.workspace import parse_workspace_text
    r = json.loads(run(["restrict", "v22.ttg", "k", "H"], tmp_path, capsys)[1])["result"]
    ws = parse_workspace_text(open("v22.ttg").read() + r["module_block"])
    assert ws.modules["k_H"].dim == 1 and ws.module_groups["k_H"].name == "H"
    r = json.loads(run(["induce", "v32.ttg", "Y", "H"], tmp_path, capsys)[1])["result"]
    ws = parse_workspace_text(open("v32.ttg").read() + r["module_block"])
    assert ws.modules["Y_up"].dim == 3


def test_lattice_dot(tmp_path, capsys):
    dot = tmp_path / "l.dot"
    assert main(["lattice", "xy.ttg", "X", "Y", "--dot", str(dot)]) == 0
    text = dot.read_text()
    assert text.count("[label=") == 5 and text.count("->") == 5


def test_deterministic(tmp_path, capsys):
    dot1, dot2 = tmp_path / "a.dot", tmp_path / "b.dot"
    a = run(["lattice", "v22.ttg", "I", "J", "L", "--dot", str(dot1)], tmp_path, capsys)
    b = run(["lattice", "v22.ttg", "I", "J", "L", "--dot", str(dot2)], tmp_path, capsys)
    assert a == b and dot1.read_bytes() == dot2.read_bytes()


def test_exit_codes(tmp_path, capsys):
    assert main(["support", "v22.ttg", "nope"]) == 2
    assert "unknown module" in capsys.readouterr().err
    bad = tmp_path / "bad.ttg"
    bad.write_text("[field] p=2\n[group] orders=2,2\n[module M] dim=1\n  g1 = 1\n  g2 = 0\n")
    assert main(["support", str(bad), "M"]) == 2
    assert f"{bad}:5:" in capsys.readouterr().err
    with pytest.raises(SystemExit) as e:
        main(["frobnicate"])
    assert e.value.code == 2
    code = main(["support", "v22.ttg", "K", "--degree-bound", "2", "--oracle", "ann"])
    assert code == 3 and "raise --degree-bound" in capsys.readouterr().out


def test_failing_check_exits_one(tmp_path, capsys):
    ws = tmp_path / "bad_map.ttg"
    ws.write_text("[field] p=2\n[ring P] gens = x:1\n[ring K] gens = \n[map aug] source=P target=K images = x -> 0\n")
    assert main(["quillen", str(ws)]) == 1
    assert "not nilpotent" in capsys.readouterr().out
