import json
import subprocess
import sys

import pytest

from ppg.cli import main
from ppg.model import Ppg, dump_instance


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr()


@pytest.fixture
def rectangle(tmp_path):
    path = tmp_path / "rect.json"
    dump_instance(Ppg.from_lengths(4, {(0, 1): 1, (1, 2): 2, (2, 3): 1, (0, 3): 2}), path)
    return str(path)


@pytest.fixture
def triangle(tmp_path):
    path = tmp_path / "tri.json"
    dump_instance(Ppg.from_lengths(3, {(0, 1): 5, (0, 2): 2, (1, 2): 3}), path)
    return str(path)


def test_run_triangle(capsys):
    code, out = run(capsys, "run", "--alg", "triangle", "--n", "100", "--seed", "1")
    assert code == 0 and json.loads(out.out)["total"] == 197


def test_run_three_path_b1(capsys, tmp_path):
    paths = [tmp_path / f"r{i}.json" for i in range(2)]
    dots = [tmp_path / f"r{i}.dot" for i in range(2)]
    for p, d in zip(paths, dots):
        code, out = run(capsys, "run", "--alg", "three-path", "--b", "1", "--oracle", "honest",
                        "--seed", "7", "--verify", "--emit-json", str(p), "--emit-dot", str(d))
        report = json.loads(out.out)
        assert code == 0 and report["total"] == 6930 and report["verified"] is True
        assert report["expected"]["total"] == 6930
    assert paths[0].read_bytes() == paths[1].read_bytes()
    assert dots[0].read_bytes() == dots[1].read_bytes()
    full = json.loads(paths[0].read_text())
    g = Ppg.from_json(full["instance"])
    assert Ppg.from_json(g.to_json()) == g and len(g.edges) == 6930
    assert len(full["placement"]) == 4664


@pytest.mark.parametrize("argv", [
    ["run", "--alg", "three-path", "--b", "0"],
    ["run", "--alg", "quad", "--n", "5"],
    ["run", "--alg", "triangle"],
    ["run", "--alg", "triangle", "--n", "30", "--oracle", "adversary"],
    ["atlas", "--max-n", "8"],
])
def test_configuration_errors_exit_2(capsys, argv):
    assert run(capsys, *argv)[0] == 2


def test_run_against_adversary(capsys):
    code, out = run(capsys, "run", "--alg", "quad", "--n", "12", "--oracle", "adversary")
    report = json.loads(out.out)
    assert code == 0 and report["adversary"]["defeated"] is False
    code, out = run(capsys, "run", "--alg", "three-path", "--oracle", "adversary", "--seed", "2")
    assert code == 0 and json.loads(out.out)["n"] == 22


def test_verify_rigid(capsys, rectangle, triangle):
    code, out = run(capsys, "verify-rigid", triangle)
    assert code == 0 and out.out.startswith("rigid")
    code, out = run(capsys, "verify-rigid", rectangle, "--witness")
    assert code == 1 and out.out.startswith("ambiguous")
    assert len(json.loads(out.out.split("\n", 1)[1])) == 2


def test_layer_check(capsys, rectangle, triangle):
    code, out = run(capsys, "layer-check", rectangle)
    assert out.out.startswith("drawings: ") and "dir_axis" in out.out
    code, out = run(capsys, "layer-check", triangle)
    assert out.out == "drawings: 0\n"


def test_conditions_commands(capsys, tmp_path):
    code, out = run(capsys, "conditions", "list", "--serial", "4")
    assert out.out.startswith("serial 4: |p1q1| ∉ {|r1s|, |r2s|")
    code, out = run(capsys, "conditions", "list", "--group", "1")
    assert len(out.out.splitlines()) == 7
    code, out = run(capsys, "conditions", "list")
    assert len(out.out.splitlines()) == 6
    lengths = {"r1s": 2, "r2s": 9, "r3s": 31, "p1q1": 101, "p2q2": 367, "p3q3": 1301,
               "p1p2": 4099, "p2p3": 16411, "p3p1": 20510}
    path = tmp_path / "lengths.json"
    path.write_text(json.dumps(lengths))
    code, out = run(capsys, "conditions", "check", str(path))
    assert code == 0 and json.loads(out.out) == {"ok": True}
    path.write_text(json.dumps({**lengths, "p1q1": 2}))
    code, out = run(capsys, "conditions", "check", str(path))
    assert code == 1 and json.loads(out.out)["violations"][0]["set"] == "serial 4"


def test_analyze(capsys, rectangle):
    code, out = run(capsys, "analyze", rectangle, "--lemma4", "--density", "--attacks")
    data = json.loads(out.out)
    assert data["density"]["density"] == "1"
    assert [a["placements"] for a in data["attacks"]] == [2] * 5


def test_atlas(capsys):
    code, out = run(capsys, "atlas", "--max-n", "4", "--samples", "50")
    data = json.loads(out.out)
    assert code == 0 and data["inconsistencies"] == 0 and data["graphs"] == 9


def test_export_dot(capsys, triangle, tmp_path):
    placement = tmp_path / "p.json"
    placement.write_text(json.dumps({"0": "0", "1": "5", "2": "2"}))
    code, out = run(capsys, "export-dot", triangle, "--placement", str(placement))
    assert code == 0 and out.out.count("style=solid") == 3 and 'x="2/1"' in out.out


def test_oracle_command(capsys, tmp_path):
    q = tmp_path / "q.json"
    q.write_text(json.dumps({"n": 6, "rounds": [[[0, 1], [1, 2], [2, 3], [3, 4], [4, 5],
                                                 [0, 5], [0, 2], [0, 3]], [[1, 4]]]}))
    code, out = run(capsys, "oracle", "--mode", "adversary", "--queries", str(q))
    data = json.loads(out.out)
    assert code == 0 and len(data["rounds"]) == 2 and "verdict" in data
    code, first = run(capsys, "oracle", "--mode", "honest", "--seed", "3", "--queries", str(q))
    code, second = run(capsys, "oracle", "--mode", "honest", "--seed", "3", "--queries", str(q))
    assert first.out == second.out


def test_console_module_runs():
    proc = subprocess.run([sys.executable, "-m", "ppg.cli", "run", "--alg", "triangle",
                           "--n", "10"], capture_output=True, text=True, check=False)
    assert proc.returncode == 0 and json.loads(proc.stdout)["total"] == 17
