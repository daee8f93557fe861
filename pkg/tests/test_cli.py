import json
import subprocess
import sys

import pytest

from treelift.cli import bench_report, main
from treelift.errors import UsageError

from .conftest import WORKED_TEXT


def run_cli(args, stdin=None):
    proc = subprocess.run(
        [sys.executable, "-m", "treelift.cli", *args],
        input=stdin, capture_output=True, text=True)
    return proc.returncode, proc.stdout, proc.stderr


@pytest.fixture
def worked_path(tmp_path):
    path = tmp_path / "worked.pg"
    path.write_text(WORKED_TEXT)
    return str(path)


def test_solve_worked_json(worked_path):
    rc, out, err = run_cli(["solve", worked_path, "--tree", "perfect",
                            "--capacity", "3"])
    assert rc == 0, err
    data = json.loads(out)
    assert data["winners"] == {"even": ["C", "D", "E"], "odd": ["A", "B"]}
    assert data["labels"] == {"A": "TOP", "B": "TOP", "C": "(1,0)",
                              "D": "(0,0)", "E": "(1,0)"}
    assert data["warnings"]


def test_solve_deterministic_stdout(worked_path):
    args = ["solve", worked_path, "--tree", "succinct", "--seed", "5"]
    outs = []
    for _ in range(2):
        rc, out, _ = run_cli(args)
        assert rc == 0
        data = json.loads(out)
        data.pop("wall_ms")
        outs.append(json.dumps(data, sort_keys=True))
    assert outs[0] == outs[1]


def test_solve_text_format(worked_path, monkeypatch):
    rc, out, err = run_cli(["solve", worked_path, "--format", "text"])
    assert rc == 0
    assert "even wins:" in out and "\x1b[" not in out  # not a tty: no color


def test_solve_usage_errors(tmp_path, worked_path):
    rc, _, err = run_cli(["solve", str(tmp_path / "missing.pg")])
    assert rc == 2 and "error:" in err
    bad = tmp_path / "bad.pg"
    bad.write_text("0 2 0 ;")
    rc, _, err = run_cli(["solve", str(bad)])
    assert rc == 2 and "sink" in err
    rc, _, err = run_cli(["solve", worked_path, "--tree", "succinct",
                          "--engine", "perfect"])
    assert rc == 2


def test_verify_random_ok():
    rc, out, _ = run_cli(["verify", "--runs", "6", "--n", "10", "--d", "5",
                          "--seed", "3"])
    assert rc == 0
    assert "verified 6 game(s)" in out


def test_verify_file(worked_path):
    rc, out, _ = run_cli(["verify", worked_path])
    assert rc == 0


def test_gen_pipe_solve():
    rc, text, _ = run_cli(["gen", "random", "--n", "8", "--d", "4",
                           "--seed", "2"])
    assert rc == 0
    rc2, out, err = run_cli(["solve", "-", "--algo", "progress"], stdin=text)
    assert rc2 == 0, err
    data = json.loads(out)
    assert data["lifts"] >= 0
    rc3, again, _ = run_cli(["gen", "random", "--n", "8", "--d", "4",
                             "--seed", "2"])
    assert again == text


def test_gen_worstcase(tmp_path):
    base = tmp_path / "loop.pg"
    base.write_text("0 4 0 1;\n1 2 0 0;\n")
    rc, out, _ = run_cli(["gen", "worstcase", "--base", str(base), "--k", "1"])
    assert rc == 0
    assert len(out.strip().splitlines()) == 5  # header + 4 nodes
    rc, _, err = run_cli(["gen", "worstcase", "--base", str(base), "--k", "2"])
    assert rc == 2


def test_dump_aux(worked_path):
    rc, _, err = run_cli(["solve", worked_path, "--tree", "perfect",
                          "--capacity", "3", "--engine", "lc", "--dump-aux"])
    assert rc == 0
    assert "D -> D : [0]" in err


def test_export_mpg(worked_path):
    rc, out, _ = run_cli(["export-mpg", worked_path])
    assert rc == 0
    lines = dict()
    for line in out.strip().splitlines():
        u, v, w = line.split()
        lines[(u, v)] = int(w)
    assert lines[("C", "D")] == (-5) ** 3
    assert lines[("D", "E")] == (-5) ** 4


def test_bench(tmp_path):
    g1 = tmp_path / "a.pg"
    g1.write_text("0 2 0 1; 1 1 1 0;")
    rc, out, err = run_cli(["bench", str(tmp_path), "--trees",
                            "perfect,succinct", "--algos", "strategy"])
    assert rc == 0, err
    lines = out.strip().splitlines()
    assert lines[0] == "instance,n,m,d,tree,algo,phases,lifts,wall_ms"
    assert len(lines) == 3  # one instance, two tree kinds
    rc, _, err = run_cli(["bench", str(tmp_path / "empty")])
    assert rc == 2


def test_bench_report_empty():
    with pytest.raises(UsageError):
        bench_report([])


def test_main_inprocess(worked_path, capsys):
    assert main(["solve", worked_path, "--tree", "strahler"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["winners"]["even"] == ["C", "D", "E"]
