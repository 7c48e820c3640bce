from __future__ import annotations

import json
import subprocess
import sys

import pytest

from outerat.cli import main
from outerat.generators import GenConfig, gen_random_outerplanar
from outerat.graph import serialize_graph


@pytest.fixture
def files(tmp_path):
    def write(name: str, text: str):
        p = tmp_path / name
        p.write_text(text)
        return str(p)

    return write


C4 = '{"boundary":[0,1,2,3],"chords":[]}'
C5 = '{"boundary":[0,1,2,3,4],"chords":[]}'
F6 = '{"boundary":[0,1,2,3,4,5],"chords":[[0,3]]}'


def test_orient_c4(files, capsys):
    assert main(["orient", files("c4.json", C4), "--k", "5"]) == 0
    assert len(json.loads(capsys.readouterr().out)["arcs"]) == 4


def test_orient_c5_rejected(files, capsys):
    assert main(["orient", files("c5.json", C5), "--k", "5"]) == 2
    assert "OddCycleWithEmptyS" in capsys.readouterr().err


def test_orient_f6_bipartite(files, tmp_path):
    out = tmp_path / "o.json"
    assert main(["orient", files("f6.json", F6), "--bipartite", "--out", str(out)]) == 0
    assert len(json.loads(out.read_text())["arcs"]) == 7


def test_orient_edge_list_and_s(files, capsys):
    assert main(["orient", files("c4.txt", "4 4\n0 1\n1 2\n2 3\n3 0\n")]) == 0
    capsys.readouterr()
    assert main(["orient", files("c4s.json", '{"boundary":[0,1,2,3],"chords":[],"S":[[3]]}')]) == 0
    assert json.loads(capsys.readouterr().out)["S_arrows"] == [{"tail": 3, "head": 0}]


def test_io_errors(files):
    assert main(["orient", "/nonexistent/graph.json"]) == 1
    assert main(["orient", files("bad.json", '{"boundary":[0,1,2,3],"chords":[[0,2],[1,3]]}')]) == 1
    assert main(["orient", files("k4.txt", "4 6\n0 1\n0 2\n0 3\n1 2\n1 3\n2 3\n")]) == 2


def test_verify_f6(files, tmp_path, capsys):
    g = files("f6.json", F6)
    o = str(tmp_path / "o.json")
    assert main(["orient", g, "--out", o]) == 0
    capsys.readouterr()
    assert main(["verify", g, o]) == 0
    assert "total=3" in capsys.readouterr().out
    data = json.loads(open(o).read())
    for a in data["arcs"]:
        if (a["tail"], a["head"]) == (4, 5):
            a["tail"], a["head"] = 5, 4
    bad = files("bad.json", json.dumps(data))
    assert main(["verify", g, bad]) == 5
    assert main(["verify", g, files("junk.json", "{")]) == 1


def test_verify_truncated_mode(files, tmp_path):
    g = files("e7.json", '{"boundary":[0,1,2,3,4,5,6],"chords":[[0,4],[1,3]]}')
    o = str(tmp_path / "o.json")
    assert main(["orient", g, "--out", o]) == 0
    assert main(["verify", g, o, "--k", "5"]) == 0
    assert main(["verify", g, o, "--k", "2"]) == 5


def test_verify_too_many_arcs(files, tmp_path):
    G, _ = gen_random_outerplanar(GenConfig(n=17, chord_prob=1, seed=1))
    assert len(G.edges) == 31
    g = files("big.json", serialize_graph(G))
    o = str(tmp_path / "o.json")
    assert main(["orient", g, "--out", o]) == 0
    assert main(["verify", g, o]) == 4


def test_batch(capsys, monkeypatch):
    monkeypatch.delenv("ATO_SEED", raising=False)
    assert main(["batch", "--count", "100", "--n-max", "12", "--seed", "7"]) == 0
    assert "instances=100 passes=100 failures=0" in capsys.readouterr().out
    assert main(["batch", "--count", "100", "--n-max", "12", "--bipartite", "--workers", "2"]) == 0
    out = capsys.readouterr().out
    assert "passes=100" in out and "odd_subdigraphs=0" in out
    assert main(["batch", "--count", "0"]) == 0
    assert "instances=0" in capsys.readouterr().out


def test_batch_marks_unchecked_parity(capsys):
    assert main(["batch", "--count", "30", "--n-max", "24", "--seed", "2"]) == 0
    out = capsys.readouterr().out
    assert "failures=0" in out and "parity_unchecked=0" not in out


def test_batch_seed_env(capsys, monkeypatch):
    monkeypatch.setenv("ATO_SEED", "7")
    main(["batch", "--count", "5", "--seed", "1"])
    a = capsys.readouterr().out.split("wall_time")[0]
    monkeypatch.delenv("ATO_SEED")
    main(["batch", "--count", "5", "--seed", "7"])
    assert capsys.readouterr().out.split("wall_time")[0] == a


def test_wrappers(files, capsys):
    dc3 = files("dc3.json", '{"arcs":[{"tail":0,"head":1},{"tail":1,"head":2},{"tail":2,"head":0}]}')
    assert main(["census", dc3]) == 0
    assert capsys.readouterr().out.strip() == "even=1 odd=1 diff=0"
    assert main(["paint", files("c4.json", C4), "--f", "2,2,2,2"]) == 0
    assert capsys.readouterr().out.strip() == "Painter"
    assert main(["paint", files("k2.txt", "2 1\n0 1\n"), "--f", "1,1"]) == 0
    assert capsys.readouterr().out.strip() == "Lister"


def test_dot_and_trace_replay(files, tmp_path, capsys):
    g = files("f6.json", F6)
    o, t = str(tmp_path / "o.json"), str(tmp_path / "t.json")
    assert main(["orient", g, "--out", o, "--trace", t]) == 0
    capsys.readouterr()
    assert main(["dot", g, "--orientation", o]) == 0
    assert capsys.readouterr().out.startswith("digraph")
    trace = json.loads(open(t).read())
    assert trace["mode"] == "general" and {"case", "l", "r"} <= set(trace["steps"][0])
    assert main(["replay", t]) == 0


def test_module_entry_point(files):
    proc = subprocess.run(
        [sys.executable, "-m", "outerat", "orient", files("c5.json", C5)], capture_output=True, text=True
    )
    assert proc.returncode == 2 and "OddCycleWithEmptyS" in proc.stderr
