import json
import subprocess
import sys

import pytest

from polygraph.cli import load_graph, run
from polygraph.graph_core import are_isomorphic, cartesian_product, circulant, from_graph6, petersen


def call(capsys, *argv):
    code = run(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_gen_circulant_graph6_and_json(capsys):
    code, out, _ = call(capsys, "gen", "circulant", "8", "1,2,4")
    data = json.loads(out)
    assert code == 0 and data["n"] == 8 and len(data["edges"]) == 20
    assert from_graph6(data["graph6"]).adj == circulant(8, [1, 2, 4]).adj
    code, out, _ = call(capsys, "gen", "circulant", "8", "1,2,4", "--format", "graph6")
    assert out.strip() == data["graph6"]


def test_gen_star_clique_and_product(capsys):
    code, out, _ = call(capsys, "gen", "star-clique", "octahedron", "0")
    assert code == 0 and json.loads(out)["n"] == 9
    code, out, _ = call(capsys, "gen", "product", "complete:2", "cycle:5")
    assert json.loads(out)["n"] == 10


def test_graph_specs(tmp_path):
    assert are_isomorphic(load_graph("complete:2*petersen"), cartesian_product(load_graph("complete:2"), petersen()))
    f = tmp_path / "g.json"
    f.write_text(json.dumps(petersen().to_json()))
    assert load_graph(str(f)).adj == petersen().adj
    e = tmp_path / "g.txt"
    e.write_text(petersen().to_edge_list())
    assert load_graph(str(e)).adj == petersen().adj
    g = tmp_path / "g.g6"
    g.write_text(petersen().to_graph6())
    assert load_graph(str(g)).adj == petersen().adj


def test_range_json_and_md(capsys):
    code, out, _ = call(capsys, "range", "circulant:8:1,2,3")
    rep = json.loads(out)
    assert code == 0 and rep["confirmed"] == [4, 5]
    code, out, _ = call(capsys, "range", "circulant:8:1,2,3", "--format", "md")
    assert "range: {4,5}" in out


def test_range_output_is_deterministic(capsys):
    _, a, _ = call(capsys, "range", "marc_antonio:1")
    _, b, _ = call(capsys, "range", "marc_antonio:1")
    assert a == b


def test_check_commands(capsys):
    code, out, _ = call(capsys, "check", "psp", "circulant:8:1,2,4", "--d", "5")
    assert code == 0 and json.loads(out)["status"] == "fail"
    code, out, _ = call(capsys, "check", "separation", "klee_stacked:4:6", "--d", "3")
    assert json.loads(out)["certificate"]["components"] == 9
    code, out, _ = call(capsys, "check", "steinitz", "hypercube:3")
    assert len(json.loads(out)["two_faces"]) == 6


def test_facet_search_transcript_and_replay(capsys, tmp_path):
    t = tmp_path / "t.jsonl"
    code, out, _ = call(capsys, "check", "facet-search", "circulant:8:1,3,4", "--d", "4", "--transcript", str(t))
    assert json.loads(out)["status"] == "REFUTED"
    code, out, _ = call(capsys, "replay", str(t), "circulant:8:1,3,4", "--d", "4")
    assert code == 0 and json.loads(out)["ok"]
    code, out, _ = call(capsys, "replay", str(t), "circulant:8:1,2,4", "--d", "4")
    assert code == 1


def test_construct_and_verify(capsys, tmp_path):
    f = tmp_path / "p.json"
    code, _, _ = call(capsys, "construct", "lifted-product", "--p", "triangle", "--q", "segment-midpoint",
                      "--out", str(f))
    assert code == 0
    data = json.loads(f.read_text())
    assert data["verified"] and data["f_vector"] == [9, 15, 8]
    code, out, _ = call(capsys, "verify", str(f), "cycle:3*path:2")
    assert code == 0 and json.loads(out)["ok"]
    code, out, _ = call(capsys, "verify", str(f), "petersen")
    assert code == 1


def test_construct_prism_octahedron(capsys):
    code, out, _ = call(capsys, "construct", "prism-octahedron")
    fv = [r["f_vector"] for r in json.loads(out)["realizations"]]
    assert code == 0 and len(fv) == 4


def test_table_small(capsys):
    code, out, _ = call(capsys, "table", "--max-n", "5")
    rows = json.loads(out)["rows"]
    assert code == 0 and [r["range"] for r in rows] == [[1], [2], [2], [3], [2], [4]]


@pytest.mark.parametrize("argv", [
    ["bogus"],
    ["range", "nosuch_family"],
    ["range", "circulant:8"],
    ["gen", "circulant", "8"],
    ["range", "petersen", "--budget-nodes", "0"],
    ["construct", "lifted-product", "--p", "triangle"],
    ["check", "required-2faces", "circulant:8:1,2,4", "--d", "4"],
])
def test_usage_errors_exit_2(capsys, argv):
    code, _, _ = call(capsys, *argv)
    assert code == 2


def test_threads_env(capsys, monkeypatch):
    monkeypatch.setenv("POLYGRAPH_THREADS", "x")
    assert call(capsys, "table", "--max-n", "3")[0] == 2
    monkeypatch.setenv("POLYGRAPH_THREADS", "2")
    code, out, _ = call(capsys, "table", "--max-n", "4")
    assert code == 0 and len(json.loads(out)["rows"]) == 4


def test_console_script_entry():
    res = subprocess.run([sys.executable, "-m", "polygraph.cli", "gen", "named", "petersen", "--format", "graph6"],
                         capture_output=True, text=True)
    assert res.returncode == 0 and res.stdout.strip() == petersen().to_graph6()
