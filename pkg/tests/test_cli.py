import json
import subprocess
import sys

import pytest

from weakconvex import io
from weakconvex.cli import load_bench_config, main
from weakconvex.errors import ParseError
from weakconvex.hamming import term_member

import oracles


@pytest.fixture
def files(tmp_path):
    def write(name, text):
        p = tmp_path / name
        p.write_text(text)
        return str(p)
    return write


@pytest.fixture
def path_graph(files):
    return files("path.txt", "# path 0-1-2-3-4\n5 4\n0 1\n1 2\n2 3\n3 4\n")


def run(argv, capsys):
    code = main(argv)
    out, err = capsys.readouterr()
    return code, out, err


def test_hull_ext_json(path_graph, files, capsys):
    seeds = files("seeds.txt", "0 4\n")
    code, out, _ = run(["hull-ext", path_graph, seeds, "--theta", "4"], capsys)
    assert code == 0
    assert json.loads(out) == {"theta": 4, "blocks": [[0, 1, 2, 3, 4]]}
    code, out, _ = run(["hull-ext", path_graph, seeds, "--theta", "0", "--format", "csv"], capsys)
    assert out == "0\n4\n"


def test_hull_ext_roundtrip(files, tmp_path, capsys):
    edges = [(0, 1), (1, 2), (2, 3), (3, 0), (2, 4), (4, 5), (5, 6), (6, 7)]
    g = files("g.txt", "8 8\n" + "".join(f"{u} {v}\n" for u, v in edges))
    seeds = files("s.txt", "0\n2\n7\n")
    out = tmp_path / "dec.json"
    assert main(["hull-ext", g, seeds, "--theta", "2", "--out", str(out)]) == 0
    space = io.load_graph_space(g)
    dec = io.parse_decomposition_doc(out.read_text(), space)
    D = oracles.shortest_paths(8, edges)
    assert set(dec.hull) == oracles.hull(D, {0, 2, 7}, 2)
    assert list(dec.blocks) == oracles.theta_components(D, dec.hull, 2)


def test_malformed_edge_line(files, capsys):
    bad = files("bad.txt", "3 2\n0 1\n1 two\n")
    seeds = files("s.txt", "0\n")
    code, _, err = run(["hull-ext", bad, seeds, "--theta", "1"], capsys)
    assert code == 2 and ":3:" in err
    with pytest.raises(ParseError) as exc:
        io.read_graph(bad)
    assert exc.value.line == 3


@pytest.mark.parametrize("text,line", [("2 1\n0 5\n", 2), ("2 2\n0 1\n", None),
                                       ("x 1\n", 1), ("2 1\n0 1 -3\n", 2)])
def test_graph_parse_errors(files, text, line):
    with pytest.raises(ParseError) as exc:
        io.read_graph(files("g.txt", text))
    assert exc.value.line == line


def test_unknown_seed_vertex(path_graph, files, capsys):
    code, _, err = run(["hull-ext", path_graph, files("s.txt", "9\n"), "--theta", "1"], capsys)
    assert code == 2 and "9" in err


def test_usage_errors(path_graph, capsys):
    assert run(["hull-ext", path_graph, path_graph, "--theta", "-1"], capsys)[0] == 2
    assert main([]) == 2
    assert run(["chf", path_graph, "--scheme", "graph", "--k", "1"], capsys)[0] == 2


def test_chf_boxes(files, capsys):
    lab = files("box.txt", "0,0,+\n2,2,+\n1,1,-\n")
    code, out, _ = run(["chf", lab, "--scheme", "boxes", "--k", "2", "--format", "csv"], capsys)
    assert code == 0 and out == "0.0,0.0,0.0,0.0\n2.0,2.0,2.0,2.0\n"
    code, out, _ = run(["chf", lab, "--scheme", "boxes", "--k", "1"], capsys)
    assert code == 1 and out.startswith("no")


def test_chf_hamming(files, capsys):
    lab = files("ham.txt", "000 +\n011 +\n110 -\n")
    code, out, _ = run(["chf", lab, "--scheme", "hamming", "--k", "1", "--format", "csv"], capsys)
    assert code == 0 and out == "!x1\n"
    code, out, _ = run(["chf", lab, "--scheme", "hamming", "--k", "1"], capsys)
    dnf = io.parse_term_doc(out)
    assert [t for t in dnf.terms if term_member(t, "011")] and not dnf("110")


def test_chf_graph(path_graph, files, capsys):
    lab = files("lab.txt", "0 +\n4 +\n2 -\n")
    code, out, _ = run(["chf", lab, "--scheme", "graph", "--graph", path_graph, "--k", "2"], capsys)
    assert code == 0 and json.loads(out) == {"theta": 3, "blocks": [[0], [4]]}
    code, _, _ = run(["chf", lab, "--scheme", "graph", "--graph", path_graph, "--k", "1"], capsys)
    assert code == 1
    clash = files("clash.txt", "0 +\n0 -\n")
    assert run(["chf", clash, "--scheme", "graph", "--graph", path_graph, "--k", "1"], capsys)[0] == 2


def test_hull_int(files, capsys):
    pts = files("p.txt", "0,0\n1,1\n5,5\n")
    code, out, _ = run(["hull-int", pts, "--scheme", "boxes", "--theta", "3"], capsys)
    boxes = io.parse_box_doc(out)
    assert code == 0 and [(b.lo, b.hi) for b in boxes] == [((0, 0), (1, 1)), ((5, 5), (5, 5))]
    bits = files("b.txt", "000\n111\n")
    code, out, _ = run(["hull-int", bits, "--scheme", "hamming", "--theta", "3", "--format", "csv"],
                       capsys)
    assert out == "true\n"
    mixed = files("m.txt", "000\n11\n")
    assert run(["hull-int", mixed, "--scheme", "hamming", "--theta", "1"], capsys)[0] == 2


def test_bench_config_keys(files):
    with pytest.raises(ParseError, match="graph_sizes"):
        load_bench_config(files("c.json", '{"n_graphs": 1, "n_targets": 1, "train_sizes": [4]}'))
    with pytest.raises(ParseError, match="colour"):
        load_bench_config(files("c.json", '{"preset": "desk", "colour": 1}'))
    assert load_bench_config(files("c.json", "{}")).n_tasks() == 0
    assert load_bench_config("desk").n_tasks() == 250


def test_bench_empty_and_deterministic(files, tmp_path, capsys):
    assert run(["bench", files("e.json", "{}")], capsys)[:2] == (
        0, "graph_size,graph_seed,target_seed,train_size,weighted,accuracy,baseline,"
           "theta_learned,theta_true,wall_ms\n")
    cfg = files("c.json", json.dumps({"graph_sizes": [50], "n_graphs": 2, "n_targets": 1,
                                      "train_sizes": [10], "weighted": [False, True]}))
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    summary = tmp_path / "s.csv"
    for out in (a, b):
        assert main(["bench", cfg, "--seed", "7", "--no-timing", "--out", str(out),
                     "--summary", str(summary)]) == 0
    assert a.read_bytes() == b.read_bytes()
    assert len(a.read_text().splitlines()) == 1 + 4
    assert "accuracy" in capsys.readouterr().err
    assert len(summary.read_text().splitlines()) == 1 + 2


def test_module_entry_point(path_graph, files):
    seeds = files("s.txt", "1 3\n")
    res = subprocess.run([sys.executable, "-m", "weakconvex", "hull-ext", path_graph, seeds,
                          "--theta", "2"], capture_output=True, text=True)
    assert res.returncode == 0 and json.loads(res.stdout)["blocks"] == [[1, 2, 3]]
