"""
End-to-end runs of the ``walkrank`` command line.
"""
import json
from io import StringIO

import pandas as pd
import pytest

from walkrank.main import main
from walkrank.services.fixtures import SIX_NODE_EDGES, SIX_NODE_PAGERANK


@pytest.fixture
def k3_file(tmp_path):
    path = tmp_path / "k3.el"
    path.write_text("1 2\n2 3\n1 3\n")
    return path


@pytest.fixture
def six_node_file(tmp_path):
    path = tmp_path / "six_node.el"
    path.write_text("".join(f"{u} {v}\n" for u, v in SIX_NODE_EDGES))
    return path


def _frame(text):
    return pd.read_csv(StringIO(text))


def test_compute_katz_on_triangle(k3_file, capsys):
    status = main(["compute", "--measure", "katz", "--alpha", "0.25", "--input", str(k3_file)])
    assert status == 0
    frame = _frame(capsys.readouterr().out)
    assert list(frame.columns) == ["node", "score", "rank"]
    assert frame["node"].tolist() == [1, 2, 3]
    assert frame["score"].tolist() == pytest.approx([2.0, 2.0, 2.0], rel=1e-9)


def test_compute_pagerank_matches_published(six_node_file, capsys):
    status = main([
        "compute", "--measure", "pagerank", "--alpha", "0.9",
        "--input", str(six_node_file), "--directed",
    ])
    assert status == 0
    frame = _frame(capsys.readouterr().out)
    published, tol = SIX_NODE_PAGERANK[0.9]
    assert frame["score"].tolist() == pytest.approx(list(published), abs=tol)
    assert frame.set_index("node").loc[4, "rank"] == 1


def test_compute_resolvent_pole_exits_2(k3_file, capsys):
    status = main(["compute", "--measure", "resolvent-subgraph", "--alpha", "99", "--input", str(k3_file)])
    assert status == 2
    err = capsys.readouterr().err
    assert "alpha must be < 1/lambda1 = " in err


def test_compute_json_and_out_file(tmp_path, capsys):
    out = tmp_path / "scores.json"
    status = main([
        "compute", "--fixture", "karate", "--measure", "exp-subgraph", "--beta", "1",
        "--json", "--out", str(out),
    ])
    assert status == 0
    assert capsys.readouterr().out == ""
    payload = json.loads(out.read_text())
    assert payload["measure"] == "exp-subgraph"
    assert len(payload["scores"]) == 34
    assert sorted(row["rank"] for row in payload["scores"]) == list(range(1, 35))


def test_compute_rejects_input_and_fixture(k3_file, capsys):
    status = main(["compute", "--measure", "degree", "--input", str(k3_file), "--fixture", "karate"])
    assert status == 2
    assert "either --input or --fixture" in capsys.readouterr().err


def test_compute_missing_input(tmp_path, capsys):
    status = main(["compute", "--measure", "degree", "--input", str(tmp_path / "absent.el")])
    assert status == 2
    assert "not found" in capsys.readouterr().err


def test_compute_heat_kernel_needs_time(capsys):
    status = main(["compute", "--fixture", "six-node", "--measure", "heat-kernel"])
    assert status == 2
    assert "--t" in capsys.readouterr().err


@pytest.mark.parametrize("measure, rows", [("exp-subgraph", 7), ("resolvent-subgraph", 9)])
def test_sweep_default_grids(tmp_path, capsys, measure, rows):
    out = tmp_path / "karate"
    status = main(["sweep", "--fixture", "karate", "--measure", measure, "--out", str(out)])
    assert status == 0
    frame = pd.read_csv(f"{out}.csv")
    assert len(frame) == rows
    assert list(frame.columns) == ["parameter", "isim_degree", "isim_eigenvector", "isim_successive"]
    report = json.loads((tmp_path / "karate.report.json").read_text())
    assert report["recommendation"]
    assert capsys.readouterr().out.strip() == report["recommendation"]


def test_sweep_grid_beyond_pole_exits_2(capsys):
    status = main(["sweep", "--fixture", "karate", "--measure", "katz", "--grid", "0.1,0.2"])
    assert status == 2
    assert "alpha" in capsys.readouterr().err


def test_sweep_rejects_bad_grid_text(capsys):
    status = main(["sweep", "--fixture", "karate", "--measure", "exp-subgraph", "--grid", "1,x"])
    assert status == 2
    assert "--grid" in capsys.readouterr().err


def test_sweep_json(capsys):
    status = main(["sweep", "--fixture", "karate", "--measure", "total-communicability", "--grid", "0.5,1,2", "--json"])
    assert status == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["sweep"]["parameters"] == [0.5, 1.0, 2.0]
    assert payload["report"]["family"] == "total-communicability"


def _scores(path, rows):
    path.write_text("node,score\n" + "".join(f"{node},{score}\n" for node, score in rows))
    return path


def test_compare_identical_files(tmp_path, capsys):
    a = _scores(tmp_path / "a.csv", [("a", 3.0), ("b", 2.0), ("c", 1.0)])
    assert main(["compare", str(a), str(a)]) == 0
    assert float(capsys.readouterr().out) == 0.0


def test_compare_reversed_pair_top_one(tmp_path, capsys):
    a = _scores(tmp_path / "a.csv", [("a", 2.0), ("b", 1.0)])
    b = _scores(tmp_path / "b.csv", [("a", 1.0), ("b", 2.0)])
    assert main(["compare", str(a), str(b), "--k", "1"]) == 0
    assert float(capsys.readouterr().out) == 1.0


def test_compare_swapped_leaders(tmp_path, capsys):
    a = _scores(tmp_path / "a.csv", [("a", 3.0), ("b", 2.0), ("c", 1.0)])
    b = _scores(tmp_path / "b.csv", [("a", 2.0), ("b", 3.0), ("c", 1.0)])
    assert main(["compare", str(a), str(b), "--k", "2", "--json"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload == {"k": 2, "n": 3, "isim": pytest.approx(0.5)}


def test_compare_node_mismatch_exits_2(tmp_path, capsys):
    a = _scores(tmp_path / "a.csv", [("a", 1.0), ("b", 2.0)])
    b = _scores(tmp_path / "b.csv", [("a", 1.0), ("c", 2.0)])
    assert main(["compare", str(a), str(b)]) == 2
    assert "different nodes" in capsys.readouterr().err


def test_compute_output_round_trips_through_compare(tmp_path, capsys):
    first = tmp_path / "exp.csv"
    second = tmp_path / "tc.csv"
    assert main(["compute", "--fixture", "karate", "--measure", "exp-subgraph", "--beta", "5", "--out", str(first)]) == 0
    assert main([
        "compute", "--fixture", "karate", "--measure", "total-communicability", "--beta", "5", "--out", str(second),
    ]) == 0
    assert main(["compare", str(first), str(first)]) == 0
    assert float(capsys.readouterr().out) == 0.0
    assert main(["compare", str(first), str(second), "--k", "10"]) == 0
    value = float(capsys.readouterr().out)
    assert 0.0 <= value <= 1.0


def test_pagerank_demo(capsys):
    assert main(["pagerank-demo"]) == 0
    out = capsys.readouterr().out
    assert "MISMATCH" not in out
    assert "ranking by p(0.001)  4 | 6 | 5 | 2 | 3 | 1" in out
    assert out.count("4 | 6 | 5 | 2 | 3 | 1") == len(SIX_NODE_PAGERANK)
    assert "ranking by H1        4 | 6 | 2 5 | 3 | 1" in out
    assert "published  4 6 5 2 3 1" in out


def test_info_karate(capsys):
    assert main(["info", "--fixture", "karate", "--json"]) == 0
    summary = json.loads(capsys.readouterr().out)
    assert summary["nodes"] == 34
    assert summary["edges"] == 78
    assert summary["components"] == 1
    assert summary["lambda1"] == pytest.approx(6.726, abs=1e-3)
    assert summary["lambda2"] == pytest.approx(4.977, abs=1e-3)


def test_info_digraph_table(capsys):
    assert main(["info", "--fixture", "six-node"]) == 0
    lines = capsys.readouterr().out.splitlines()
    values = dict(line.split(None, 1) for line in lines)
    assert values["directed"] == "True"
    assert values["strong_components"] == "3"
    assert values["largest_strong_component"] == "3"


def test_version(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["--version"])
    assert exc.value.code == 0
    assert "walkrank" in capsys.readouterr().out
