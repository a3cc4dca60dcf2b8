import json

import pytest

from cutforge.cli import main

GRAPH = {
    "vertices": ["a", "b", "c", "d"],
    "edges": [
        {"id": "e0", "src": "a", "dst": "b"},
        {"id": "e1", "src": "b", "dst": "c"},
        {"id": "e2", "src": "c", "dst": "d"},
    ],
}


@pytest.fixture
def chain_files(tmp_path):
    gpath = tmp_path / "chain.json"
    gpath.write_text(json.dumps(GRAPH))
    cpath = tmp_path / "cuts.json"
    cpath.write_text(
        json.dumps(
            {
                "universe": "chain.json",
                "cuts": [
                    {"name": "A1", "members": ["a"]},
                    {"name": "A2", "members": ["a", "b"]},
                    {"name": "A3", "members": ["a", "b", "c"]},
                ],
            }
        )
    )
    return gpath, cpath


def test_ends_table(capsys):
    assert main(["ends", "--group", "zd:1", "--rmax", "6"]) == 0
    out = capsys.readouterr().out
    assert out.strip().endswith("two ends")
    assert "R  components" in out


def test_ends_json(capsys):
    assert main(["ends", "--group", "free:2", "--rmax", "4", "--json"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["classification"] == "infinitely_many"
    assert data["counts"] == [4, 12, 36]


def test_cayley_summary_and_json(capsys):
    assert main(["cayley", "--group", "free:2", "--radius", "2"]) == 0
    assert "17 vertices" in capsys.readouterr().out
    assert main(["cayley", "--group", "free:2", "--radius", "2", "--json"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert len(data["vertices"]) == 17 and len(data["edges"]) == 16


def test_cayley_dot_restricted_to_forests(tmp_path, capsys):
    out = tmp_path / "ball.dot"
    assert main(["cayley", "--group", "zd:2", "--radius", "2",
                 "--dot", str(out)]) == 1
    assert "restricted to forests" in capsys.readouterr().err
    assert main(["cayley", "--group", "free:1", "--radius", "2",
                 "--dot", str(out)]) == 0
    assert out.read_text().startswith("graph cutforge {")


def test_measure_text_and_json(tmp_path, capsys):
    (tmp_path / "chain.json").write_text(json.dumps(GRAPH))
    cut = tmp_path / "cut.json"
    cut.write_text(json.dumps(
        {"universe": "chain.json", "members": ["a", "b"], "name": "A"}
    ))
    assert main(["measure", "--cut", str(cut)]) == 0
    out = capsys.readouterr().out
    assert out.startswith("Sigma(A) = 0 + 1 t")
    assert "L=17 certified" in out
    assert main(["measure", "--cut", str(cut), "--L", "4", "--json"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data == {"coeffs": ["0", "1", "2", "4", "6"], "L": 4,
                    "certified": False}


def test_measure_ball_cut_via_words(tmp_path, capsys):
    cut = tmp_path / "zcut.json"
    cut.write_text(json.dumps(
        {"universe": "zd:1@6",
         "members_words": ["", "x^-1", "x^-2", "x^-3", "x^-4", "x^-5", "x^-6"],
         "name": "H"}
    ))
    assert main(["measure", "--cut", str(cut)]) == 0
    out = capsys.readouterr().out
    assert out.startswith("Sigma(H) = ")
    assert "L=16 window" in out


def test_sieve_summary(chain_files, capsys):
    _gpath, cpath = chain_files
    assert main(["sieve", "--cuts", str(cpath)]) == 0
    out = capsys.readouterr().out
    assert "algebra: 4 atoms, 16 elements" in out
    assert "6 irreducible, 0 undecided" in out
    assert "complement-stable: yes  nested: yes  generates: yes" in out


def test_tree_text_json_dot(chain_files, tmp_path, capsys):
    _gpath, cpath = chain_files
    assert main(["tree", "--cuts", str(cpath), "--mode", "U"]) == 0
    out = capsys.readouterr().out
    assert "U-tree: 4 vertices, 3 edges" in out
    assert main(["tree", "--cuts", str(cpath), "--mode", "U", "--json"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert [v["label"] for v in data["vertices"]] == [
        ["A1", "A2", "A3"], ["A2", "A3"], ["A3"], []
    ]
    dot = tmp_path / "tree.dot"
    assert main(["tree", "--cuts", str(cpath), "--mode", "U",
                 "--dot", str(dot)]) == 0
    text = dot.read_text()
    assert text.count(" -- ") == 3


def test_tree_rejects_unusable_system(tmp_path, capsys):
    (tmp_path / "chain.json").write_text(json.dumps(GRAPH))
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps(
        {"universe": "chain.json",
         "cuts": [{"name": "A", "members": ["a", "b"]},
                  {"name": "B", "members": ["b", "c"]}]}
    ))
    assert main(["tree", "--cuts", str(bad), "--mode", "U"]) == 1
    assert "error:" in capsys.readouterr().err


def test_split_text_and_refusal(capsys):
    assert main(["split", "--group", "zd:1"]) == 0
    out = capsys.readouterr().out
    assert "final tree: 1 edge orbit" in out
    assert main(["split", "--group", "zd:2"]) == 1
    assert "no balanced cut" in capsys.readouterr().err


def test_split_json(capsys):
    assert main(["split", "--group", "free_product:2,2", "--json"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["status"] == "split"
    assert data["vertex_stabilizer_orders"] == [2, 2]
    assert data["certificate"] == "ball-verified(R=6, W=2, L=53)"


def test_check_suite_runs(capsys):
    assert main(["check", "--suite", "cuts", "--seed", "0"]) == 0
    out = capsys.readouterr().out
    assert out.startswith("check suite=cuts seed=0")
    assert out.strip().endswith("assertions)")
    assert "[ok]" in out


def test_usage_errors_exit_2():
    with pytest.raises(SystemExit) as exc:
        main(["check", "--suite", "nonsense"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        main(["nonsense"])
    assert exc.value.code == 2


def test_missing_file_is_reported(capsys):
    assert main(["measure", "--cut", "/nonexistent/cut.json"]) == 1
    assert "error:" in capsys.readouterr().err
