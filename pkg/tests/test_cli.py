import json
import subprocess
import sys

import pytest

from shagraph import jsonio
from shagraph.cli import main
from shagraph.groups import named_group, trivial, trivial_hom
from shagraph.sha import nonmono_model, triangle_model
from shagraph.corpus import monotonic_models

LOOP5 = [[0, 1, 2, 3, 4], [1, 0, 3, 4, 2], [2, 4, 0, 1, 3], [3, 2, 4, 0, 1], [4, 3, 1, 2, 0]]


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture
def files(tmp_path):
    z2 = named_group("z2")
    paths = {}
    models = {"triangle": triangle_model(z2),
              "nonmono": nonmono_model(trivial(), z2, trivial_hom(trivial(), z2)),
              "mono": next(m for m in monotonic_models(3) if len(m.graph.edges) == 3)}
    for name, m in models.items():
        p = tmp_path / f"{name}.json"
        p.write_text(jsonio.dumps(jsonio.model_to_json(m)))
        paths[name] = str(p)
    edge = tmp_path / "edge.json"
    edge.write_text(json.dumps({"fields": [{"name": "k"}], "vertices": [{"id": 0, "kind": "U", "field": "k"},
                               {"id": 1, "kind": "P", "field": "k"}], "edges": [{"id": 0, "p": 1, "u": 0}]}))
    paths["edge"] = str(edge)
    bad = tmp_path / "loop.json"
    bad.write_text(json.dumps({"order": 5, "table": LOOP5}))
    paths["loop"] = str(bad)
    return paths


def test_graph_check(capsys, files):
    code, out, _ = run(capsys, "graph-check", files["triangle"])
    d = json.loads(out)
    assert code == 0 and d["cycleRank"] == 1 and not d["isTree"]
    d = json.loads(run(capsys, "graph-check", files["edge"])[1])
    assert d["isTree"] and d["isMonotonicTree"] and d["root"] == 0
    d = json.loads(run(capsys, "graph-check", files["nonmono"])[1])
    assert d["isTree"] and not d["isMonotonicTree"]


def test_sha(capsys, files):
    code, out, _ = run(capsys, "sha", files["triangle"], "--exact")
    d = json.loads(out)
    assert code == 0 and d["classCount"] == 2 and d["verdict"] == "counterexample"
    d = json.loads(run(capsys, "sha", files["nonmono"], "--lower-bound")[1])
    assert d["classCount"] == 2
    d = json.loads(run(capsys, "sha", files["mono"])[1])
    assert d["classCount"] == 1


def test_sha_exact_refuses(capsys, files):
    code, _, err = run(capsys, "sha", files["nonmono"], "--exact")
    assert code == 1
    assert json.loads(err)["error"] == "HypothesisViolated" and json.loads(err)["witness"] == "P"


def test_state_bound(capsys, files):
    code, _, err = run(capsys, "sha", files["triangle"], "--max-states", "10")
    assert code == 1 and json.loads(err)["error"] == "StateBoundExceeded"


@pytest.mark.parametrize("kappa,a,b,d,group", [("", "-1", "2", 1, []), ("17", "-1", "2", 2, [2]),
                                               ("", "3", "5", 3, [2, 2])])
def test_dk(capsys, kappa, a, b, d, group):
    code, out, _ = run(capsys, "dk", "--kappa", kappa, "--a", a, "--b", b)
    res = json.loads(out)
    assert code == 0 and res["d"] == d and res["torusGroup"] == group


def test_dk_degenerate(capsys):
    assert run(capsys, "dk", "--kappa", "", "--a", "2", "--b", "8")[0] == 1


def test_tate(capsys, tmp_path):
    p = tmp_path / "m.json"
    p.write_text(json.dumps({"module": {"orders": [4], "sigma": [[3]]}}))
    code, out, _ = run(capsys, "tate", str(p))
    assert code == 0 and json.loads(out)["invariantFactors"] == [2]


def test_hilbert(capsys):
    d = json.loads(run(capsys, "hilbert", "-1", "-1")[1])
    assert d["symbols"] == {"inf": -1, "2": -1} and d["split"] is False
    assert run(capsys, "hilbert", "0", "3")[0] == 2
    assert run(capsys, "hilbert", "3", "5", "--place", "x")[0] == 2


def test_examples(capsys):
    d = json.loads(run(capsys, "examples", "triangle")[1])
    assert d["sha"]["classCount"] == 2 and d["model"]["schema"] == "shagraph.model/1"
    assert json.loads(run(capsys, "examples", "nonmono")[1])["sha"]["classCount"] == 2
    assert json.loads(run(capsys, "examples", "triangle", "--group", "s3")[1])["sha"]["classCount"] == 3
    code, _, err = run(capsys, "examples", "square")
    assert code == 2 and json.loads(err)["error"] == "UnknownExample"


def test_input_errors(capsys, tmp_path, files):
    p = tmp_path / "broken.json"
    p.write_text('{"fields": [}')
    code, _, err = run(capsys, "graph-check", str(p))
    assert code == 2 and json.loads(err)["error"] == "ParseError"
    code, _, err = run(capsys, "graph-check", str(tmp_path / "missing.json"))
    assert code == 2
    code, _, err = run(capsys, "examples", "triangle", "--group", "file:" + files["loop"])
    assert code == 2 and json.loads(err)["error"] == "NotAssociative"


def test_table_format(capsys, files):
    code, out, _ = run(capsys, "sha", files["triangle"], "--format", "table")
    assert code == 0 and "classCount: 2" in out.splitlines()


def test_deterministic(files):
    cmd = [sys.executable, "-m", "shagraph.cli", "examples", "triangle", "--group", "s3"]
    a = subprocess.run(cmd, capture_output=True, check=True).stdout
    b = subprocess.run(cmd, capture_output=True, check=True).stdout
    assert a == b and a


def test_selftest_corrupted(capsys, files):
    code, _, err = run(capsys, "selftest", "--group", "file:" + files["loop"])
    d = json.loads(err)
    assert code == 2 and d["error"] == "NotAssociative" and len(d["witness"]) == 3


@pytest.mark.slow
def test_selftest_clean(capsys):
    import time
    t0 = time.perf_counter()
    code, out, _ = run(capsys, "selftest")
    assert code == 0 and json.loads(out)["status"] == "ok"
    assert time.perf_counter() - t0 < 120
