"""End-to-end command-line checks, including the exit-code contract:
0 = pass/exact/confirmed, 1 = refuted/expectation failed,
2 = budget interval, 3 = input error."""

import json

from click.testing import CliRunner

from chromacert.cli import main
from chromacert.constructions import build
from chromacert.instances import instance_to_json


def run(*args):
    return CliRunner().invoke(main, args, catch_exceptions=False)


def test_parse_command(tmp_path):
    p = tmp_path / "g.txt"
    p.write_text("vertices 3\nedge 0 1\nedge 1 2\n")
    res = run("parse", str(p))
    assert res.exit_code == 0
    assert "3" in res.output


def test_parse_bad_graph(tmp_path):
    p = tmp_path / "bad.txt"
    p.write_text("vertices 2\nedge 0 7\n")
    res = run("parse", str(p))
    assert res.exit_code == 3


def test_construct_json(tmp_path):
    out = tmp_path / "k4.json"
    res = run("construct", "complete(4)", "--json", str(out))
    assert res.exit_code == 0
    doc = json.loads(out.read_text())
    assert doc["graph"]["n"] == 4


def test_construct_unknown():
    res = run("construct", "no_such_thing")
    assert res.exit_code == 3


def test_invariant_exact_table():
    res = run("invariant", "complete(4)", "--kind", "chi")
    assert res.exit_code == 0
    assert res.output.strip().splitlines()[-1].split()[-1] == "4"


def test_invariant_default_table():
    res = run("invariant", "complete(3)")
    assert res.exit_code == 0
    header = res.output.splitlines()[0]
    for col in ("ch", "chi_conflict", "ch_ad", "ch_sep"):
        assert col in header
    assert res.output.splitlines()[1].split()[1:] == ["3", "2", "2", "2"]


def test_invariant_budget_exit():
    res = run(
        "invariant", "complete(6)", "--kind", "chi", "--budget-nodes", "3"
    )
    assert res.exit_code == 2
    assert "[" in res.output and "]" in res.output


def test_invariant_unknown_kind():
    res = run("invariant", "complete(3)", "--kind", "zeta")
    assert res.exit_code == 3


def test_verify_confirmed(tmp_path):
    c = build("kkn_bad(2)")
    inst = tmp_path / "inst.json"
    inst.write_text(
        json.dumps(instance_to_json(c.instance, c.graph, c.instance_kind))
    )
    res = run("verify", "kkn_bad(2)", str(inst))
    assert res.exit_code == 0
    assert "confirmed" in res.output


def test_verify_refuted(tmp_path):
    g = build("cycle(4)").graph
    doc = {"kind": "list", "k": 2, "graph_hash": g.hash(),
           "data": [[0, 1]] * 4}
    inst = tmp_path / "inst.json"
    inst.write_text(json.dumps(doc))
    res = run("verify", "cycle(4)", str(inst))
    assert res.exit_code == 1
    assert "refuted" in res.output


def test_verify_hash_mismatch(tmp_path):
    c = build("kkn_bad(2)")
    inst = tmp_path / "inst.json"
    inst.write_text(
        json.dumps(instance_to_json(c.instance, c.graph, c.instance_kind))
    )
    res = run("verify", "complete(4)", str(inst))
    assert res.exit_code == 3


def test_experiment_pass(tmp_path):
    out = tmp_path / "rep.json"
    res = run("experiment", "bipartite-threshold", "--k", "2", "--json", str(out))
    assert res.exit_code == 0
    rep = json.loads(out.read_text())
    assert rep["pass"] is True


def test_experiment_unknown():
    res = run("experiment", "never-heard-of-it")
    assert res.exit_code == 3


def test_experiment_reports_are_reproducible(tmp_path):
    a = tmp_path / "a.json"
    b = tmp_path / "b.json"
    run("experiment", "k4n-witness", "--seed", "5", "--json", str(a))
    run("experiment", "k4n-witness", "--seed", "5", "--json", str(b))
    assert a.read_bytes() == b.read_bytes()
