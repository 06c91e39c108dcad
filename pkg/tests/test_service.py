"""HTTP service endpoints via the ASGI test client."""

import warnings

import pytest

with warnings.catch_warnings():
    warnings.simplefilter("ignore", DeprecationWarning)
    from starlette.testclient import TestClient

from chromacert import __version__
from chromacert.constructions import build
from chromacert.service.app import app


@pytest.fixture(scope="module")
def client():
    with TestClient(app, base_url="http://chromacert") as c:
        yield c


def test_health(client):
    r = client.get("/health")
    assert r.status_code == 200
    assert r.json() == {"status": "ok", "version": __version__}


def test_parse(client):
    r = client.post("/parse", json={"text": "vertices 3\nedge 0 1\nedge 1 2\n"})
    assert r.status_code == 200
    doc = r.json()
    assert doc["n"] == 3
    assert doc["edges"] == [[0, 1], [1, 2]]
    assert doc["simple"] and doc["connected"]


def test_parse_error(client):
    r = client.post("/parse", json={"text": "vertices 2\nedge 0 5\n"})
    assert r.status_code == 422


def test_constructions_list(client):
    r = client.get("/constructions")
    assert "complete" in r.json()["names"]


def test_construct(client):
    r = client.post("/construct", json={"name": "complete(4)"})
    assert r.status_code == 200
    doc = r.json()
    assert doc["graph"]["n"] == 4
    assert doc["expected"]["ch_sep"] == [2, 2]
    r = client.post("/construct", json={"name": "bogus(9)"})
    assert r.status_code == 422


def test_invariant(client):
    g = build("complete(4)").graph
    r = client.post("/invariant", json={"graph": g.to_text(), "kind": "chi"})
    assert r.status_code == 200
    doc = r.json()
    assert doc["exact"] == 4
    assert doc["graph_hash"] == g.hash()
    assert doc["ledger"]["chi"]["upper"]["value"] == 4


def test_invariant_unknown_kind(client):
    r = client.post("/invariant", json={"graph": "vertices 1\n", "kind": "nope"})
    assert r.status_code == 422


def test_invariant_budget_interval(client):
    g = build("complete(6)").graph
    r = client.post(
        "/invariant",
        json={"graph": g.to_text(), "kind": "chi", "budget": {"max_nodes": 3}},
    )
    doc = r.json()
    assert doc["exact"] is None
    assert doc["lower"] < doc["upper"]


def test_verify_roundtrip(client):
    c = build("kkn_bad(2)")
    r = client.post("/construct", json={"name": "kkn_bad(2)"})
    inst = r.json()["instance"]
    r = client.post("/verify", json={"graph": c.graph.to_text(), "instance": inst})
    assert r.status_code == 200
    assert r.json()["confirmed"] is True


def test_verify_hash_mismatch(client):
    r = client.post("/construct", json={"name": "kkn_bad(2)"})
    inst = r.json()["instance"]
    other = build("complete(4)").graph
    r = client.post("/verify", json={"graph": other.to_text(), "instance": inst})
    assert r.status_code == 409


def test_experiment(client):
    r = client.post("/experiment", json={"name": "bipartite-threshold", "k": 2})
    assert r.status_code == 200
    rep = r.json()["report"]
    assert rep["pass"] is True
    assert all(a["pass"] for a in rep["assertions"])
    r = client.post("/experiment", json={"name": "no-such"})
    assert r.status_code == 422
    r = client.post("/experiment", json={"name": "table1", "nmax": 99})
    assert r.status_code == 422
