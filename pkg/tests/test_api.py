"""
Inflex — Tests de la API REST
"""
import pytest
from fastapi.testclient import TestClient

from inflex.core.algebra import parse_poly
from inflex.core.ffarith import fast_count_C2
from inflex.main import app


@pytest.fixture
def client(monkeypatch, tmp_path):
    monkeypatch.setenv("INFLEX_CONFIG", str(tmp_path / "absent.json"))
    return TestClient(app)


def test_root(client):
    body = client.get("/").json()
    assert body["name"] == "Inflex"


def test_list_checks(client):
    r = client.get("/api/v1/checks")
    assert r.status_code == 200
    ids = [c["id"] for c in r.json()]
    assert "d4.c2.sato-tate" in ids
    genus = next(c for c in r.json() if c["id"] == "d4.genus")
    assert genus["corrections"] and "observed g = 2" in genus["corrections"][0]


def test_run_check(client):
    r = client.post("/api/v1/checks/ramification.vandermonde-N", json={"params": {}})
    assert r.status_code == 200
    [report] = r.json()
    assert report["verdict"] == "pass"
    assert report["computed"]["lower_det"] == 378


def test_run_unknown_check(client):
    assert client.post("/api/v1/checks/no.such.check").status_code == 404


def test_run_check_bad_range(client):
    r = client.post("/api/v1/checks/weierstrass.resultant-table", json={"params": {"m": "x..y"}})
    assert r.status_code == 422


def test_inflect(client, weierstrass_p3):
    r = client.post("/api/v1/inflect", json={"family": "weierstrass", "m": 3})
    assert r.status_code == 200
    body = r.json()
    assert parse_poly(body["poly"]) == weierstrass_p3
    assert body["denominator_primes"] == [2]


def test_inflect_validation(client):
    assert client.post("/api/v1/inflect", json={"family": "quintic", "m": 3}).status_code == 422
    assert client.post("/api/v1/inflect", json={"family": "d4", "m": 0}).status_code == 422


def test_newton_with_svg(client):
    r = client.post("/api/v1/newton", json={"family": "d4", "m": 2, "svg": True})
    assert r.status_code == 200
    body = r.json()
    assert body["vertices"] == [[0, 2], [4, 0], [8, 0]]
    assert body["svg"].startswith("<?xml")


def test_count(client):
    r = client.get("/api/v1/count/d4-c2/7")
    assert r.status_code == 200
    assert r.json()["count"] == fast_count_C2(7)


def test_count_errors(client):
    assert client.get("/api/v1/count/d4-c2/5").status_code == 422
    assert client.get("/api/v1/count/nope/7").status_code == 404
