from fractions import Fraction

import pytest
from fastapi.testclient import TestClient

from vertpairs.algebra import HalfLaurentSeries, series_from_json
from vertpairs.service import create_app


@pytest.fixture(scope="module")
def client():
    return TestClient(create_app())


def test_health(client):
    assert client.get("/health").json() == {"status": "ok"}


def test_pairs_endpoint_exact(client):
    resp = client.post(
        "/pairs", json={"d": 1, "h": 2, "chi_parity": "odd"}
    )
    assert resp.status_code == 200
    body = resp.json()
    assert body["t_power"] == 0 and body["exact"] is True
    series = series_from_json(body["series"])
    assert series == HalfLaurentSeries({-1: -1, 0: -2, 1: -1}, den=1)
    assert "window" not in body["series"]
    assert body["series"]["truncation"] is None


def test_pairs_endpoint_oracle(client):
    resp = client.post(
        "/pairs",
        json={
            "d": 2,
            "h": 2,
            "chi_parity": "even",
            "insertions": [{"alpha": 1, "pairing": "1"}],
            "oracle": True,
            "window": [-6, 6],
        },
    )
    assert resp.status_code == 200
    body = resp.json()
    assert body["oracle"]["match"] is True
    brute = series_from_json(body["oracle"]["bruteforce"])
    assert brute.window == (-6, 6)


def test_pairs_oracle_without_window_is_an_error(client):
    resp = client.post(
        "/pairs", json={"d": 1, "h": 2, "chi_parity": "odd", "oracle": True}
    )
    assert resp.status_code == 400


def test_pairs_h1_descendents_needs_window(client):
    req = {"d": 1, "h": 1, "chi_parity": "even", "insertions": [{"alpha": 1}]}
    resp = client.post("/pairs", json=req)
    assert resp.status_code == 400
    resp = client.post("/pairs", json={**req, "window": [-4, 4]})
    assert resp.status_code == 200
    assert resp.json()["exact"] is False


def test_pairs_validation_error(client):
    resp = client.post("/pairs", json={"d": 0, "h": 2, "chi_parity": "odd"})
    assert resp.status_code == 422


def test_gw_endpoint(client):
    resp = client.post("/gw", json={"d": 1, "h": 2, "chi_parity": "odd", "order": 6})
    assert resp.status_code == 200
    body = resp.json()
    assert body["valuation"] == 2
    assert body["conjecture_conditional"] is False
    series = series_from_json(body["series"])
    assert series.coeff(2).const_value() == -1
    assert series.coeff(4).const_value() == Fraction(1, 12)


def test_gw_with_insertions_is_conditional(client):
    resp = client.post(
        "/gw",
        json={
            "d": 1,
            "h": 2,
            "chi_parity": "odd",
            "order": 8,
            "insertions": [{"alpha": 1, "pairing": "1"}],
        },
    )
    body = resp.json()
    assert body["conjecture_conditional"] is True
    assert body["t_power"] == 1
    assert body["valuation"] == 4  # 2 from the base series + 2 alpha


def test_hurwitz_endpoint(client):
    resp = client.post("/hurwitz", json={"d": 3, "h": 2, "chi_parity": "even"})
    assert resp.json() == {"value": "9"}


def test_mp_check_endpoint(client):
    resp = client.post(
        "/mp-check",
        json={
            "d": 1,
            "h": 2,
            "chi_parity": "odd",
            "insertions": [{"alpha": 2, "pairing": "1"}],
        },
    )
    body = resp.json()
    assert body["match"] is True
    assert body["pipeline_value"] == "-1/240"
    assert body["closed_value"] == "-1/240"
    assert body["conjecture_conditional"] is True


def test_matrices_endpoint(client):
    resp = client.post("/matrices", json={"size": 3})
    body = resp.json()
    assert body["inverse_check"] is True
    assert body["L"][1][0] == {"re": "-1", "im": "0"}
    assert body["L"][1][1] == {"re": "0", "im": "1"}
    assert body["K"][1][0] == {"re": "0", "im": "-1"}


def test_appendix_endpoint(client):
    resp = client.post("/appendix", json={"alpha_max": 4, "pix": True, "x_order": 12, "v_order": 4})
    body = resp.json()
    assert body["passed"] is True
    assert body["pix_ok"] is True
    assert [r["leading"] for r in body["reports"]] == ["1", "1/3", "1/15", "1/105"]


def test_verify_endpoint(client):
    resp = client.post("/verify", json={"suite": "appendix"})
    body = resp.json()
    assert body["passed"] is True
    assert body["failed"] == 0
    assert body["total"] == len(body["checks"]) > 0


def test_insertion_pairing_is_canonicalised(client):
    resp = client.post(
        "/pairs",
        json={
            "d": 2,
            "h": 2,
            "chi_parity": "even",
            "insertions": [{"alpha": 0, "pairing": "4/8"}],
        },
    )
    assert resp.status_code == 200
    # divisor equation: multiplies the base by d * 1/2 = 1
    base = client.post("/pairs", json={"d": 2, "h": 2, "chi_parity": "even"}).json()
    assert resp.json()["series"] == base["series"]
