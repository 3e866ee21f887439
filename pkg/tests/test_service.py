"""HTTP surface: schemas, determinism, error mapping."""

import json

import numpy as np
import pytest
from starlette.testclient import TestClient

from exact_adjoint.formats import format_matrix, format_tensors
from exact_adjoint.service import app


@pytest.fixture(scope="module")
def client():
    with TestClient(app) as c:
        yield c


def test_health(client):
    res = client.get("/health")
    assert res.status_code == 200
    assert res.json() == {"schema": 1, "status": "ok"}


def test_transform_pauli(client):
    req = {"generator": "1.0 ZIII", "hamiltonian": "0.5 XIII\n0.25 IZII",
           "theta": 0.3, "verify": True}
    res = client.post("/transform", json=req)
    assert res.status_code == 200
    out = res.json()
    assert out["schema"] == 1
    assert out["S"] == [-2.0, 0.0, 2.0]
    assert out["n_commutators"] == 2
    assert out["oracle_residual"] < 1e-9
    assert "XIII" in out["transformed_operator"]


def test_transform_ucc_row4(client):
    req = {"ucc": "3^ 2^ 1 0", "fragment": "4^ 2^ 1 0", "theta": 1.0, "verify": True}
    res = client.post("/transform", json=req)
    out = res.json()
    assert out["S"] == [-1.0, 1.0]
    assert out["coefficients"] == pytest.approx([np.cos(1.0), np.sin(1.0)])
    assert out["oracle_residual"] < 1e-9


def test_transform_response_bytes_are_deterministic(client):
    req = {"generator": "1.0 ZZ", "hamiltonian": "0.125 XY\n0.5 YX", "theta": 0.9}
    a = client.post("/transform", json=req).content
    b = client.post("/transform", json=req).content
    assert a == b


def test_classify_endpoint(client):
    res = client.post("/classify", json={"ucc": "2^ 1^ 2 0", "fragment": "3^ 1^ 4 0"})
    out = res.json()
    assert out["case_label"] == "i"
    assert out["vanishing_blocks"] == ["P±HP0", "P0HP±"]
    assert out["S"] == [-2.0, 0.0, 2.0]
    assert out["n_commutators"] == 2


def test_coeffs_endpoint(client):
    res = client.post("/coeffs", json={"S": [0.0, 1.0, -1.0], "theta": 0.5})
    out = res.json()
    assert out["coefficients"] == pytest.approx([1.0, np.sin(0.5), 1 - np.cos(0.5)])


def test_rotate_endpoint(client):
    rng = np.random.default_rng(80)
    n = 3
    m = rng.normal(size=(n, n))
    m = m + m.T
    h = rng.normal(size=(n, n))
    h = h + h.T
    g = rng.normal(size=(n, n, n, n))
    g = 0.5 * (g + np.transpose(g, (3, 2, 1, 0)))
    res = client.post("/rotate", json={
        "matrix": format_matrix(m), "tensors": format_tensors(h, g), "verify": True})
    out = res.json()
    assert out["oracle_residual"] < 1e-9
    assert out["tensors"].startswith("norb 3")


def test_rotate_zero_matrix_round_trips_exactly(client):
    rng = np.random.default_rng(81)
    n = 2
    h = rng.normal(size=(n, n))
    h = h + h.T
    g = np.zeros((n, n, n, n))
    tensors = format_tensors(h, g)
    res = client.post("/rotate", json={"matrix": format_matrix(np.zeros((n, n))),
                                       "tensors": tensors})
    assert res.json()["tensors"] == tensors


def test_table1_endpoint(client):
    res = client.post("/table1", json={})
    out = res.json()
    assert out["all_agree"] is True
    assert [row["S"] for row in out["rows"]] == [
        [-2.0, 0.0, 2.0], [-2.0, 0.0, 2.0], [-2.0, 2.0], [-1.0, 1.0], [-1.0, 0.0, 1.0]]


def test_table1_extended_corpus(client):
    res = client.post("/table1", json={"extended": True})
    out = res.json()
    assert out["all_agree"] is True
    assert out["extended_checked"] == out["extended_agree"] > 1000


def test_verify_endpoint(client):
    res = client.post("/verify", json={"ucc": "1^ 0", "fragment": "1^ 0", "theta": 0.4})
    out = res.json()
    assert out["ok"] is True and out["oracle_residual"] < 1e-12


def test_parse_error_mapping(client):
    res = client.post("/transform", json={"generator": "junk here extra",
                                          "hamiltonian": "1.0 X", "theta": 0.0})
    assert res.status_code == 422
    assert res.json()["kind"] == "parse"


def test_invariant_error_mapping(client):
    res = client.post("/transform", json={"generator": "1.0 ZZ\n0.5 XX",
                                          "hamiltonian": "1.0 XI", "theta": 0.0})
    assert res.status_code == 422
    assert res.json()["kind"] == "invariant"


def test_oracle_cap_mapping(client):
    res = client.post("/transform", json={
        "generator": "1.0 " + "Z" * 12, "hamiltonian": "1.0 " + "X" * 12,
        "theta": 0.1, "verify": True})
    assert res.status_code == 422
    assert res.json()["kind"] == "oracle_cap"


def test_transform_requires_exactly_one_generator(client):
    res = client.post("/transform", json={"theta": 0.1})
    assert res.status_code == 422
    res = client.post("/transform", json={"generator": "1.0 Z", "ucc": "1^ 0",
                                          "theta": 0.1})
    assert res.status_code == 422


def test_canonical_body_field_order(client):
    res = client.post("/coeffs", json={"S": [2.0, -2.0], "theta": 0.25})
    body = res.content.decode()
    assert body.startswith('{"schema":1,"theta":0.25,"S":[2.0,-2.0],"coefficients":')
    assert json.loads(body)["n_commutators"] == 1
