"""Basic API tests for Bell-FdB Lab."""

import json

import pytest
from fastapi.testclient import TestClient

from src.main import app


@pytest.fixture
def client():
    """Create test client."""
    return TestClient(app)


@pytest.fixture
def series_docs(fixtures_dir):
    def load(name):
        return json.loads((fixtures_dir / name).read_text())

    return load


def test_health_check(client):
    """Test health endpoint."""
    response = client.get("/health")
    assert response.status_code == 200
    data = response.json()
    assert data["status"] == "healthy"
    assert "version" in data
    assert "bell_cache_entries" in data


def test_root_endpoint(client):
    """Test root endpoint."""
    response = client.get("/")
    assert response.status_code == 200
    assert "message" in response.json()


def test_partial_bell_polynomial(client):
    """B_{4,2} with its terms."""
    response = client.get("/api/bell", params={"n": "4", "k": "2"})
    assert response.status_code == 200
    data = response.json()
    assert data["text"] == "4*x[3]*x[1] + 3*x[2]^2"
    assert data["k"] == [2]
    assert {t["coeff"] for t in data["terms"]} == {"4", "3"}


def test_complete_bell_polynomial(client):
    """Omitting k gives the complete polynomial."""
    response = client.get("/api/bell", params={"n": "1,1"})
    assert response.status_code == 200
    data = response.json()
    assert data["k"] is None
    assert data["text"] == "x[1,1] + x[1,0]*x[0,1]"


def test_bell_rejects_bad_index(client):
    """Malformed multi-indices are 422."""
    response = client.get("/api/bell", params={"n": "1,-1", "k": "1"})
    assert response.status_code == 422
    assert "detail" in response.json()


@pytest.mark.parametrize("n", ["²", "1,①"])
def test_bell_rejects_non_ascii_digits(n):
    """Unicode digits are rejected as 422, not a server error."""
    client = TestClient(app, raise_server_exceptions=False)
    response = client.get("/api/bell", params={"n": n, "k": "1"})
    assert response.status_code == 422
    assert "Not a multi-index" in response.json()["detail"]


def test_bell_d2_mismatch(client):
    """d2 has to agree with k."""
    response = client.get("/api/bell", params={"n": "2", "k": "1", "d2": "2"})
    assert response.status_code == 422


def test_bell_table(client, fixtures_dir):
    """The table endpoint returns the golden text."""
    response = client.get("/api/bell/table", params={"max_n": 4})
    assert response.status_code == 200
    assert response.json()["text"] == (fixtures_dir / "golden" / "bell_table_4.txt").read_text()


def test_compose_single(client, series_docs):
    """One derivative of the 1-D fixtures."""
    response = client.post(
        "/api/compose",
        json={"f": series_docs("f_1d.json"), "g": series_docs("g_1d.json"), "n": [3]},
    )
    assert response.status_code == 200
    assert response.json() == {"n": [3], "v": ["-31/8"]}


def test_compose_all(client, series_docs):
    """Every derivative up to order 2."""
    response = client.post(
        "/api/compose",
        json={"f": series_docs("f_2d.json"), "g": series_docs("g_2d.json"), "all": 2},
    )
    assert response.status_code == 200
    data = response.json()
    assert data["order"] == 2
    assert len(data["values"]) == 6
    assert {"n": [1, 1], "v": ["17/4"]} in data["values"]


def test_compose_needs_one_target(client, series_docs):
    """Both n and all, or neither, is a validation error."""
    body = {"f": series_docs("f_1d.json"), "g": series_docs("g_1d.json")}
    assert client.post("/api/compose", json=body).status_code == 422
    assert client.post("/api/compose", json={**body, "n": [1], "all": 1}).status_code == 422


def test_compose_center_mismatch(client, series_docs):
    """Contract errors surface as 422 with the message."""
    response = client.post(
        "/api/compose",
        json={"f": series_docs("g_1d.json"), "g": series_docs("g_1d.json"), "n": [1]},
    )
    assert response.status_code == 422
    assert "expanded at the inner value" in response.json()["detail"]


def test_verify(client):
    """A short genfun run passes."""
    response = client.post("/api/verify", json={"suite": "genfun", "seed": 3, "trials": 2})
    assert response.status_code == 200
    data = response.json()
    assert data["failures"] == 0
    assert data["checks"] == 6


def test_verify_rejects_unknown_suite(client):
    """Suite names are validated."""
    response = client.post("/api/verify", json={"suite": "all", "trials": 1})
    assert response.status_code == 422
