"""HTTP endpoint tests"""
import pytest
from fastapi.testclient import TestClient


@pytest.fixture
def client():
    from app.main import app
    return TestClient(app)


def section(payload, name):
    return next(s for s in payload["sections"] if s["name"] == name)


def test_root_endpoint(client):
    """Test root endpoint returns info"""
    response = client.get("/")
    assert response.status_code == 200
    data = response.json()
    assert "message" in data
    assert "version" in data
    assert data["fixtures"] == ["hald-augmented", "hald-renamed", "sim-xd"]


def test_health_endpoint(client):
    response = client.get("/health")
    assert response.status_code == 200
    assert response.json()["status"] == "ok"


def test_request_id_is_echoed(client):
    response = client.get("/health", headers={"X-Request-ID": "abc-123"})
    assert response.headers["X-Request-ID"] == "abc-123"


def test_docs_available(client):
    assert client.get("/docs").status_code == 200


def test_metrics_endpoint(client):
    client.post("/api/v1/fit", json={"fixture": "hald-renamed"})
    response = client.get("/metrics/")
    assert response.status_code == 200
    assert b"collinear_fits_total" in response.content


class TestAnalysisRoutes:

    def test_fit_fixture(self, client):
        response = client.post("/api/v1/fit", json={"fixture": "hald-renamed"})
        assert response.status_code == 200
        summary = section(response.json(), "summary")["values"]
        assert summary["r2"] == pytest.approx(0.9824, abs=1e-4)

    def test_fit_inline_rows(self, client):
        body = {"columns": ["y", "x"], "rows": [[3, 1], [5, 2], [7, 3], [9.5, 4]]}
        response = client.post("/api/v1/fit", json=body)
        assert response.status_code == 200
        assert response.json()["source"] == "inline"

    def test_groups(self, client):
        response = client.post("/api/v1/groups", json={"fixture": "hald-augmented", "threshold": 0.8})
        groups = section(response.json(), "groups")
        assert len(groups["rows"]) == 3

    def test_select_backward(self, client):
        body = {"fixture": "hald-renamed", "method": "backward", "grouped": False}
        response = client.post("/api/v1/select", json=body)
        assert section(response.json(), "chosen")["values"]["columns"] == "{x1, x3}"

    def test_effects_preset(self, client):
        response = client.post("/api/v1/effects", json={"fixture": "hald-renamed"})
        assert response.status_code == 200
        assert len(section(response.json(), "effects")["rows"]) == 8

    def test_effects_inline_spec(self, client):
        body = {"fixture": "hald-renamed", "effects": [{"label": "a", "group": ["x3", "x4"], "weights": "avg"}]}
        rows = section(client.post("/api/v1/effects", json=body).json(), "effects")["rows"]
        assert rows[0][0] == "a"

    def test_predict_points(self, client):
        body = {"fixture": "hald-renamed", "points": [{"label": "m", "values": [7.46153, -11.76923, 48.15385, -30.0]}]}
        response = client.post("/api/v1/predict", json=body)
        rows = section(response.json(), "predictions")["rows"]
        assert rows[0][1] == pytest.approx(95.42308, abs=1e-4)


class TestErrors:
    """Toolkit exceptions map to HTTP statuses"""

    def test_singular_design_is_conflict(self, client):
        body = {"columns": ["y", "a", "b"], "rows": [[1, 1, 2], [2, 2, 4], [2, 3, 6], [4, 4, 8]]}
        response = client.post("/api/v1/fit", json=body)
        assert response.status_code == 409
        assert response.json()["error"] == "SingularDesign"
        assert response.json()["exit_code"] == 3

    def test_unknown_fixture_is_bad_request(self, client):
        response = client.post("/api/v1/fit", json={"fixture": "nope"})
        assert response.status_code == 400

    def test_effects_without_spec(self, client):
        body = {"columns": ["y", "a", "b"], "rows": [[1, 2, 3], [2, 3, 1], [4, 1, 5], [3, 5, 2]]}
        response = client.post("/api/v1/effects", json=body)
        assert response.status_code == 422
        assert response.json()["exit_code"] == 4

    def test_both_sources_rejected(self, client):
        body = {"fixture": "hald-renamed", "columns": ["y", "x"], "rows": [[1, 2]]}
        assert client.post("/api/v1/fit", json=body).status_code == 422
