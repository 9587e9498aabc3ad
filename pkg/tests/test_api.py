import pytest
from fastapi.testclient import TestClient

from api.main import app
from services.verification_runs import verification_run_service


@pytest.fixture
def client():
    return TestClient(app)


def test_root(client):
    body = client.get("/").json()
    assert body["service"] == "bounded-orbit-lab"
    assert body["precision"] >= 64


def test_evaluate_exact(client):
    response = client.post("/api/v1/maps/evaluate", json={"map": "f", "point": ["0", "-3/4"]})
    assert response.status_code == 200
    body = response.json()
    assert body["image"] == ["0", "-1/2"]
    assert body["diagnostics"]["region"] == "R_MINUS_2"


def test_evaluate_plane_map(client):
    response = client.post("/api/v1/maps/evaluate", json={"map": "h", "point": ["5", "0"], "precision": 64})
    assert response.json()["image"] == ["-5", "0"]


def test_evaluate_rejects_bad_input(client):
    assert client.post("/api/v1/maps/evaluate", json={"map": "f", "point": ["0.1", "0"]}).status_code == 422
    assert client.post("/api/v1/maps/evaluate", json={"map": "f", "point": ["2", "0"]}).status_code == 422
    assert client.post("/api/v1/maps/evaluate", json={"map": "nope", "point": ["0", "0"]}).status_code == 422


def test_orbit(client):
    response = client.post("/api/v1/orbits", json={"map": "f", "seed": ["0", "0"], "steps": "-1..2"})
    assert response.status_code == 200
    body = response.json()
    assert [p["y"] for p in body["points"]] == ["-1/2", "0", "1/2", "3/4"]
    assert body["metadata"]["phi_index"] == 1


def test_orbit_escape_is_unprocessable(client):
    response = client.post("/api/v1/orbits", json={"map": "eta", "seed": ["0", "1/4"], "steps": "-1..0"})
    assert response.status_code == 422
    assert "step -1" in response.json()["detail"]


def test_run_verification(client):
    payload = {
        "suite": "core",
        "sampler_seed": 2,
        "precision": 64,
        "sizes": {"boundary_points": 20, "random_points": 20},
        "only": ["strip_tiling", "boundary_identity"],
    }
    response = client.post("/api/v1/verifications/run", json=payload)
    assert response.status_code == 200
    body = response.json()
    assert body["passed"] is True
    assert [c["name"] for c in body["certificates"]] == ["strip_tiling", "boundary_identity"]
    assert body["sizes"]["boundary_points"] == 20


def test_run_verification_unknown_suite(client):
    assert client.post("/api/v1/verifications/run", json={"suite": "nope"}).status_code == 422


def test_start_and_status(client, monkeypatch):
    async def start(suites, sampler_seed, precision, sizes):
        return {"workflow_id": f"verify-{'-'.join(suites)}-abc", "run_id": "run-1"}

    async def status(workflow_id):
        return {
            "workflow_id": workflow_id,
            "status": "RUNNING",
            "start_time": None,
            "close_time": None,
            "progress": {"suites": ["core"], "completed": []},
            "report": None,
        }

    monkeypatch.setattr(verification_run_service, "start", start)
    monkeypatch.setattr(verification_run_service, "status", status)

    started = client.post("/api/v1/verifications/start", json={"suites": ["core"]})
    assert started.status_code == 200
    assert started.json()["workflow_id"] == "verify-core-abc"

    body = client.get("/api/v1/verifications/verify-core-abc").json()
    assert body["status"] == "RUNNING"
    assert body["progress"]["completed"] == []


def test_start_failure_is_server_error(client, monkeypatch):
    async def start(*args):
        raise RuntimeError("temporal unavailable")

    monkeypatch.setattr(verification_run_service, "start", start)
    response = client.post("/api/v1/verifications/start", json={"suites": ["xi"]})
    assert response.status_code == 500
    assert "temporal unavailable" in response.json()["detail"]
