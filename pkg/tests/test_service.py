"""HTTP endpoints: payload shapes, validation failures, determinism."""

import pytest
from fastapi.testclient import TestClient

from captune.model import demo_surface, surface_to_dict
from captune.service import create_app


@pytest.fixture(scope="module")
def client():
    return TestClient(create_app())


def small_scenario(**overrides):
    doc = {
        "surface": "intruder-lock",
        "caps": [50.0],
        "controller": {"total_steps": 60, "period_steps": 40, "window_w": 8},
        "seed": 3,
        "techniques": ["basic", "baseline"],
        "start": {"p": 11, "t": 1},
    }
    doc.update(overrides)
    return doc


BIMODAL_DOC = {
    "capabilities": {"p_tot": 1, "t_tot": 5, "freq_table": [2.0]},
    "throughput_table": [[10.0, 20.0, 15.0, 25.0, 12.0]],
    "power_table": [[10.0, 11.0, 12.0, 13.0, 14.0]],
}


class TestBasics:
    def test_healthz(self, client):
        assert client.get("/healthz").json() == {"status": "ok"}

    def test_presets_listed(self, client):
        names = client.get("/presets").json()["presets"]
        assert "genome-tx" in names
        assert len(names) == 8


class TestValidate:
    def test_preset_passes(self, client):
        resp = client.post("/validate", json={"surface": "ssca2-tx"})
        assert resp.status_code == 200
        body = resp.json()
        assert body["all_hold"] is True
        assert body["counterexamples"] == []

    def test_inline_surface(self, client):
        resp = client.post(
            "/validate", json={"surface": surface_to_dict(demo_surface())}
        )
        assert resp.json()["all_hold"] is True

    def test_bimodal_tables_fail_h1(self, client):
        resp = client.post("/validate", json={"surface": BIMODAL_DOC})
        body = resp.json()
        assert body["h1_unimodal"] is False
        assert body["counterexamples"]

    def test_unknown_preset_is_422(self, client):
        resp = client.post("/validate", json={"surface": "nope"})
        assert resp.status_code == 422

    def test_extra_request_field_rejected(self, client):
        resp = client.post("/validate", json={"surface": "ssca2-tx", "bogus": 1})
        assert resp.status_code == 422


class TestOracle:
    def test_found(self, client):
        resp = client.post(
            "/oracle", json={"surface": "genome-tx", "cap_watts": 10000.0}
        )
        body = resp.json()
        assert body["found"] is True
        assert body["config"] == {"p": 0, "t": 20}
        assert body["throughput"] > 0

    def test_not_found(self, client):
        resp = client.post("/oracle", json={"surface": "genome-tx", "cap_watts": 0.001})
        body = resp.json()
        assert body["found"] is False
        assert body["config"] is None

    def test_stable_across_calls(self, client):
        payload = {"surface": "intruder-tx", "cap_watts": 60.0}
        assert (
            client.post("/oracle", json=payload).json()
            == client.post("/oracle", json=payload).json()
        )


class TestRun:
    def test_payload_shape(self, client):
        resp = client.post(
            "/run", json={"scenario": small_scenario(), "scenario_id": "demo"}
        )
        assert resp.status_code == 200
        body = resp.json()
        assert body["scenario"] == "demo"
        assert len(body["reports"]) == 1
        assert {run["technique"] for run in body["runs"]} == {"basic", "baseline"}
        run0 = body["runs"][0]
        assert run0["header"][0] == "step"
        assert len(run0["rows"]) == 60
        assert body["summary_header"][0] == "scenario"
        assert len(body["summary_rows"]) == 2

    def test_deterministic(self, client):
        req = {"scenario": small_scenario(), "scenario_id": "demo"}
        assert client.post("/run", json=req).json() == client.post("/run", json=req).json()

    def test_invalid_scenario_is_422(self, client):
        resp = client.post("/run", json={"scenario": small_scenario(caps="high")})
        assert resp.status_code == 422

    def test_unknown_scenario_key_is_422(self, client):
        resp = client.post("/run", json={"scenario": small_scenario(typo=1)})
        assert resp.status_code == 422


class TestSweep:
    def test_cap_sweep_points(self, client):
        resp = client.post(
            "/sweep",
            json={
                "scenario": small_scenario(),
                "parameter": "cap",
                "values": [50.0, 60.0, 70.0],
                "scenario_id": "s",
            },
        )
        assert resp.status_code == 200
        body = resp.json()
        assert [p["value"] for p in body["points"]] == [50.0, 60.0, 70.0]
        # two techniques x three points
        assert len(body["summary_rows"]) == 6
        for point in body["points"]:
            assert len(point["payload"]["reports"]) == 1

    def test_sigma_sweep_changes_surface(self, client):
        resp = client.post(
            "/sweep",
            json={
                "scenario": small_scenario(techniques=["basic"]),
                "parameter": "sigma",
                "values": [0.05, 1.2],
            },
        )
        body = resp.json()
        thr = [p["payload"]["reports"][0]["techniques"]["basic"]["mean_throughput"]
               for p in body["points"]]
        assert thr[0] != thr[1]

    def test_empty_values_rejected(self, client):
        resp = client.post(
            "/sweep",
            json={"scenario": small_scenario(), "parameter": "cap", "values": []},
        )
        assert resp.status_code == 422

    def test_bad_parameter_rejected(self, client):
        resp = client.post(
            "/sweep",
            json={"scenario": small_scenario(), "parameter": "gamma", "values": [1.0]},
        )
        assert resp.status_code == 422

    def test_tabular_surface_cannot_sweep_sigma(self, client):
        resp = client.post(
            "/sweep",
            json={
                "scenario": small_scenario(surface=BIMODAL_DOC, start={"p": 0, "t": 1}),
                "parameter": "sigma",
                "values": [0.1],
            },
        )
        assert resp.status_code == 422
