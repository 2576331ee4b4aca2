import numpy as np
import pytest
from fastapi.testclient import TestClient

from fracdelay.service import create_app
from fracdelay.synthesis import FgnSpec, generate_fgn


@pytest.fixture(scope="module")
def client():
    return TestClient(create_app())


@pytest.fixture(scope="module")
def fgn_payload():
    series = generate_fgn(FgnSpec(h=0.8, n=4096, seed=1))
    return {"values": series.values.tolist(), "dt": 1.0}


class TestHealth:
    def test_health(self, client):
        resp = client.get("/health")
        assert resp.status_code == 200
        assert resp.json()["status"] == "ok"


class TestStats:
    def test_happy_path(self, client):
        resp = client.post("/stats", json={"values": [1.0, 2.0, 3.0]})
        assert resp.status_code == 200
        body = resp.json()
        assert body["mean"] == pytest.approx(2.0)
        assert body["variance"] == pytest.approx(2.0 / 3.0)
        assert body["kurtosis_excess"] == body["kurtosis_raw"] - 3.0

    def test_degenerate_maps_to_422(self, client):
        resp = client.post("/stats", json={"values": [5.0, 5.0, 5.0]})
        assert resp.status_code == 422
        assert resp.json()["error"] == "DegenerateSeries"

    def test_too_short_maps_to_422(self, client):
        resp = client.post("/stats", json={"values": [5.0]})
        assert resp.status_code == 422
        assert resp.json()["error"] == "SeriesTooShort"

    def test_non_finite_rejected(self, client):
        resp = client.post("/stats", json={"values": [1.0, float("nan")]})
        assert resp.status_code in (400, 422)


class TestHurst:
    def test_all_methods(self, client, fgn_payload):
        resp = client.post("/hurst", json=fgn_payload)
        assert resp.status_code == 200
        body = resp.json()
        assert [r["method"] for r in body["results"]] == [
            "absval", "aggvar", "boxper", "diffvar", "higuchi", "peng", "per", "rs",
        ]
        for r in body["results"]:
            assert r["ok"]
            est = r["estimate"]
            assert est["alpha"] == pytest.approx(2 * est["h"] - 1, abs=1e-15)
            assert est["fractal_dim"] == pytest.approx(2 - est["h"], abs=1e-15)
        assert "Estimator" in body["report"]

    def test_single_method(self, client, fgn_payload):
        resp = client.post("/hurst", json={**fgn_payload, "methods": ["rs"]})
        assert resp.status_code == 200
        results = resp.json()["results"]
        assert len(results) == 1
        assert results[0]["method"] == "rs"

    def test_unknown_method(self, client, fgn_payload):
        resp = client.post("/hurst", json={**fgn_payload, "methods": ["wavelet"]})
        assert resp.status_code == 422

    def test_errors_carried_inline(self, client):
        resp = client.post("/hurst", json={"values": [1.0] * 1024})
        assert resp.status_code == 200
        assert all(not r["ok"] for r in resp.json()["results"])
        assert all(r["error"] == "DegenerateSeries" for r in resp.json()["results"])


class TestSynth:
    def test_deterministic(self, client):
        req = {"h": 0.8, "n": 512, "seed": 7}
        a = client.post("/synth", json=req).json()
        b = client.post("/synth", json=req).json()
        assert a["values"] == b["values"]

    def test_invalid_h(self, client):
        resp = client.post("/synth", json={"h": 1.2, "n": 128, "seed": 0})
        assert resp.status_code == 422
        assert resp.json()["error"] == "InvalidH"

    def test_delay_trace(self, client):
        resp = client.post(
            "/synth",
            json={
                "h": 0.88,
                "n": 256,
                "seed": 3,
                "delay": {"mu": 10.0, "sigma_d": 3.0, "tau_max": 50.0},
            },
        )
        vals = np.asarray(resp.json()["values"])
        assert np.all(vals >= 0.0)
        assert np.all(vals <= 50.0)


class TestPsd:
    def test_welch(self, client, fgn_payload):
        resp = client.post("/psd", json={**fgn_payload, "method": "welch"})
        body = resp.json()
        assert len(body["frequencies"]) == len(body["power"]) == 128

    def test_periodogram(self, client, fgn_payload):
        resp = client.post("/psd", json={**fgn_payload, "method": "periodogram"})
        assert len(resp.json()["frequencies"]) == 2048

    def test_unknown_method(self, client, fgn_payload):
        resp = client.post("/psd", json={**fgn_payload, "method": "multitaper"})
        assert resp.status_code == 422


class TestSmooth:
    def test_moving_average(self, client):
        resp = client.post(
            "/smooth",
            json={"values": [1, 2, 3, 4, 5], "method": "ma", "ma": {"window": 3}},
        )
        assert resp.json()["values"] == pytest.approx([1.5, 2, 3, 4, 4.5])

    def test_valid_only(self, client):
        resp = client.post(
            "/smooth",
            json={
                "values": list(range(10)),
                "method": "ma",
                "ma": {"window": 3},
                "valid_only": True,
            },
        )
        assert len(resp.json()["values"]) == 8

    def test_kernel(self, client):
        resp = client.post(
            "/smooth",
            json={"values": [1.0] * 32, "method": "kernel", "kernel": {"bandwidth": 2.0}},
        )
        assert resp.json()["values"] == pytest.approx([1.0] * 32)

    def test_window_too_large(self, client):
        resp = client.post(
            "/smooth", json={"values": [1.0, 2.0], "method": "ma", "ma": {"window": 11}}
        )
        assert resp.status_code == 422
        assert resp.json()["error"] == "WindowTooLarge"


class TestSimulate:
    def test_clean_transient(self, client):
        resp = client.post("/simulate", json={"t_end": 0.1, "dt": 1e-4})
        body = resp.json()
        assert body["p_measured"] is None
        assert len(body["t"]) == len(body["p_clean"]) == 1001
        assert body["p_clean"][0] == pytest.approx(1.0)

    def test_channel_with_explicit_delays(self, client):
        resp = client.post(
            "/simulate",
            json={
                "t_end": 1.0,
                "dt": 1e-3,
                "channel": {"tick": 0.1, "delays": [0.0] * 11},
            },
        )
        body = resp.json()
        assert body["p_measured"] == pytest.approx(body["p_clean"])

    def test_channel_with_spec_and_smoother(self, client):
        resp = client.post(
            "/simulate",
            json={
                "t_end": 1.0,
                "dt": 1e-3,
                "channel": {"tick": 0.01, "delay_spec": {"h": 0.88, "seed": 3}},
                "smoother": {"method": "kernel", "kernel": {"bandwidth": 4.0}},
            },
        )
        body = resp.json()
        assert body["p_smoothed"] is not None
        assert len(body["p_smoothed"]) == len(body["p_clean"])

    def test_channel_without_delays_rejected(self, client):
        resp = client.post(
            "/simulate", json={"t_end": 1.0, "dt": 1e-3, "channel": {"tick": 0.01}}
        )
        assert resp.status_code == 422

    def test_step_guard_maps_to_422(self, client):
        resp = client.post("/simulate", json={"t_end": 1.0, "dt": 0.1})
        assert resp.status_code == 422
        assert resp.json()["error"] == "StepTooLarge"


class TestBenchmark:
    def test_small_plan(self, client):
        resp = client.post(
            "/benchmark",
            json={
                "alphas": [0.3, 0.7],
                "seeds": 2,
                "kernel_bandwidths": [4.0],
                "scenario": {"t_end": 2.0, "dt": 5e-4},
            },
        )
        assert resp.status_code == 200
        body = resp.json()
        assert len(body["records"]) == 2 * 2 * 3  # (ma, savgol, kernel_bw4)
        assert len(body["aggregates"]) == 2 * 3
        assert body["findings"]

    def test_invalid_plan(self, client):
        resp = client.post("/benchmark", json={"alphas": [1.5]})
        assert resp.status_code == 422
