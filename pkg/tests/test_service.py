import warnings

import pytest

from isochart.charts import Chart

with warnings.catch_warnings():
    warnings.simplefilter("ignore", DeprecationWarning)
    from fastapi.testclient import TestClient

from isochart.service import app


@pytest.fixture(scope="module")
def client():
    with TestClient(app) as c:
        yield c


def test_health(client):
    body = client.get("/health").json()
    assert body["status"] == "ok"


def test_ext_small_with_oracle(client):
    resp = client.post("/ext", json={"max_s": 3, "max_t": 8, "oracle": True})
    assert resp.status_code == 200
    body = resp.json()
    assert body["status"] == "ok"
    assert body["oracle_agrees"] is True
    chart = Chart.from_tsv(body["chart_tsv"])
    assert chart.dim((0, 0)) == 1
    assert chart.labels((1, 4)) == ("h2",)
    assert body["checkpoint"].startswith("ISOCHART-RES v1")


def test_ext_zero_window(client):
    body = client.post("/ext", json={"max_s": 0, "max_t": 0}).json()
    chart = Chart.from_tsv(body["chart_tsv"])
    assert chart.entries == {(0, 0): (1, ("g0_0_0",))}


def test_ext_resume_round_trip(client):
    first = client.post("/ext", json={"max_s": 4, "max_t": 6}).json()
    resumed = client.post(
        "/ext",
        json={"max_s": 4, "max_t": 10, "resume_checkpoint": first["checkpoint"]},
    ).json()
    direct = client.post("/ext", json={"max_s": 4, "max_t": 10}).json()
    assert resumed["chart_tsv"] == direct["chart_tsv"]
    assert resumed["checkpoint"] == direct["checkpoint"]


def test_ext_budget_exhaustion(client):
    body = client.post("/ext", json={"max_s": 4, "max_t": 9, "budget_cells": 9}).json()
    assert body["status"] == "budget_exhausted"
    assert body["frontier"]["t_done"] == 2


def test_ext_bad_checkpoint_is_400(client):
    resp = client.post(
        "/ext", json={"max_s": 3, "max_t": 5, "resume_checkpoint": "garbage"}
    )
    assert resp.status_code == 400


def test_ext_validation_error_is_422(client):
    assert client.post("/ext", json={"max_s": -1, "max_t": 3}).status_code == 422


def test_crho_vanishing(client):
    body = client.post("/crho", json={"max_s": 4, "max_t": 9}).json()
    assert body["vanishing"]["passed"] is True
    chart = Chart.from_tsv(body["chart_tsv"])
    assert chart.gradings == ("p", "q")
    assert chart.dim((0, 0)) == 1


def test_verify_presentations(client):
    body = client.post(
        "/verify/presentations", json={"window": 12, "samples": 50, "seed": 1}
    ).json()
    assert body["passed"] is True


def test_verify_smash(client):
    body = client.post("/verify/smash", json={"n": 3, "max_s": 4, "max_t": 9}).json()
    assert body["passed"] is True


def test_verify_bpbp(client):
    body = client.post("/verify/bpbp", json={"n_max": 2, "degree_bound": 6}).json()
    assert body["passed"] is True


def test_verify_fibers_bundled(client):
    body = client.post("/verify/fibers", json={"max_stem": 20, "max_s": 12}).json()
    assert body["passed"] is True
    names = [c["label"] for c in body["report"]["checks"]]
    assert len(names) == 3


def test_assemble_synthetic(client):
    chart = Chart(("s", "t"))
    chart.set((0, 16), 1, ["x"])
    chart.set((2, 17), 1, ["y"])
    body = client.post(
        "/assemble",
        json={
            "differentials": "2 x y\n",
            "e2_chart_tsv": chart.to_tsv(),
            "max_stem": 20,
        },
    ).json()
    assert body["passed"] is True
    towers = Chart.from_tsv(body["towers_tsv"])
    assert towers.keys() == [(32, 17, 1)]


def test_assemble_dangling_id_is_400(client):
    chart = Chart(("s", "t"))
    chart.set((0, 16), 1, ["x"])
    resp = client.post(
        "/assemble",
        json={"differentials": "2 x ghost\n", "e2_chart_tsv": chart.to_tsv()},
    )
    assert resp.status_code == 400
    assert "ghost" in resp.json()["detail"]


def test_assemble_malformed_record_is_400(client):
    resp = client.post("/assemble", json={"differentials": "2 only-two\n"})
    assert resp.status_code == 400
    assert "line 1" in resp.json()["detail"]


def test_bpbp_structure(client):
    body = client.post("/bpbp/structure", json={"degree_bound": 6}).json()
    assert body["degree_bound"] == 6
    assert "coproduct_t" in body
