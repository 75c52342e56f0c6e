from __future__ import annotations

import pytest
from fastapi.testclient import TestClient

from topicminer.curate import CurationSession
from topicminer.service import create_app

from conftest import DEMO_BLOCKS, DEMO_MERGES, TOP10_STEMS, load_demo_fixture


@pytest.fixture
def client(tmp_path):
    window = load_demo_fixture()
    session = CurationSession.open(window, tmp_path / "journal.jsonl", target_k=10)
    return TestClient(create_app(session))


def drive_demo(client: TestClient) -> None:
    while True:
        rows = client.get("/api/candidates", params={"limit": 1}).json()
        if not rows or client.get("/api/session").json()["complete"]:
            break
        phrase = rows[0]["phrase"]
        if phrase in DEMO_BLOCKS:
            body = {"phrase": phrase, "action": "block"}
        elif phrase in DEMO_MERGES:
            body = {"phrase": phrase, "action": "merge", "target": DEMO_MERGES[phrase]}
        else:
            body = {"phrase": phrase, "action": "accept"}
        assert client.post("/api/decisions", json=body).status_code == 200


def test_fresh_session_summary(client):
    body = client.get("/api/session").json()
    assert body["accepted"] == []
    assert body["complete"] is False
    assert body["decisions_count"] == 0
    assert body["target_k"] == 10
    assert body["window_size"] == 26


def test_candidates_rank_order_and_limit(client):
    rows = client.get("/api/candidates", params={"limit": 1}).json()
    assert [r["phrase"] for r in rows] == ["support vector machin"]
    assert rows[0]["display_form"] == "support vector machine"
    assert rows[0]["decided"] is False
    assert client.get("/api/candidates", params={"limit": 0}).json() == []


def test_candidates_skip_decided(client):
    client.post("/api/decisions", json={"phrase": "support vector machin", "action": "block"})
    rows = client.get("/api/candidates", params={"limit": 1}).json()
    assert rows[0]["phrase"] == "propos method"


def test_decision_accept_grows_accepted(client):
    res = client.post(
        "/api/decisions", json={"phrase": "support vector machin", "action": "accept"}
    )
    assert res.status_code == 200
    assert res.json()["accepted"] == ["support vector machin"]
    assert res.json()["decisions_count"] == 1


def test_decision_conflict_409(client):
    body = {"phrase": "support vector machin", "action": "accept"}
    client.post("/api/decisions", json=body)
    res = client.post("/api/decisions", json=body)
    assert res.status_code == 409
    assert res.json()["code"] == "conflict"


def test_merge_into_non_accepted_422(client):
    res = client.post(
        "/api/decisions",
        json={"phrase": "train data", "action": "merge", "target": "data set"},
    )
    assert res.status_code == 422
    assert res.json()["code"] == "invalid"


def test_unknown_phrase_404(client):
    res = client.post("/api/decisions", json={"phrase": "zzz", "action": "accept"})
    assert res.status_code == 404
    assert res.json()["code"] == "not_found"


def test_bad_action_422(client):
    res = client.post("/api/decisions", json={"phrase": "data set", "action": "explode"})
    assert res.status_code == 422
    assert res.json()["code"] == "invalid"


def test_accept_when_complete_409(client):
    drive_demo(client)
    res = client.post(
        "/api/decisions", json={"phrase": "hidden markov model", "action": "accept"}
    )
    assert res.status_code == 409
    assert res.json()["code"] == "complete"


def test_undo_round_trip(client):
    client.post("/api/decisions", json={"phrase": "support vector machin", "action": "accept"})
    res = client.delete("/api/decisions/last")
    assert res.status_code == 200
    assert res.json()["accepted"] == []
    assert res.json()["decisions_count"] == 0


def test_undo_empty_log_404(client):
    res = client.delete("/api/decisions/last")
    assert res.status_code == 404
    assert res.json()["code"] == "not_found"


def test_undo_keeps_earlier_decisions(client):
    client.post("/api/decisions", json={"phrase": "support vector machin", "action": "accept"})
    client.post("/api/decisions", json={"phrase": "propos method", "action": "block"})
    body = client.delete("/api/decisions/last").json()
    assert body["decisions_count"] == 1
    assert body["accepted"] == ["support vector machin"]


def test_export_fresh_session_window_head(client):
    body = client.get("/api/export/topics").json()
    assert body["complete"] is False
    assert body["topics"][0]["phrase"] == "support vector machin"
    assert body["plot"][0]["band"] == "top"


def test_export_after_demo_session(client):
    drive_demo(client)
    body = client.get("/api/export/topics").json()
    assert body["complete"] is True
    top = [row for row in body["plot"] if row["band"] == "top"]
    assert len(top) == 10
    assert [t["phrase"] for t in body["topics"][:10]] == TOP10_STEMS
    assert body["plot"][0]["display_form"] == "support vector machine"
    assert body["plot"][10]["rank"] == 11
    assert body["plot"][10]["band"] == "grey"


def test_session_complete_after_ten_accepts(client):
    drive_demo(client)
    body = client.get("/api/session").json()
    assert body["complete"] is True
    assert len(body["accepted"]) == 10


def test_responses_deterministic(client):
    first = client.get("/api/candidates").json()
    second = client.get("/api/candidates").json()
    assert first == second
