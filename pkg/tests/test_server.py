import numpy as np
import pytest
from fastapi.testclient import TestClient

from provkit.bootstrap import build_stack
from provkit.config import load_config
from provkit.pnm import write_pnm
from provkit.server import create_app

from conftest import make_image

ARTICLE_BODY = (
    "The city council approved the transit budget on Monday. "
    "The plan allocates 40 million euros to public transit. "
    "Construction of the new tram line begins in March. "
    "The project will add 12 kilometers of track. "
    "Officials said the work should finish within three years. "
    "The federal government covers half of the cost."
)


def feed_item_json(url="https://example.com/posted", **overrides) -> dict:
    item = {
        "url": url,
        "title": "Council approves transit budget",
        "body": ARTICLE_BODY,
        "publisher": "Example News",
        "published_at": "2026-01-04T09:30:00Z",
        "likes": 10,
        "shares": 5,
        "comments": 0,
    }
    item.update(overrides)
    return item


@pytest.fixture
def client(stack):
    return TestClient(create_app(stack))


def test_health(client):
    response = client.get("/api/v1/health")
    assert response.status_code == 200
    assert response.json() == {"status": "ok"}


class TestAssetRegistration:
    def test_post_creates_201_then_200(self, client):
        first = client.post("/api/v1/assets", json=feed_item_json())
        assert first.status_code == 201
        body = first.json()
        assert body["source"] == "trusted_analyst"
        assert any(f["kind"] == "body" for f in body["fragments"])

        second = client.post("/api/v1/assets", json=feed_item_json())
        assert second.status_code == 200
        assert second.json()["asset_id"] == body["asset_id"]

    def test_post_invalid_url_400(self, client):
        response = client.post("/api/v1/assets", json=feed_item_json(url="nope"))
        assert response.status_code == 400
        assert "error" in response.json()

    def test_post_unknown_field_400(self, client):
        response = client.post("/api/v1/assets", json=feed_item_json(surprise=1))
        assert response.status_code == 400

    def test_status_endpoint(self, client):
        asset_id = client.post("/api/v1/assets", json=feed_item_json()).json()["asset_id"]
        response = client.get(f"/api/v1/assets/{asset_id}/status")
        assert response.json()["status"] == "stored"
        assert client.get("/api/v1/assets/feedbeef/status").json()["status"] == "unknown"

    def test_api_token_enforced(self, tmp_path):
        config = load_config(env={})
        config._values["data_dir"] = str(tmp_path / "data")
        config._values["ingestion.api_token"] = "sekrit"
        guarded = TestClient(create_app(build_stack(config)))
        assert guarded.post("/api/v1/assets", json=feed_item_json()).status_code == 401
        ok = guarded.post(
            "/api/v1/assets", json=feed_item_json(), headers={"X-API-Token": "sekrit"}
        )
        assert ok.status_code == 201


class TestVerificationEndpoint:
    def test_200_with_seven_criteria(self, client):
        client.post("/api/v1/assets", json=feed_item_json())
        response = client.get("/api/v1/verification", params={"url": "https://example.com/posted"})
        assert response.status_code == 200
        payload = response.json()
        assert payload["schema_version"] == "1"
        assert "generated_at" in payload
        assert len(payload["record"]["results"]) == 7

    def test_unknown_url_404(self, client):
        response = client.get("/api/v1/verification", params={"url": "https://example.com/none"})
        assert response.status_code == 404

    def test_malformed_url_400(self, client):
        response = client.get("/api/v1/verification", params={"url": "not a url"})
        assert response.status_code == 400


class TestQueryEndpoints:
    def test_canned_and_raw(self, client):
        client.post("/api/v1/assets", json=feed_item_json())
        rows = client.get("/api/v1/query/assets_by_topic", params={"topic": "uncategorized"}).json()["rows"]
        assert len(rows) == 1

        summary = client.get("/api/v1/query/caution_summary").json()["rows"]
        assert len(summary) == 7

        triples = client.post("/api/v1/raw", json={"p": "prov-obs:hasStatus"}).json()["triples"]
        assert len(triples) == 7

    def test_unknown_query_400(self, client):
        assert client.get("/api/v1/query/everything").status_code == 400

    def test_missing_param_400(self, client):
        assert client.get("/api/v1/query/assets_by_topic").status_code == 400

    def test_bad_raw_pattern_400(self, client):
        assert client.post("/api/v1/raw", json={"spo": "x"}).status_code == 400


class TestPresentationEndpoint:
    def test_unknown_url_grey_badge(self, client):
        response = client.get(
            "/api/v1/presentation", params={"url": "https://example.com/none", "user": "u1"}
        )
        assert response.status_code == 200
        assert response.json()["presentation"]["badge"] == "grey_unknown"

    def test_analyzed_url_badge_and_icons(self, client):
        client.post("/api/v1/assets", json=feed_item_json())
        payload = client.get(
            "/api/v1/presentation", params={"url": "https://example.com/posted", "user": "u1"}
        ).json()
        pres = payload["presentation"]
        assert pres["badge"] in ("blue_ok", "red_caution")
        assert len(pres["icons"]) == 7
        assert all("detail_text" in icon for icon in pres["icons"].values())


class TestUserEndpoints:
    def test_get_returns_default(self, client):
        model = client.get("/api/v1/users/fresh").json()
        assert model["user_id"] == "fresh"
        assert model["digital_literacy"] == "intermediate"

    def test_patch_then_get(self, client):
        patch = {"warning_prefs": {"tone": {"enabled": False}}, "digital_literacy": "expert"}
        updated = client.patch("/api/v1/users/u2", json=patch).json()
        assert updated["digital_literacy"] == "expert"
        assert updated["warning_prefs"]["tone"]["enabled"] is False
        again = client.get("/api/v1/users/u2").json()
        assert again == updated

    def test_patch_disabling_criterion_mutes_presentation(self, client, stack):
        client.post("/api/v1/assets", json=feed_item_json())
        client.patch("/api/v1/users/u3", json={"warning_prefs": {"tone": {"enabled": False}}})
        pres = client.get(
            "/api/v1/presentation", params={"url": "https://example.com/posted", "user": "u3"}
        ).json()["presentation"]
        assert pres["icons"]["tone"]["state"] != "red_caution"

    def test_invalid_patch_400(self, client):
        response = client.patch(
            "/api/v1/users/u4", json={"warning_prefs": {"tone": {"sensitivity": "max"}}}
        )
        assert response.status_code == 400


def test_cors_header_present(client):
    response = client.get("/api/v1/health", headers={"Origin": "http://localhost:5173"})
    assert response.headers.get("access-control-allow-origin") == "*"


def test_internal_analyzer_endpoint(client, stack):
    from provkit.ingestion import asset_to_dict

    from conftest import text_asset

    asset = text_asset(body="Plenty of words " * 10)
    response = client.post("/internal/analyzers/tone", json=asset_to_dict(asset))
    assert response.status_code == 200
    (result,) = response.json()["results"]
    assert result["criterion"] == "tone"
    assert client.post("/internal/analyzers/nope", json=asset_to_dict(asset)).status_code == 404


def test_restart_round_trip(tmp_path):
    config = load_config(env={})
    config._values["data_dir"] = str(tmp_path / "data")
    stack = build_stack(config)
    with TestClient(create_app(stack)) as client:
        client.post("/api/v1/assets", json=feed_item_json())

    # a new stack over the same data_dir sees the same state
    stack2 = build_stack(config)
    assert stack2.ledger.verify_chain().ok
    record = stack2.queries.verification_by_url("https://example.com/posted")
    assert record is not None
    assert len(record.results) == 7
