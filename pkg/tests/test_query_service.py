import random

import pytest

from provkit.criteria import CRITERIA
from provkit.errors import ValidationError
from provkit.knowledge_graph import TripleStore, asset_iri
from provkit.query_service import QueryService

from test_knowledge_graph import make_bundle, oracle_triples, random_bundle


@pytest.fixture
def populated(tmp_path):
    store = TripleStore(tmp_path / "kg.nt")
    bundle = make_bundle()
    store.store_bundle(bundle)
    return QueryService(store), store, bundle


def test_verification_by_url_round_trip(populated):
    service, _, bundle = populated
    record = service.verification_by_url("https://example.com/b1")
    assert record is not None
    assert record.asset_id == bundle.asset.asset_id
    # canonicalization applies to lookups too
    assert service.verification_by_url("HTTPS://EXAMPLE.COM/b1#frag") is not None


def test_verification_unknown_url_absent(populated):
    service, _, _ = populated
    assert service.verification_by_url("https://example.com/never") is None


def test_verification_malformed_url_rejected(populated):
    service, _, _ = populated
    with pytest.raises(ValidationError):
        service.verification_by_url("not a url")


def test_assets_by_topic_default_path(populated):
    service, _, bundle = populated
    rows = service.canned("assets_by_topic", {"topic": "uncategorized"})
    assert len(rows) == 1
    assert rows[0]["asset_id"] == bundle.asset.asset_id
    assert rows[0]["url"] == "https://example.com/b1"


def test_assets_by_publisher_exact_match(populated):
    service, store, bundle = populated
    rows = service.canned("assets_by_publisher", {"publisher": "Example News"})
    assert [r["asset_id"] for r in rows] == [bundle.asset.asset_id]
    assert service.canned("assets_by_publisher", {"publisher": "example news"}) == []


def test_caution_summary_matches_scan_oracle(tmp_path):
    store = TripleStore(tmp_path / "kg.nt")
    rng = random.Random(17)
    bundles = [random_bundle(rng, i) for i in range(12)]
    for b in bundles:
        store.store_bundle(b)
    expected = {c: 0 for c in CRITERIA}
    for b in bundles:
        for c in CRITERIA:
            expected[c] += b.results[c].status == "caution"
    rows = QueryService(store).canned("caution_summary", {})
    assert rows == [{"criterion": c, "caution_count": expected[c]} for c in CRITERIA]


def test_unknown_canned_query_rejected(populated):
    service, _, _ = populated
    with pytest.raises(ValidationError):
        service.canned("all_the_things", {})


def test_missing_param_rejected(populated):
    service, _, _ = populated
    with pytest.raises(ValidationError):
        service.canned("assets_by_topic", {})


def test_raw_wildcard_returns_all(populated):
    service, store, _ = populated
    rows = service.raw({}, limit=10_000)
    assert len(rows) == len(store)


def test_raw_subject_pattern_matches_mapping(populated):
    service, _, bundle = populated
    a = asset_iri(bundle.asset.asset_id)
    rows = service.raw({"s": a}, limit=10_000)
    expected = {t for t in oracle_triples(bundle) if t[0] == a}
    assert len(rows) == len(expected)
    assert all(r["s"] == a for r in rows)


def test_raw_status_pattern_counts_cautions(tmp_path):
    store = TripleStore(tmp_path / "kg.nt")
    rng = random.Random(19)
    bundles = [random_bundle(rng, i) for i in range(8)]
    for b in bundles:
        store.store_bundle(b)
    expected = sum(r.status == "caution" for b in bundles for r in b.results.values())
    rows = QueryService(store).raw({"p": "prov-obs:hasStatus", "o": "caution"}, limit=10_000)
    assert len(rows) == expected


def test_raw_unknown_field_rejected(populated):
    service, _, _ = populated
    with pytest.raises(ValidationError):
        service.raw({"subject": "x"})


def test_raw_limit_applied(populated):
    service, _, _ = populated
    assert len(service.raw({}, limit=5)) == 5


def test_queries_are_read_only(populated):
    service, store, _ = populated
    before = len(store)
    service.canned("caution_summary", {})
    service.canned("assets_by_topic", {"topic": "uncategorized"})
    service.raw({})
    service.verification_by_url("https://example.com/b1")
    assert len(store) == before
