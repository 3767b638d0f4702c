import json
from hashlib import sha256

import pytest

from provkit.errors import LedgerError
from provkit.ingestion import content_digest
from provkit.ledger import GENESIS_PREV_HASH, BlobStore, Ledger, compute_block_hash

from conftest import text_asset


@pytest.fixture
def ledger(tmp_path):
    return Ledger(tmp_path / "chain.ndjson", BlobStore(tmp_path / "blobs"))


class TestBlobStore:
    def test_path_is_pure_function_of_digest(self, tmp_path):
        store = BlobStore(tmp_path / "blobs")
        digest = sha256(b"payload").hexdigest()
        assert store.path_for(digest) == tmp_path / "blobs" / digest[:2] / digest

    def test_put_get_round_trip(self, tmp_path):
        store = BlobStore(tmp_path / "blobs")
        digest = store.put(b"media bytes")
        assert digest == sha256(b"media bytes").hexdigest()
        assert store.get(digest) == b"media bytes"
        assert store.get("0" * 64) is None


class TestFingerprint:
    def test_genesis_block(self, ledger):
        receipt = ledger.fingerprint(text_asset(body="First story."))
        assert receipt.block_index == 0
        assert ledger.blocks()[0].prev_hash == GENESIS_PREV_HASH

    def test_idempotent_on_identical_content(self, ledger):
        asset = text_asset(body="Same body.")
        first = ledger.fingerprint(asset)
        second = ledger.fingerprint(asset)
        assert first == second
        assert len(ledger) == 1

    def test_one_character_difference_changes_digest(self, ledger):
        a = text_asset(url="https://example.com/a", body="The budget is 40 million.")
        b = text_asset(url="https://example.com/b", body="The budget is 41 million.")
        assert content_digest(a) != content_digest(b)
        ra = ledger.fingerprint(a)
        rb = ledger.fingerprint(b)
        assert ra.content_digest != rb.content_digest
        assert rb.block_index == 1

    def test_chain_links_and_hashes(self, ledger):
        for i in range(5):
            ledger.fingerprint(text_asset(url=f"https://example.com/{i}", body=f"Body {i}."))
        blocks = ledger.blocks()
        for i, block in enumerate(blocks):
            assert block.index == i
            expected_prev = GENESIS_PREV_HASH if i == 0 else blocks[i - 1].block_hash
            assert block.prev_hash == expected_prev
            assert block.block_hash == compute_block_hash(
                block.index, block.prev_hash, block.asset_id, block.content_digest, block.timestamp
            )

    def test_media_blobs_written_to_store(self, ledger, tmp_path):
        asset = text_asset(body="With media.")
        payload = b"P2\n1 1\n255\n7\n"
        digest = sha256(payload).hexdigest()
        from provkit.ingestion import Fragment

        asset.fragments.append(Fragment("image-00", "image", blob_digest=digest))
        asset.blobs[digest] = payload
        ledger.fingerprint(asset)
        assert ledger.blobs.get(digest) == payload

    def test_digest_ignores_engagement_and_timestamps(self, ledger):
        a = text_asset(body="Stable content.")
        b = text_asset(body="Stable content.")
        b.engagement.likes = 999
        from datetime import datetime, timezone

        b.ingested_at = datetime(2030, 1, 1, tzinfo=timezone.utc)
        assert content_digest(a) == content_digest(b)


class TestLookup:
    def test_round_trip(self, ledger):
        asset = text_asset(body="Findable.")
        receipt = ledger.fingerprint(asset)
        assert ledger.lookup(receipt.content_digest) == receipt

    def test_unknown_digest_absent(self, ledger):
        assert ledger.lookup("ab" * 32) is None

    def test_double_registration_returns_single_receipt(self, ledger):
        asset = text_asset(body="Twice.")
        first = ledger.fingerprint(asset)
        ledger.fingerprint(asset)
        assert ledger.lookup(first.content_digest) == first


class TestVerifyChain:
    def test_empty_chain_ok(self, ledger):
        outcome = ledger.verify_chain()
        assert outcome.ok and outcome.first_bad_index is None

    def test_untouched_chain_ok(self, ledger):
        for i in range(10):
            ledger.fingerprint(text_asset(url=f"https://example.com/{i}", body=f"Body {i}."))
        assert ledger.verify_chain().ok

    def test_tampered_content_digest_detected(self, ledger, tmp_path):
        for i in range(10):
            ledger.fingerprint(text_asset(url=f"https://example.com/{i}", body=f"Body {i}."))
        chain_path = tmp_path / "chain.ndjson"
        lines = chain_path.read_text().splitlines()
        block = json.loads(lines[4])
        digest = list(block["content_digest"])
        digest[10] = "0" if digest[10] != "0" else "1"
        block["content_digest"] = "".join(digest)
        lines[4] = json.dumps(block)
        chain_path.write_text("\n".join(lines) + "\n")

        outcome = Ledger(chain_path, BlobStore(tmp_path / "blobs")).verify_chain()
        assert not outcome.ok
        assert outcome.first_bad_index == 4

    def test_reload_preserves_chain(self, ledger, tmp_path):
        receipts = [
            ledger.fingerprint(text_asset(url=f"https://example.com/{i}", body=f"Body {i}."))
            for i in range(3)
        ]
        reloaded = Ledger(tmp_path / "chain.ndjson", BlobStore(tmp_path / "blobs"))
        assert len(reloaded) == 3
        assert reloaded.lookup(receipts[1].content_digest) == receipts[1]
        assert reloaded.verify_chain().ok

    def test_corrupt_chain_file_raises_on_load(self, tmp_path):
        chain_path = tmp_path / "chain.ndjson"
        chain_path.write_text("not json at all\n")
        with pytest.raises(LedgerError):
            Ledger(chain_path, BlobStore(tmp_path / "blobs"))

    def test_append_only_dense_indices(self, ledger):
        for i in range(6):
            ledger.fingerprint(text_asset(url=f"https://example.com/{i}", body=f"Body {i}."))
        indices = [b.index for b in ledger.blocks()]
        assert indices == list(range(6))
