"""Tamper-evident registration of asset content.

Two halves: a content-addressed blob store for media payloads and an
append-only SHA-256 hash chain holding only digests, so no personal data
ever lands on the chain. Each block commits to its predecessor;
verify_chain recomputes everything and reports the first bad block.
"""

from __future__ import annotations

import json
import threading
from dataclasses import dataclass
from datetime import datetime, timezone
from hashlib import sha256
from pathlib import Path

from .errors import LedgerError
from .ingestion import Asset, content_digest

GENESIS_PREV_HASH = "0" * 64


class BlobStore:
    """Content-addressed files under ``blobs/<first2hex>/<digest>``."""

    def __init__(self, root: str | Path) -> None:
        self.root = Path(root)
        self.root.mkdir(parents=True, exist_ok=True)

    def path_for(self, digest: str) -> Path:
        return self.root / digest[:2] / digest

    def put(self, data: bytes) -> str:
        digest = sha256(data).hexdigest()
        path = self.path_for(digest)
        if not path.exists():
            try:
                path.parent.mkdir(parents=True, exist_ok=True)
                path.write_bytes(data)
            except OSError as exc:
                raise LedgerError(f"blob write failed for {digest}: {exc}") from exc
        return digest

    def put_with_digest(self, digest: str, data: bytes) -> None:
        """Store pre-digested payloads (video manifests hash to their own
        digest by construction; everything else must round-trip sha256)."""
        path = self.path_for(digest)
        if path.exists():
            return
        try:
            path.parent.mkdir(parents=True, exist_ok=True)
            path.write_bytes(data)
        except OSError as exc:
            raise LedgerError(f"blob write failed for {digest}: {exc}") from exc

    def get(self, digest: str) -> bytes | None:
        path = self.path_for(digest)
        return path.read_bytes() if path.exists() else None

    def exists(self, digest: str) -> bool:
        return self.path_for(digest).exists()


@dataclass
class LedgerBlock:
    index: int
    prev_hash: str
    asset_id: str
    content_digest: str
    timestamp: str  # ISO-8601 UTC
    block_hash: str

    def to_dict(self) -> dict:
        return {
            "index": self.index,
            "prev_hash": self.prev_hash,
            "asset_id": self.asset_id,
            "content_digest": self.content_digest,
            "timestamp": self.timestamp,
            "block_hash": self.block_hash,
        }


@dataclass
class LedgerReceipt:
    asset_id: str
    block_index: int
    block_hash: str
    content_digest: str

    def to_dict(self) -> dict:
        return {
            "asset_id": self.asset_id,
            "block_index": self.block_index,
            "block_hash": self.block_hash,
            "content_digest": self.content_digest,
        }


@dataclass
class VerificationOutcome:
    ok: bool
    first_bad_index: int | None = None


def compute_block_hash(
    index: int, prev_hash: str, asset_id: str, content_digest_hex: str, timestamp: str
) -> str:
    payload = f"{index}|{prev_hash}|{asset_id}|{content_digest_hex}|{timestamp}"
    return sha256(payload.encode("utf-8")).hexdigest()


class Ledger:
    """Hash chain persisted as newline-delimited JSON, one block per line.

    Appends are serialized; fingerprinting identical content is
    idempotent and returns the original receipt.
    """

    def __init__(self, chain_path: str | Path, blob_store: BlobStore) -> None:
        self.chain_path = Path(chain_path)
        self.blobs = blob_store
        self._lock = threading.Lock()
        self._blocks: list[LedgerBlock] = []
        self._by_digest: dict[str, LedgerReceipt] = {}
        if self.chain_path.exists():
            self._load()

    def __len__(self) -> int:
        return len(self._blocks)

    def _load(self) -> None:
        try:
            lines = self.chain_path.read_text(encoding="utf-8").splitlines()
        except OSError as exc:
            raise LedgerError(f"cannot read chain file {self.chain_path}: {exc}") from exc
        for lineno, line in enumerate(lines, 1):
            if not line.strip():
                continue
            try:
                d = json.loads(line)
                block = LedgerBlock(
                    index=d["index"],
                    prev_hash=d["prev_hash"],
                    asset_id=d["asset_id"],
                    content_digest=d["content_digest"],
                    timestamp=d["timestamp"],
                    block_hash=d["block_hash"],
                )
            except (json.JSONDecodeError, KeyError, TypeError) as exc:
                raise LedgerError(f"corrupt chain file {self.chain_path}:{lineno}: {exc}") from exc
            self._blocks.append(block)
            self._by_digest.setdefault(
                block.content_digest,
                LedgerReceipt(block.asset_id, block.index, block.block_hash, block.content_digest),
            )

    def fingerprint(self, asset: Asset) -> LedgerReceipt:
        """Store media blobs, append one block for the asset's canonical
        digest, and return the receipt. Identical content returns the
        original receipt without appending."""
        digest = content_digest(asset)
        with self._lock:
            existing = self._by_digest.get(digest)
            if existing is not None:
                return existing
            for blob_digest, data in asset.blobs.items():
                self.blobs.put_with_digest(blob_digest, data)
            index = len(self._blocks)
            prev_hash = self._blocks[-1].block_hash if self._blocks else GENESIS_PREV_HASH
            timestamp = datetime.now(timezone.utc).isoformat()
            block = LedgerBlock(
                index=index,
                prev_hash=prev_hash,
                asset_id=asset.asset_id,
                content_digest=digest,
                timestamp=timestamp,
                block_hash=compute_block_hash(index, prev_hash, asset.asset_id, digest, timestamp),
            )
            self._append(block)
            receipt = LedgerReceipt(asset.asset_id, block.index, block.block_hash, digest)
            self._by_digest[digest] = receipt
            return receipt

    def _append(self, block: LedgerBlock) -> None:
        try:
            with open(self.chain_path, "a", encoding="utf-8") as fh:
                fh.write(json.dumps(block.to_dict()) + "\n")
                fh.flush()
        except OSError as exc:
            raise LedgerError(f"chain append failed: {exc}") from exc
        self._blocks.append(block)

    def lookup(self, digest: str) -> LedgerReceipt | None:
        return self._by_digest.get(digest)

    def blocks(self) -> list[LedgerBlock]:
        return list(self._blocks)

    def verify_chain(self) -> VerificationOutcome:
        """Recompute every block hash and link from the chain file."""
        if not self.chain_path.exists():
            return VerificationOutcome(ok=True)
        try:
            lines = [l for l in self.chain_path.read_text(encoding="utf-8").splitlines() if l.strip()]
        except OSError as exc:
            raise LedgerError(f"cannot read chain file {self.chain_path}: {exc}") from exc
        prev_hash = GENESIS_PREV_HASH
        for position, line in enumerate(lines):
            try:
                d = json.loads(line)
                index = d["index"]
                recomputed = compute_block_hash(
                    index, d["prev_hash"], d["asset_id"], d["content_digest"], d["timestamp"]
                )
                if (
                    index != position
                    or d["prev_hash"] != prev_hash
                    or recomputed != d["block_hash"]
                ):
                    return VerificationOutcome(ok=False, first_bad_index=position)
                prev_hash = d["block_hash"]
            except (json.JSONDecodeError, KeyError, TypeError):
                return VerificationOutcome(ok=False, first_bad_index=position)
        return VerificationOutcome(ok=True)
