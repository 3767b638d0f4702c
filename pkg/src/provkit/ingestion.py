"""Asset discovery and registration.

Two entry routes: the fixture-backed social monitor (newline-delimited
JSON feed standing in for a commercial monitoring API) and direct
registration by trusted analysts. Both converge on the registrar, which
canonicalizes the URL into a stable asset identity, splits the item into
typed fragments, attaches an engagement score, and hands the asset to
the workflow.
"""

from __future__ import annotations

import hashlib
import json
import logging
import math
import threading
from dataclasses import dataclass, field
from datetime import datetime, timezone
from pathlib import Path
from typing import Protocol
from urllib.parse import urlsplit, urlunsplit

from .errors import IngestionSourceError, ValidationError

logger = logging.getLogger(__name__)

SOURCE_MONITOR = "monitor"
SOURCE_TRUSTED_ANALYST = "trusted_analyst"
FRAGMENT_KINDS = ("title", "summary", "body", "image", "video")
TEXT_KINDS = ("title", "summary", "body")


def canonical_url(url: str) -> str:
    """Lowercase scheme/host, drop the fragment identifier, strip one
    trailing slash from the path."""
    if not isinstance(url, str) or not url.strip():
        raise ValidationError("url is empty")
    parts = urlsplit(url.strip())
    if not parts.scheme or not parts.netloc:
        raise ValidationError(f"url needs a scheme and host: {url!r}")
    path = parts.path[:-1] if parts.path.endswith("/") else parts.path
    return urlunsplit((parts.scheme.lower(), parts.netloc.lower(), path, parts.query, ""))


def asset_id_for_url(url: str) -> str:
    return hashlib.sha256(canonical_url(url).encode("utf-8")).hexdigest()


def engagement_score(likes: int, shares: int, comments: int) -> float:
    """ln(1 + likes + 2*shares + comments); shares are the stronger
    propagation signal and count double."""
    return math.log(1 + likes + 2 * shares + comments)


@dataclass
class RawFeedItem:
    url: str
    title: str = ""
    summary: str = ""
    body: str = ""
    image_refs: list[str] = field(default_factory=list)
    video_refs: list[str] = field(default_factory=list)
    publisher: str = ""
    published_at: datetime | None = None
    likes: int = 0
    shares: int = 0
    comments: int = 0
    # optional categorisation metadata used by the knowledge graph
    concept: str | None = None
    category: str | None = None
    topic: str | None = None

    def validate(self) -> None:
        canonical_url(self.url)
        for name in ("likes", "shares", "comments"):
            v = getattr(self, name)
            if not isinstance(v, int) or isinstance(v, bool) or v < 0:
                raise ValidationError(f"{name} must be a non-negative integer, got {v!r}")

    @classmethod
    def from_dict(cls, d: dict) -> "RawFeedItem":
        if not isinstance(d, dict):
            raise ValidationError("feed item must be a JSON object")
        known = {
            "url", "title", "summary", "body", "image_refs", "video_refs",
            "publisher", "published_at", "likes", "shares", "comments",
            "concept", "category", "topic",
        }
        unknown = set(d) - known
        if unknown:
            raise ValidationError(f"unknown feed item fields: {sorted(unknown)}")
        published = d.get("published_at")
        if isinstance(published, str):
            published = parse_timestamp(published)
        return cls(
            url=d.get("url", ""),
            title=d.get("title", ""),
            summary=d.get("summary", ""),
            body=d.get("body", ""),
            image_refs=list(d.get("image_refs", [])),
            video_refs=list(d.get("video_refs", [])),
            publisher=d.get("publisher", ""),
            published_at=published,
            likes=d.get("likes", 0),
            shares=d.get("shares", 0),
            comments=d.get("comments", 0),
            concept=d.get("concept"),
            category=d.get("category"),
            topic=d.get("topic"),
        )


def parse_timestamp(value: str) -> datetime:
    try:
        ts = datetime.fromisoformat(value.replace("Z", "+00:00"))
    except ValueError as exc:
        raise ValidationError(f"bad timestamp: {value!r}") from exc
    if ts.tzinfo is None:
        ts = ts.replace(tzinfo=timezone.utc)
    return ts.astimezone(timezone.utc)


@dataclass
class EngagementScore:
    likes: int = 0
    shares: int = 0
    comments: int = 0
    score: float = 0.0

    @classmethod
    def from_counts(cls, likes: int, shares: int, comments: int) -> "EngagementScore":
        return cls(likes, shares, comments, engagement_score(likes, shares, comments))


@dataclass
class Fragment:
    fragment_id: str
    kind: str
    text: str | None = None
    blob_digest: str | None = None

    def __post_init__(self) -> None:
        if self.kind not in FRAGMENT_KINDS:
            raise ValidationError(f"unknown fragment kind: {self.kind}")
        if self.kind in TEXT_KINDS and self.text is None:
            raise ValidationError(f"{self.kind} fragment needs a text payload")
        if self.kind not in TEXT_KINDS and self.blob_digest is None:
            raise ValidationError(f"{self.kind} fragment needs a blob reference")


@dataclass
class Asset:
    asset_id: str
    source: str
    fragments: list[Fragment]
    engagement: EngagementScore
    ingested_at: datetime
    url: str = ""
    publisher: str = ""
    published_at: datetime | None = None
    concept: str | None = None
    category: str | None = None
    topic: str | None = None
    # transient payload bytes for media fragments, keyed by digest
    blobs: dict[str, bytes] = field(default_factory=dict)

    def fragment(self, kind: str) -> Fragment | None:
        return next((f for f in self.fragments if f.kind == kind), None)

    def fragments_of(self, kind: str) -> list[Fragment]:
        return [f for f in self.fragments if f.kind == kind]

    def text_of(self, kind: str) -> str:
        frag = self.fragment(kind)
        return frag.text if frag and frag.text else ""


def asset_to_dict(asset: Asset) -> dict:
    """JSON wire form of an Asset; media payload bytes stay out of band
    (they are resolvable from the blob store by digest)."""
    return {
        "asset_id": asset.asset_id,
        "source": asset.source,
        "url": asset.url,
        "publisher": asset.publisher,
        "published_at": asset.published_at.isoformat() if asset.published_at else None,
        "ingested_at": asset.ingested_at.isoformat(),
        "concept": asset.concept,
        "category": asset.category,
        "topic": asset.topic,
        "engagement": {
            "likes": asset.engagement.likes,
            "shares": asset.engagement.shares,
            "comments": asset.engagement.comments,
            "score": asset.engagement.score,
        },
        "fragments": [
            {
                "fragment_id": f.fragment_id,
                "kind": f.kind,
                "text": f.text,
                "blob_digest": f.blob_digest,
            }
            for f in asset.fragments
        ],
    }


def asset_from_dict(d: dict) -> Asset:
    eng = d.get("engagement", {})
    return Asset(
        asset_id=d["asset_id"],
        source=d["source"],
        fragments=[
            Fragment(
                fragment_id=f["fragment_id"],
                kind=f["kind"],
                text=f.get("text"),
                blob_digest=f.get("blob_digest"),
            )
            for f in d.get("fragments", [])
        ],
        engagement=EngagementScore(
            likes=eng.get("likes", 0),
            shares=eng.get("shares", 0),
            comments=eng.get("comments", 0),
            score=eng.get("score", 0.0),
        ),
        ingested_at=parse_timestamp(d["ingested_at"]),
        url=d.get("url", ""),
        publisher=d.get("publisher", ""),
        published_at=parse_timestamp(d["published_at"]) if d.get("published_at") else None,
        concept=d.get("concept"),
        category=d.get("category"),
        topic=d.get("topic"),
    )


def content_digest(asset: Asset) -> str:
    """Digest of the canonical asset serialization.

    Covers fragments only (sorted by kind then fragment_id, text as
    UTF-8, media by payload digest), so engagement counts and timestamps
    do not change an asset's content identity.
    """
    parts = []
    for frag in sorted(asset.fragments, key=lambda f: (f.kind, f.fragment_id)):
        payload = frag.text if frag.text is not None else frag.blob_digest
        parts.append(f"{frag.kind}\x1f{frag.fragment_id}\x1f{payload}")
    return hashlib.sha256("\x1e".join(parts).encode("utf-8")).hexdigest()


@dataclass
class MonitorQuery:
    keywords: list[str] = field(default_factory=list)
    since: datetime = datetime.fromtimestamp(0, tz=timezone.utc)
    limit: int = 10


class MonitorClient:
    """Reads the newline-delimited JSON fixture feed (one RawFeedItem per
    line) that stands in for the live social monitoring API."""

    def __init__(self, fixture_path: str | Path) -> None:
        self.fixture_path = Path(fixture_path)

    def poll(self, query: MonitorQuery) -> list[RawFeedItem]:
        """At most `limit` keyword-matching items published at or after
        `since`, newest first. An empty keyword list matches everything."""
        if query.limit < 1:
            raise ValidationError("limit must be >= 1")
        items = self._load()
        keywords = [k.lower() for k in query.keywords]
        selected = []
        for item in items:
            if item.published_at is None or item.published_at < query.since:
                continue
            haystack = f"{item.title}\n{item.body}".lower()
            if keywords and not any(k in haystack for k in keywords):
                continue
            selected.append(item)
        selected.sort(key=lambda it: it.published_at, reverse=True)
        return selected[: query.limit]

    def _load(self) -> list[RawFeedItem]:
        try:
            lines = self.fixture_path.read_text(encoding="utf-8").splitlines()
        except OSError as exc:
            raise IngestionSourceError(f"cannot read feed fixture {self.fixture_path}: {exc}") from exc
        items = []
        for lineno, line in enumerate(lines, 1):
            if not line.strip():
                continue
            try:
                items.append(RawFeedItem.from_dict(json.loads(line)))
            except (json.JSONDecodeError, ValidationError) as exc:
                raise IngestionSourceError(
                    f"corrupt feed fixture {self.fixture_path}:{lineno}: {exc}"
                ) from exc
        return items


class WorkflowPort(Protocol):
    def submit(self, asset: Asset): ...


class Registrar:
    """Builds Assets from feed items and forwards them to the workflow.

    Registration is idempotent: the same URL with unchanged content
    returns the previously built Asset without a second workflow
    submission. Dedup is atomic under concurrent calls.
    """

    def __init__(self, workflow: WorkflowPort, media_base_dir: str | Path | None = None) -> None:
        self.workflow = workflow
        self.media_base_dir = Path(media_base_dir) if media_base_dir else None
        self._known: dict[str, tuple[str, Asset]] = {}
        self._lock = threading.Lock()

    def register(
        self, item: RawFeedItem, source: str, media_base_dir: str | Path | None = None
    ) -> tuple[Asset, bool]:
        """Returns (asset, created). created=False means an idempotent hit."""
        if source not in (SOURCE_MONITOR, SOURCE_TRUSTED_ANALYST):
            raise ValidationError(f"unknown source: {source}")
        item.validate()
        base = Path(media_base_dir) if media_base_dir else self.media_base_dir
        asset = self._build_asset(item, source, base)
        digest = content_digest(asset)
        with self._lock:
            known = self._known.get(asset.asset_id)
            if known is not None and known[0] == digest:
                return known[1], False
            self._known[asset.asset_id] = (digest, asset)
        self.workflow.submit(asset)
        return asset, True

    def _build_asset(self, item: RawFeedItem, source: str, base: Path | None) -> Asset:
        asset_id = asset_id_for_url(item.url)
        fragments: list[Fragment] = []
        blobs: dict[str, bytes] = {}
        for kind in TEXT_KINDS:
            text = getattr(item, kind)
            if text:
                fragments.append(Fragment(fragment_id=kind, kind=kind, text=text))
        for i, ref in enumerate(item.image_refs):
            digest = self._load_image_blob(ref, base, blobs)
            if digest:
                fragments.append(Fragment(f"image-{i:02d}", "image", blob_digest=digest))
        for i, ref in enumerate(item.video_refs):
            digest = self._load_video_blob(ref, base, blobs)
            if digest:
                fragments.append(Fragment(f"video-{i:02d}", "video", blob_digest=digest))
        return Asset(
            asset_id=asset_id,
            source=source,
            fragments=fragments,
            engagement=EngagementScore.from_counts(item.likes, item.shares, item.comments),
            ingested_at=datetime.now(timezone.utc),
            url=canonical_url(item.url),
            publisher=item.publisher,
            published_at=item.published_at,
            concept=item.concept,
            category=item.category,
            topic=item.topic,
            blobs=blobs,
        )

    @staticmethod
    def _is_remote(ref: str) -> bool:
        return ref.startswith(("http://", "https://"))

    def _resolve(self, ref: str, base: Path | None) -> Path:
        path = Path(ref)
        if not path.is_absolute() and base is not None:
            path = base / path
        if not path.exists():
            raise ValidationError(f"media reference not found: {ref}")
        return path

    def _load_image_blob(self, ref: str, base: Path | None, blobs: dict[str, bytes]) -> str | None:
        if self._is_remote(ref):
            logger.warning("skipping remote media reference %s (live fetch out of scope)", ref)
            return None
        data = self._resolve(ref, base).read_bytes()
        digest = hashlib.sha256(data).hexdigest()
        blobs[digest] = data
        return digest

    def _load_video_blob(self, ref: str, base: Path | None, blobs: dict[str, bytes]) -> str | None:
        """A video reference is a directory of numbered frame files. The
        video blob is the concatenation of the frames' raw digests, so the
        aggregate digest is content-addressed like any other blob."""
        if self._is_remote(ref):
            logger.warning("skipping remote media reference %s (live fetch out of scope)", ref)
            return None
        frame_dir = self._resolve(ref, base)
        if not frame_dir.is_dir():
            raise ValidationError(f"video reference must be a frame directory: {ref}")
        manifest = b""
        frame_paths = sorted(p for p in frame_dir.iterdir() if p.suffix in (".pgm", ".ppm"))
        if not frame_paths:
            raise ValidationError(f"video frame directory is empty: {ref}")
        for frame_path in frame_paths:
            data = frame_path.read_bytes()
            frame_digest = hashlib.sha256(data)
            blobs[frame_digest.hexdigest()] = data
            manifest += frame_digest.digest()
        digest = hashlib.sha256(manifest).hexdigest()
        blobs[digest] = manifest
        return digest


class MonitorScheduler:
    """Fixed-interval poller pushing monitor items through the registrar."""

    def __init__(
        self,
        monitor: MonitorClient,
        registrar: Registrar,
        query: MonitorQuery,
        interval_secs: float = 60.0,
    ) -> None:
        self.monitor = monitor
        self.registrar = registrar
        self.query = query
        self.interval_secs = interval_secs
        self._stop = threading.Event()
        self._thread: threading.Thread | None = None
        self.poll_count = 0

    def poll_once(self) -> int:
        registered = 0
        for item in self.monitor.poll(self.query):
            _, created = self.registrar.register(
                item, SOURCE_MONITOR, media_base_dir=self.monitor.fixture_path.parent
            )
            registered += created
        self.poll_count += 1
        return registered

    def _run(self) -> None:
        while not self._stop.is_set():
            try:
                self.poll_once()
            except Exception:
                logger.exception("monitor poll failed")
            if self._stop.wait(self.interval_secs):
                break

    def start(self) -> None:
        self._thread = threading.Thread(target=self._run, name="monitor-poller", daemon=True)
        self._thread.start()

    def stop(self) -> None:
        self._stop.set()
        if self._thread is not None:
            self._thread.join(timeout=5)
