"""Perceptual-hash reverse search and block-difference manipulation detection.

Images are matched with a 64-bit difference hash (dHash) over a 9x8
grayscale downsample, validated geometrically by normalized
cross-correlation of 64x64 thumbnails. Manipulation is located by
comparing a query against its best-matching registered original on a
32x32 grid of 8x8 blocks at 256x256 resolution. Videos are treated as
keyframe sequences throughout.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from math import ceil, exp
from pathlib import Path

import numpy as np
from scipy import ndimage

from .errors import MediaError
from .pnm import read_pnm, write_pnm

DELTA_MAX_DEFAULT = 16
DELTA_MATCH_DEFAULT = 10
BLOCK_THRESHOLD_DEFAULT = 25.0
PROBABILITY_RATE = 8.0
NCC_THRESHOLD = 0.9
THUMB_SIZE = 64
DIFF_SIZE = 256
BLOCK_SIZE = 8


@dataclass
class MediaAsset:
    media_id: str
    kind: str  # image | video
    frames: list[np.ndarray]

    def __post_init__(self) -> None:
        if self.kind not in ("image", "video"):
            raise MediaError(f"unknown media kind: {self.kind}")
        if not self.frames:
            raise MediaError("media asset needs at least one frame")


@dataclass
class ReverseMatch:
    media_id: str
    distance: int
    geometric_valid: bool


@dataclass
class ReverseSearchResult:
    matches: list[ReverseMatch] = field(default_factory=list)


@dataclass
class ManipulationReport:
    matched_original: str | None
    probability: float
    regions: list[dict[str, int]] = field(default_factory=list)
    manipulated_area_fraction: float = 0.0


def to_grayscale(image: np.ndarray) -> np.ndarray:
    if image.ndim == 2:
        return image
    weights = np.array([0.299, 0.587, 0.114])
    return np.round(image.astype(np.float64) @ weights).clip(0, 255).astype(np.uint8)


def _bin_edges(src: int, dst: int) -> list[tuple[int, int]]:
    edges = []
    for i in range(dst):
        a = (i * src) // dst
        b = max(((i + 1) * src) // dst, a + 1)
        edges.append((a, b))
    return edges


def resample(image: np.ndarray, width: int, height: int) -> np.ndarray:
    """Box-average resample of a grayscale image to width x height."""
    a = image.astype(np.float64)
    rows = np.vstack([a[lo:hi].mean(axis=0) for lo, hi in _bin_edges(a.shape[0], height)])
    cols = [rows[:, lo:hi].mean(axis=1) for lo, hi in _bin_edges(a.shape[1], width)]
    out = np.stack(cols, axis=1)
    return np.round(out).clip(0, 255).astype(np.uint8)


def dhash64(image: np.ndarray) -> int:
    """64-bit difference hash: 9x8 downsample, bit set where left > right.

    Comparing adjacent pixels makes the hash invariant to uniform
    brightness offsets (absent clipping).
    """
    small = resample(to_grayscale(image), 9, 8).astype(np.int16)
    bits = 0
    for row in range(8):
        for col in range(8):
            if small[row, col] > small[row, col + 1]:
                bits |= 1 << (row * 8 + col)
    return bits


def hamming(a: int, b: int) -> int:
    return (a ^ b).bit_count()


def ncc(a: np.ndarray, b: np.ndarray) -> float:
    """Pearson correlation of two equally-sized grayscale images."""
    x = a.astype(np.float64).ravel()
    y = b.astype(np.float64).ravel()
    xc = x - x.mean()
    yc = y - y.mean()
    nx = np.sqrt((xc * xc).sum())
    ny = np.sqrt((yc * yc).sum())
    if nx == 0.0 or ny == 0.0:
        return 1.0 if np.array_equal(x, y) else 0.0
    return float((xc * yc).sum() / (nx * ny))


def load_image(path: str | Path) -> MediaAsset:
    raw = Path(path).read_bytes()
    return MediaAsset(
        media_id=hashlib.sha256(raw).hexdigest(),
        kind="image",
        frames=[read_pnm(path)],
    )


def load_video(frame_dir: str | Path, keyframe_stride: int = 0) -> MediaAsset:
    """A video fixture is a directory of numbered PGM/PPM frames.

    Keyframes are every k-th frame; by default k = ceil(n/5), so at most
    five keyframes are sampled.
    """
    paths = sorted(p for p in Path(frame_dir).iterdir() if p.suffix in (".pgm", ".ppm"))
    if not paths:
        raise MediaError(f"no frames in {frame_dir}")
    stride = keyframe_stride if keyframe_stride >= 1 else ceil(len(paths) / 5)
    keyframe_paths = paths[::stride]
    digest = hashlib.sha256()
    for p in paths:
        digest.update(hashlib.sha256(p.read_bytes()).digest())
    return MediaAsset(
        media_id=digest.hexdigest(),
        kind="video",
        frames=[read_pnm(p) for p in keyframe_paths],
    )


class MediaIndex:
    """Search index over registered media: per-frame hashes plus
    64x64 thumbnails (geometric validation) and 256x256 references
    (manipulation diffing), optionally persisted under a directory."""

    def __init__(self, root: str | Path | None = None) -> None:
        self._hashes: dict[str, list[int]] = {}
        self._kinds: dict[str, str] = {}
        self._thumbs: dict[str, list[np.ndarray]] = {}
        self._refs: dict[str, list[np.ndarray]] = {}
        self._owners: dict[str, set[str]] = {}
        self._root = Path(root) if root is not None else None
        if self._root is not None:
            self._root.mkdir(parents=True, exist_ok=True)
            self._load()

    def __len__(self) -> int:
        return len(self._hashes)

    def __contains__(self, media_id: str) -> bool:
        return media_id in self._hashes

    # -- persistence ------------------------------------------------------

    def _load(self) -> None:
        manifest = self._root / "media.ndjson"
        if not manifest.exists():
            return
        with open(manifest, encoding="utf-8") as fh:
            for line in fh:
                if not line.strip():
                    continue
                rec = json.loads(line)
                mid = rec["media_id"]
                if mid in self._hashes:
                    continue
                self._hashes[mid] = [int(h, 16) for h in rec["hashes"]]
                self._kinds[mid] = rec["kind"]
                frame_dir = self._root / mid
                self._thumbs[mid] = [
                    read_pnm(frame_dir / f"{i}_thumb.pgm") for i in range(len(rec["hashes"]))
                ]
                self._refs[mid] = [
                    read_pnm(frame_dir / f"{i}_ref.pgm") for i in range(len(rec["hashes"]))
                ]
        owners_file = self._root / "owners.json"
        if owners_file.exists():
            raw = json.loads(owners_file.read_text(encoding="utf-8"))
            self._owners = {mid: set(v) for mid, v in raw.items()}

    def _persist(self, media_id: str) -> None:
        if self._root is None:
            return
        frame_dir = self._root / media_id
        frame_dir.mkdir(parents=True, exist_ok=True)
        for i, (thumb, ref) in enumerate(zip(self._thumbs[media_id], self._refs[media_id])):
            write_pnm(frame_dir / f"{i}_thumb.pgm", thumb)
            write_pnm(frame_dir / f"{i}_ref.pgm", ref)
        with open(self._root / "media.ndjson", "a", encoding="utf-8") as fh:
            fh.write(
                json.dumps(
                    {
                        "media_id": media_id,
                        "kind": self._kinds[media_id],
                        "hashes": [f"{h:016x}" for h in self._hashes[media_id]],
                    }
                )
                + "\n"
            )
        self._persist_owners()

    def _persist_owners(self) -> None:
        if self._root is None:
            return
        serializable = {mid: sorted(v) for mid, v in self._owners.items()}
        (self._root / "owners.json").write_text(
            json.dumps(serializable, indent=0, sort_keys=True), encoding="utf-8"
        )

    # -- registration -----------------------------------------------------

    def register_media(self, asset: MediaAsset, owner: str | None = None) -> None:
        """Insert per-frame hashes and thumbnails; idempotent by media_id.

        `owner` records which platform asset carried the media, so reuse
        checks can ignore an asset re-encountering its own upload.
        """
        if asset.media_id in self._hashes:
            if owner is not None and owner not in self._owners.setdefault(asset.media_id, set()):
                self._owners[asset.media_id].add(owner)
                self._persist_owners()
            return
        grays = [to_grayscale(f) for f in asset.frames]
        self._hashes[asset.media_id] = [dhash64(g) for g in grays]
        self._kinds[asset.media_id] = asset.kind
        self._thumbs[asset.media_id] = [resample(g, THUMB_SIZE, THUMB_SIZE) for g in grays]
        self._refs[asset.media_id] = [resample(g, DIFF_SIZE, DIFF_SIZE) for g in grays]
        self._owners.setdefault(asset.media_id, set())
        if owner is not None:
            self._owners[asset.media_id].add(owner)
        self._persist(asset.media_id)

    def owners(self, media_id: str) -> set[str]:
        return set(self._owners.get(media_id, set()))

    # -- search -----------------------------------------------------------

    def _best_frame_pairs(
        self, query: MediaAsset, exclude_owner: str | None
    ) -> dict[str, tuple[int, int, int]]:
        """Per candidate media_id: (min distance, query frame idx, candidate frame idx).

        Candidates solely owned by `exclude_owner` are skipped, so an asset
        never matches media it introduced itself (re-analysis, sibling
        fragments); media shared with any other asset stays searchable.
        """
        query_hashes = [dhash64(to_grayscale(f)) for f in query.frames]
        best: dict[str, tuple[int, int, int]] = {}
        for media_id, hashes in self._hashes.items():
            owners = self._owners.get(media_id, set())
            if exclude_owner is not None and owners and owners <= {exclude_owner}:
                continue
            for qi, qh in enumerate(query_hashes):
                for ci, ch in enumerate(hashes):
                    d = hamming(qh, ch)
                    if media_id not in best or d < best[media_id][0]:
                        best[media_id] = (d, qi, ci)
        return best

    def reverse_search(
        self,
        query: MediaAsset,
        n: int = 10,
        delta_max: int = DELTA_MAX_DEFAULT,
        exclude_owner: str | None = None,
    ) -> ReverseSearchResult:
        """N most similar registered media within hamming distance delta_max.

        Video queries aggregate per-frame results by the minimum distance
        per candidate. Ties are broken by ascending media_id.
        """
        if n < 1:
            raise ValueError("n must be >= 1")
        best = self._best_frame_pairs(query, exclude_owner)
        query_thumbs: dict[int, np.ndarray] = {}
        matches = []
        for media_id, (dist, qi, ci) in best.items():
            if dist > delta_max:
                continue
            if qi not in query_thumbs:
                query_thumbs[qi] = resample(to_grayscale(query.frames[qi]), THUMB_SIZE, THUMB_SIZE)
            valid = ncc(query_thumbs[qi], self._thumbs[media_id][ci]) >= NCC_THRESHOLD
            matches.append(ReverseMatch(media_id, dist, valid))
        matches.sort(key=lambda m: (m.distance, m.media_id))
        return ReverseSearchResult(matches=matches[:n])

    # -- manipulation -----------------------------------------------------

    def detect_manipulation(
        self,
        query: MediaAsset,
        delta_match: int = DELTA_MATCH_DEFAULT,
        block_threshold: float = BLOCK_THRESHOLD_DEFAULT,
        exclude_owner: str | None = None,
    ) -> ManipulationReport:
        """Locate differences against the best-matching registered original.

        Both images are compared at 256x256 grayscale on a 32x32 grid of
        8x8 blocks; a block is manipulated when its mean absolute
        difference exceeds block_threshold. For videos, the keyframe with
        the highest manipulation probability is reported.
        """
        result = self.reverse_search(
            query, n=len(self._hashes) or 1, delta_max=delta_match, exclude_owner=exclude_owner
        )
        original_id = next((m.media_id for m in result.matches if m.geometric_valid), None)
        if original_id is None:
            return ManipulationReport(matched_original=None, probability=0.0)

        best = self._best_frame_pairs(query, exclude_owner)[original_id]
        reports = []
        for qi, frame in enumerate(query.frames):
            ci = best[2] if qi == best[1] else self._closest_frame(frame, original_id)
            reports.append(self._diff_frame(frame, original_id, ci, block_threshold))
        report = max(reports, key=lambda r: r.probability)
        report.matched_original = original_id
        return report

    def _closest_frame(self, frame: np.ndarray, media_id: str) -> int:
        qh = dhash64(to_grayscale(frame))
        distances = [hamming(qh, ch) for ch in self._hashes[media_id]]
        return int(np.argmin(distances))

    def _diff_frame(
        self, frame: np.ndarray, original_id: str, frame_idx: int, block_threshold: float
    ) -> ManipulationReport:
        gray = to_grayscale(frame)
        query_256 = resample(gray, DIFF_SIZE, DIFF_SIZE).astype(np.float64)
        ref_256 = self._refs[original_id][frame_idx].astype(np.float64)
        diff = np.abs(query_256 - ref_256)

        grid = DIFF_SIZE // BLOCK_SIZE
        block_means = diff.reshape(grid, BLOCK_SIZE, grid, BLOCK_SIZE).mean(axis=(1, 3))
        manipulated = block_means > block_threshold
        fraction = float(manipulated.sum()) / manipulated.size
        if fraction == 0.0:
            return ManipulationReport(matched_original=original_id, probability=0.0)

        height, width = gray.shape
        labels, _ = ndimage.label(manipulated)
        regions = []
        for sl in ndimage.find_objects(labels):
            y0 = sl[0].start * BLOCK_SIZE
            y1 = sl[0].stop * BLOCK_SIZE
            x0 = sl[1].start * BLOCK_SIZE
            x1 = sl[1].stop * BLOCK_SIZE
            regions.append(
                {
                    "x": (x0 * width) // DIFF_SIZE,
                    "y": (y0 * height) // DIFF_SIZE,
                    "width": -(-(x1 * width) // DIFF_SIZE) - (x0 * width) // DIFF_SIZE,
                    "height": -(-(y1 * height) // DIFF_SIZE) - (y0 * height) // DIFF_SIZE,
                }
            )
        return ManipulationReport(
            matched_original=original_id,
            probability=1.0 - exp(-PROBABILITY_RATE * fraction),
            regions=regions,
            manipulated_area_fraction=fraction,
        )
