"""The five analyzer services behind the workflow dispatch contract.

Each analyzer consumes an Asset and returns the AnalysisResults for the
criteria it covers: the three text analyzers cover one criterion each,
the two media analyzers cover an image and a video criterion apiece.
Media payload bytes are resolved from the asset's transient blob map or
from the content-addressed blob store.
"""

from __future__ import annotations

from math import ceil
from typing import Callable, Protocol

from . import criteria as C
from . import tone as tone_mod
from . import writing_quality as wq_mod
from .criteria import AnalysisResult, unavailable
from .errors import MediaError
from .ingestion import Asset, Fragment
from .media_analysis import MediaAsset, MediaIndex
from .pnm import decode_pnm
from .text_similarity import TextSimilarityDetector

BlobReader = Callable[[str], "bytes | None"]


class Analyzer(Protocol):
    name: str
    covers: tuple[str, ...]

    def run(self, asset: Asset) -> list[AnalysisResult]: ...


def _joined_text(asset: Asset) -> str:
    parts = [asset.text_of("title"), asset.text_of("body")]
    return "\n".join(p for p in parts if p)


class TextSimilarityAnalyzer:
    name = "text_similarity"
    covers = (C.TEXT_SIMILARITY,)

    def __init__(self, detector: TextSimilarityDetector) -> None:
        self.detector = detector

    def run(self, asset: Asset) -> list[AnalysisResult]:
        body = asset.text_of("body")
        if not body:
            return [unavailable(C.TEXT_SIMILARITY, "no body text to verify")]
        verdict = self.detector.verify(asset.text_of("title"), body)
        evidence = [
            {
                "total_facts": verdict.total_facts,
                "verified_facts": verdict.verified_facts,
                "ratio": verdict.ratio,
                "threshold": self.detector.thresholds.tau_ratio,
                "retrieved": verdict.retrieved,
                "matches": [
                    {
                        "query_fact": m.query_fact,
                        "best_match": m.best_match,
                        "doc_id": m.best_doc_id,
                        "cosine": m.cosine,
                        "verified": m.verified,
                    }
                    for m in verdict.matches[:5]
                ],
            }
        ]
        if verdict.status == "unavailable":
            return [unavailable(C.TEXT_SIMILARITY, verdict.note)]
        if verdict.status == "caution":
            explanation = (
                f"Only {verdict.verified_facts} of {verdict.total_facts} factual statements "
                "could be matched in trusted coverage. Unverifiable facts are a marker of "
                "fabricated or 'spun' reporting."
            )
        else:
            explanation = (
                f"{verdict.verified_facts} of {verdict.total_facts} factual statements were "
                "verified against trusted coverage."
            )
        return [
            AnalysisResult(
                criterion=C.TEXT_SIMILARITY,
                status=verdict.status,
                score=verdict.score,
                evidence=evidence,
                explanation=explanation,
            )
        ]


class ToneAnalyzer:
    name = "tone"
    covers = (C.TONE,)

    def __init__(self, lexicon: tone_mod.EmotionLexicon, thresholds: tone_mod.ToneThresholds) -> None:
        self.lexicon = lexicon
        self.thresholds = thresholds

    def run(self, asset: Asset) -> list[AnalysisResult]:
        text = _joined_text(asset)
        profile = tone_mod.score_emotions(text, self.lexicon)
        return [tone_mod.assess(profile, self.thresholds)]


class WritingQualityAnalyzer:
    name = "writing_quality"
    covers = (C.WRITING_QUALITY,)

    def __init__(self, terms: wq_mod.LowQualityTerms, config: wq_mod.WqsConfig) -> None:
        self.terms = terms
        self.config = config

    def run(self, asset: Asset) -> list[AnalysisResult]:
        breakdown = wq_mod.compute_wqs(_joined_text(asset), self.terms, self.config)
        return [wq_mod.assess(breakdown, self.config)]


def media_from_fragment(
    frag: Fragment, resolve: BlobReader, keyframe_stride: int = 0
) -> MediaAsset:
    """Rebuild a MediaAsset from a fragment's content-addressed payload.

    Video payloads are manifests of raw 32-byte frame digests in frame
    order; keyframes are sampled every k-th frame, default k = ceil(n/5).
    """
    payload = resolve(frag.blob_digest)
    if payload is None:
        raise MediaError(f"blob not found: {frag.blob_digest}")
    if frag.kind == "image":
        return MediaAsset(media_id=frag.blob_digest, kind="image", frames=[decode_pnm(payload)])
    digests = [payload[i : i + 32].hex() for i in range(0, len(payload), 32)]
    if not digests:
        raise MediaError(f"empty video manifest: {frag.blob_digest}")
    stride = keyframe_stride if keyframe_stride >= 1 else ceil(len(digests) / 5)
    frames = []
    for digest in digests[::stride]:
        frame_bytes = resolve(digest)
        if frame_bytes is None:
            raise MediaError(f"video frame blob not found: {digest}")
        frames.append(decode_pnm(frame_bytes))
    return MediaAsset(media_id=frag.blob_digest, kind="video", frames=frames)


class _MediaAnalyzerBase:
    def __init__(
        self,
        index: MediaIndex,
        blob_reader: BlobReader,
        keyframe_stride: int = 0,
    ) -> None:
        self.index = index
        self.blob_reader = blob_reader
        self.keyframe_stride = keyframe_stride

    def _resolve(self, asset: Asset) -> BlobReader:
        def read(digest: str) -> bytes | None:
            if digest in asset.blobs:
                return asset.blobs[digest]
            return self.blob_reader(digest)

        return read

    def _load_media(self, asset: Asset, kind: str) -> list[tuple[Fragment, MediaAsset]]:
        resolve = self._resolve(asset)
        return [
            (frag, media_from_fragment(frag, resolve, self.keyframe_stride))
            for frag in asset.fragments_of(kind)
        ]


class MediaReuseAnalyzer(_MediaAnalyzerBase):
    """Reverse search per media fragment; afterwards registers the asset's
    media so later assets can be checked against it."""

    name = "media_reuse"
    covers = (C.IMAGE_REUSE, C.VIDEO_REUSE)

    def __init__(
        self,
        index: MediaIndex,
        blob_reader: BlobReader,
        keyframe_stride: int = 0,
        delta_max: int = 16,
        top_n: int = 5,
    ) -> None:
        super().__init__(index, blob_reader, keyframe_stride)
        self.delta_max = delta_max
        self.top_n = top_n

    def run(self, asset: Asset) -> list[AnalysisResult]:
        results = []
        loaded: list[tuple[Fragment, MediaAsset]] = []
        for kind, criterion in (("image", C.IMAGE_REUSE), ("video", C.VIDEO_REUSE)):
            media = self._load_media(asset, kind)
            loaded.extend(media)
            if not media:
                results.append(unavailable(criterion, f"no {kind} fragments in this asset"))
                continue
            matches = []
            for frag, m in media:
                found = self.index.reverse_search(
                    m, n=self.top_n, delta_max=self.delta_max, exclude_owner=asset.asset_id
                )
                for match in found.matches:
                    matches.append(
                        {
                            "fragment_id": frag.fragment_id,
                            "media_id": match.media_id,
                            "distance": match.distance,
                            "geometric_valid": match.geometric_valid,
                        }
                    )
            best = min((m["distance"] for m in matches), default=None)
            evidence = [
                {
                    "match_count": len(matches),
                    "best_distance": best,
                    "threshold": self.delta_max,
                    "matches": matches,
                }
            ]
            if matches:
                results.append(
                    AnalysisResult(
                        criterion=criterion,
                        status=C.STATUS_CAUTION,
                        score=1.0 - best / (self.delta_max + 1),
                        evidence=evidence,
                        explanation=(
                            f"This {kind} matches {len(matches)} previously seen item(s) "
                            f"(closest hamming distance {best}). Reused visuals are often "
                            "repurposed out of their original context."
                        ),
                    )
                )
            else:
                results.append(
                    AnalysisResult(
                        criterion=criterion,
                        status=C.STATUS_PASS,
                        evidence=evidence,
                        explanation=f"No previously registered {kind} matches this one.",
                    )
                )
        # register after searching so an asset never matches itself
        for _, m in loaded:
            self.index.register_media(m, owner=asset.asset_id)
        return results


class MediaManipulationAnalyzer(_MediaAnalyzerBase):
    name = "media_manipulation"
    covers = (C.IMAGE_MANIPULATION, C.VIDEO_MANIPULATION)

    def __init__(
        self,
        index: MediaIndex,
        blob_reader: BlobReader,
        keyframe_stride: int = 0,
        delta_match: int = 10,
        block_threshold: float = 25.0,
    ) -> None:
        super().__init__(index, blob_reader, keyframe_stride)
        self.delta_match = delta_match
        self.block_threshold = block_threshold

    def run(self, asset: Asset) -> list[AnalysisResult]:
        results = []
        for kind, criterion in (("image", C.IMAGE_MANIPULATION), ("video", C.VIDEO_MANIPULATION)):
            media = self._load_media(asset, kind)
            if not media:
                results.append(unavailable(criterion, f"no {kind} fragments in this asset"))
                continue
            reports = []
            for frag, m in media:
                report = self.index.detect_manipulation(
                    m,
                    delta_match=self.delta_match,
                    block_threshold=self.block_threshold,
                    exclude_owner=asset.asset_id,
                )
                reports.append((frag, report))
            frag, worst = max(reports, key=lambda fr: fr[1].probability)
            evidence = [
                {
                    "probability": worst.probability,
                    "area_fraction": worst.manipulated_area_fraction,
                    "regions": worst.regions,
                    "matched_original": worst.matched_original,
                    "threshold": self.block_threshold,
                    "fragment_id": frag.fragment_id,
                }
            ]
            if worst.probability > 0.0:
                results.append(
                    AnalysisResult(
                        criterion=criterion,
                        status=C.STATUS_CAUTION,
                        score=worst.probability,
                        evidence=evidence,
                        explanation=(
                            f"This {kind} differs from a registered original in "
                            f"{len(worst.regions)} region(s) covering "
                            f"{worst.manipulated_area_fraction:.1%} of the frame, which "
                            "suggests digital manipulation."
                        ),
                    )
                )
            elif worst.matched_original is not None:
                results.append(
                    AnalysisResult(
                        criterion=criterion,
                        status=C.STATUS_PASS,
                        evidence=evidence,
                        explanation=f"This {kind} is identical to its registered original.",
                    )
                )
            else:
                results.append(
                    AnalysisResult(
                        criterion=criterion,
                        status=C.STATUS_PASS,
                        evidence=evidence,
                        explanation=f"No registered original found to compare this {kind} against.",
                    )
                )
        return results
