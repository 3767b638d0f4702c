"""Triple store for analysis bundles, with pattern matching and reload.

Fixed namespace prefixes stand in for the usual vocabularies: `bib:`
for bibliographic literals, `agent:` for publisher agents, `prov-data:`
for assets/fragments/topic paths, and `prov-obs:` for data-cube-style
observations (one per criterion per asset).

Bundle-to-triple mapping (the documented contract; tests hold an
independent oracle against it):

  asset node A = prov-data:asset/<asset_id>
    (A, bib:url, str)                always
    (A, bib:title, str)              when the asset has a title fragment
    (A, bib:publishedAt, ts)         when known
    (A, bib:publisher, agent IRI)    when publisher non-empty
    (G, bib:name, str)               same condition; G = agent:<slug>
    (A, bib:ledgerDigest, str)       always
    (A, prov-data:blockIndex, int)   always
    (A, prov-data:blockHash, str)    always
    (A, prov-data:source, str)       always
    (A, prov-data:analyzedAt, ts)    always
    (A, prov-data:likes, int)        always
    (A, prov-data:shares, int)       always
    (A, prov-data:comments, int)     always
    (A, prov-data:engagementScore, dec) always
  per fragment F = prov-data:fragment/<asset_id>/<fragment_id>
    (A, prov-data:hasFragment, F)
    (F, prov-data:fragmentKind, str)
    (F, prov-data:blobDigest, str)   media fragments only
  topic path (defaults concept "general", category/topic "uncategorized")
    (C, prov-data:hasCategory, CAT)
    (CAT, prov-data:hasTopic, T)
    (T, prov-data:hasArticle, A)
  per criterion observation O = prov-obs:observation/<asset_id>/<criterion>
    (O, prov-obs:hasAsset, A)
    (O, prov-obs:hasCriterion, prov-obs:criterion/<criterion>)
    (O, prov-obs:hasStatus, str)
    (O, prov-obs:hasScore, dec)
    (O, prov-obs:explanation, str)
    (O, prov-obs:evidence, str)      canonical JSON of the evidence list
    plus criterion-specific measures read from evidence[0]:
      text_similarity:   totalFacts int, verifiedFacts int, verifiedFactRatio dec
      *_manipulation:    manipulationProbability dec, polygonArea dec, regionCount int
      *_reuse:           matchCount int; bestDistance int when a match exists
      writing_quality:   wqs dec

Persistence is an append-only statement log (`# tx <asset_id>` framed,
one N-Triples-style statement per line); on load the last transaction
per asset wins, which reproduces replace-on-restore semantics.
"""

from __future__ import annotations

import json
import re
import threading
from dataclasses import dataclass, field
from pathlib import Path
from typing import TYPE_CHECKING, Iterable

from .criteria import CRITERIA, AnalysisResult
from .errors import StoreError
from .ledger import LedgerReceipt

if TYPE_CHECKING:  # pragma: no cover - type-only import, avoids a cycle
    from .workflow import AnalysisBundle

IRI = "iri"
STRING = "string"
INTEGER = "integer"
DECIMAL = "decimal"
TIMESTAMP = "timestamp"
BOOLEAN = "boolean"

_SUFFIX = {INTEGER: "int", DECIMAL: "dec", TIMESTAMP: "ts", BOOLEAN: "bool"}
_SUFFIX_REV = {v: k for k, v in _SUFFIX.items()}

DEFAULT_CONCEPT = "general"
DEFAULT_CATEGORY = "uncategorized"
DEFAULT_TOPIC = "uncategorized"


@dataclass(frozen=True)
class Obj:
    value: str
    kind: str = IRI

    def serialized(self) -> str:
        if self.kind == IRI:
            return f"<{self.value}>"
        escaped = (
            self.value.replace("\\", "\\\\")
            .replace('"', '\\"')
            .replace("\n", "\\n")
            .replace("\r", "\\r")
            .replace("\t", "\\t")
        )
        if self.kind == STRING:
            return f'"{escaped}"'
        return f'"{escaped}"^^{_SUFFIX[self.kind]}'


def iri(value: str) -> Obj:
    return Obj(value, IRI)


def lit(value, kind: str = STRING) -> Obj:
    return Obj(str(value), kind)


def dec(value: float) -> Obj:
    return Obj(repr(float(value)), DECIMAL)


@dataclass(frozen=True)
class Triple:
    s: str
    p: str
    o: Obj

    def serialized(self) -> str:
        return f"<{self.s}> <{self.p}> {self.o.serialized()} ."

    def sort_key(self) -> tuple[str, str, str]:
        return (self.s, self.p, self.o.serialized())


_STMT_RE = re.compile(r"^<([^>]*)> <([^>]*)> (.+) \.$")
_LITERAL_RE = re.compile(r'^"((?:[^"\\]|\\.)*)"(?:\^\^(\w+))?$')


def _unescape(s: str) -> str:
    return (
        s.replace("\\t", "\t")
        .replace("\\r", "\r")
        .replace("\\n", "\n")
        .replace('\\"', '"')
        .replace("\\\\", "\\")
    )


def parse_statement(line: str) -> Triple:
    m = _STMT_RE.match(line.strip())
    if not m:
        raise StoreError(f"unparseable statement: {line!r}")
    s, p, o_raw = m.groups()
    if o_raw.startswith("<") and o_raw.endswith(">"):
        return Triple(s, p, Obj(o_raw[1:-1], IRI))
    lm = _LITERAL_RE.match(o_raw)
    if not lm:
        raise StoreError(f"unparseable object: {o_raw!r}")
    value, suffix = lm.groups()
    kind = _SUFFIX_REV[suffix] if suffix else STRING
    return Triple(s, p, Obj(_unescape(value), kind))


def slugify(text: str) -> str:
    slug = re.sub(r"[^a-z0-9]+", "-", text.lower()).strip("-")
    return slug or "unknown"


def asset_iri(asset_id: str) -> str:
    return f"prov-data:asset/{asset_id}"


def observation_iri(asset_id: str, criterion: str) -> str:
    return f"prov-obs:observation/{asset_id}/{criterion}"


def canonical_evidence(evidence: list) -> str:
    return json.dumps(evidence, sort_keys=True, separators=(",", ":"))


def bundle_to_triples(bundle: "AnalysisBundle") -> list[Triple]:
    """Deterministic mapping documented in the module docstring."""
    asset = bundle.asset
    a = asset_iri(asset.asset_id)
    out: list[Triple] = [
        Triple(a, "bib:url", lit(asset.url)),
        Triple(a, "bib:ledgerDigest", lit(bundle.ledger_receipt.content_digest)),
        Triple(a, "prov-data:blockIndex", lit(bundle.ledger_receipt.block_index, INTEGER)),
        Triple(a, "prov-data:blockHash", lit(bundle.ledger_receipt.block_hash)),
        Triple(a, "prov-data:source", lit(asset.source)),
        Triple(a, "prov-data:analyzedAt", lit(bundle.completed_at.isoformat(), TIMESTAMP)),
        Triple(a, "prov-data:likes", lit(bundle.engagement.likes, INTEGER)),
        Triple(a, "prov-data:shares", lit(bundle.engagement.shares, INTEGER)),
        Triple(a, "prov-data:comments", lit(bundle.engagement.comments, INTEGER)),
        Triple(a, "prov-data:engagementScore", dec(bundle.engagement.score)),
    ]
    title = asset.text_of("title")
    if title:
        out.append(Triple(a, "bib:title", lit(title)))
    if asset.published_at is not None:
        out.append(Triple(a, "bib:publishedAt", lit(asset.published_at.isoformat(), TIMESTAMP)))
    if asset.publisher:
        agent = f"agent:{slugify(asset.publisher)}"
        out.append(Triple(a, "bib:publisher", iri(agent)))
        out.append(Triple(agent, "bib:name", lit(asset.publisher)))

    for frag in asset.fragments:
        f = f"prov-data:fragment/{asset.asset_id}/{frag.fragment_id}"
        out.append(Triple(a, "prov-data:hasFragment", iri(f)))
        out.append(Triple(f, "prov-data:fragmentKind", lit(frag.kind)))
        if frag.blob_digest:
            out.append(Triple(f, "prov-data:blobDigest", lit(frag.blob_digest)))

    concept = f"prov-data:concept/{slugify(asset.concept or DEFAULT_CONCEPT)}"
    category = f"prov-data:category/{slugify(asset.category or DEFAULT_CATEGORY)}"
    topic = f"prov-data:topic/{slugify(asset.topic or DEFAULT_TOPIC)}"
    out.append(Triple(concept, "prov-data:hasCategory", iri(category)))
    out.append(Triple(category, "prov-data:hasTopic", iri(topic)))
    out.append(Triple(topic, "prov-data:hasArticle", iri(a)))

    for criterion in CRITERIA:
        result = bundle.results[criterion]
        o = observation_iri(asset.asset_id, criterion)
        out.extend(
            [
                Triple(o, "prov-obs:hasAsset", iri(a)),
                Triple(o, "prov-obs:hasCriterion", iri(f"prov-obs:criterion/{criterion}")),
                Triple(o, "prov-obs:hasStatus", lit(result.status)),
                Triple(o, "prov-obs:hasScore", dec(result.score)),
                Triple(o, "prov-obs:explanation", lit(result.explanation)),
                Triple(o, "prov-obs:evidence", lit(canonical_evidence(result.evidence))),
            ]
        )
        out.extend(_measure_triples(o, criterion, result))
    return out


def _measure_triples(o: str, criterion: str, result: AnalysisResult) -> list[Triple]:
    if not result.evidence:
        return []
    head = result.evidence[0]
    out = []
    if criterion == "text_similarity":
        if "total_facts" in head:
            out.append(Triple(o, "prov-obs:totalFacts", lit(head["total_facts"], INTEGER)))
        if "verified_facts" in head:
            out.append(Triple(o, "prov-obs:verifiedFacts", lit(head["verified_facts"], INTEGER)))
        if "ratio" in head:
            out.append(Triple(o, "prov-obs:verifiedFactRatio", dec(head["ratio"])))
    elif criterion in ("image_manipulation", "video_manipulation"):
        if "probability" in head:
            out.append(Triple(o, "prov-obs:manipulationProbability", dec(head["probability"])))
        if "area_fraction" in head:
            out.append(Triple(o, "prov-obs:polygonArea", dec(head["area_fraction"])))
        if "regions" in head:
            out.append(Triple(o, "prov-obs:regionCount", lit(len(head["regions"]), INTEGER)))
    elif criterion in ("image_reuse", "video_reuse"):
        if "match_count" in head:
            out.append(Triple(o, "prov-obs:matchCount", lit(head["match_count"], INTEGER)))
        if head.get("best_distance") is not None:
            out.append(Triple(o, "prov-obs:bestDistance", lit(head["best_distance"], INTEGER)))
    elif criterion == "writing_quality":
        if "wqs" in head:
            out.append(Triple(o, "prov-obs:wqs", dec(head["wqs"])))
    return out


@dataclass
class VerificationRecord:
    asset_id: str
    url: str
    title: str
    publisher: str
    topic: str
    results: dict[str, AnalysisResult]
    ledger_receipt: LedgerReceipt
    analyzed_at: str = ""

    def to_dict(self) -> dict:
        return {
            "asset_id": self.asset_id,
            "url": self.url,
            "title": self.title,
            "publisher": self.publisher,
            "topic": self.topic,
            "results": {c: r.to_dict() for c, r in self.results.items()},
            "ledger": self.ledger_receipt.to_dict(),
            "analyzed_at": self.analyzed_at,
        }


class TripleStore:
    """In-memory SPO/POS/OSP indexes over an append-only statement log."""

    def __init__(self, store_path: str | Path | None = None) -> None:
        self.store_path = Path(store_path) if store_path else None
        self._lock = threading.Lock()
        self._triples: set[Triple] = set()
        self._spo: dict[str, set[Triple]] = {}
        self._pos: dict[str, set[Triple]] = {}
        self._osp: dict[str, set[Triple]] = {}
        self._bundle_triples: dict[str, set[Triple]] = {}
        if self.store_path is not None and self.store_path.exists():
            self._load()

    def __len__(self) -> int:
        return len(self._triples)

    # -- persistence -------------------------------------------------------

    def _load(self) -> None:
        tx_groups: dict[str, list[Triple]] = {}
        current: list[Triple] | None = None
        try:
            lines = self.store_path.read_text(encoding="utf-8").splitlines()
        except OSError as exc:
            raise StoreError(f"cannot read store file {self.store_path}: {exc}") from exc
        for line in lines:
            line = line.strip()
            if not line:
                continue
            if line.startswith("# tx "):
                asset_id = line[len("# tx ") :].strip()
                current = tx_groups.setdefault(asset_id, [])
                current.clear()
                continue
            if line.startswith("#"):
                continue
            if current is None:
                raise StoreError(f"statement outside transaction in {self.store_path}")
            current.append(parse_statement(line))
        for asset_id, triples in tx_groups.items():
            self._bundle_triples[asset_id] = set(triples)
            for t in triples:
                self._index(t)

    def _append_tx(self, asset_id: str, triples: Iterable[Triple]) -> None:
        if self.store_path is None:
            return
        try:
            with open(self.store_path, "a", encoding="utf-8") as fh:
                fh.write(f"# tx {asset_id}\n")
                for t in sorted(triples, key=Triple.sort_key):
                    fh.write(t.serialized() + "\n")
                fh.flush()
        except OSError as exc:
            raise StoreError(f"store append failed: {exc}") from exc

    def flush(self) -> None:
        """Data is written through on commit; nothing buffered."""

    # -- indexing ----------------------------------------------------------

    def _index(self, t: Triple) -> None:
        if t in self._triples:
            return
        self._triples.add(t)
        self._spo.setdefault(t.s, set()).add(t)
        self._pos.setdefault(t.p, set()).add(t)
        self._osp.setdefault(t.o.value, set()).add(t)

    def _unindex(self, t: Triple) -> None:
        if t not in self._triples:
            return
        self._triples.discard(t)
        self._spo[t.s].discard(t)
        self._pos[t.p].discard(t)
        self._osp[t.o.value].discard(t)

    # -- operations --------------------------------------------------------

    def store_bundle(self, bundle: "AnalysisBundle") -> int:
        """Transactionally (re)store one asset's bundle; returns the number
        of triples in its mapping."""
        missing = [c for c in CRITERIA if c not in bundle.results]
        if missing:
            raise StoreError(f"bundle is missing criteria: {missing}")
        extra = [c for c in bundle.results if c not in CRITERIA]
        if extra:
            raise StoreError(f"bundle has unknown criteria: {extra}")
        triples = bundle_to_triples(bundle)
        new_set = set(triples)
        asset_id = bundle.asset.asset_id
        with self._lock:
            old_set = self._bundle_triples.get(asset_id, set())
            if new_set != old_set:
                self._append_tx(asset_id, triples)
            shared = set()
            for other_id, other in self._bundle_triples.items():
                if other_id != asset_id:
                    shared |= old_set & other
            for t in old_set - new_set - shared:
                self._unindex(t)
            for t in new_set:
                self._index(t)
            self._bundle_triples[asset_id] = new_set
        return len(new_set)

    def match(self, s: str | None = None, p: str | None = None, o: str | None = None) -> list[Triple]:
        """All triples matching the pattern; absent positions are wildcards.
        Literal objects match on their lexical value."""
        candidates: set[Triple] | None = None
        if s is not None:
            candidates = set(self._spo.get(s, set()))
        if p is not None:
            pset = self._pos.get(p, set())
            candidates = pset if candidates is None else candidates & pset
        if o is not None:
            oset = self._osp.get(o, set())
            candidates = oset if candidates is None else candidates & oset
        if candidates is None:
            candidates = set(self._triples)
        return sorted(candidates, key=Triple.sort_key)

    def asset_ids(self) -> list[str]:
        return sorted(self._bundle_triples)

    def get_verification(self, asset_id: str) -> VerificationRecord | None:
        """Rebuild the seven results plus the ledger receipt from the
        stored observations; None for assets never stored."""
        a = asset_iri(asset_id)
        asset_triples = {(t.p): t.o for t in self.match(s=a)}
        if not asset_triples:
            return None
        results: dict[str, AnalysisResult] = {}
        for criterion in CRITERIA:
            o = observation_iri(asset_id, criterion)
            obs = {t.p: t.o for t in self.match(s=o)}
            if not obs:
                return None
            results[criterion] = AnalysisResult(
                criterion=criterion,
                status=obs["prov-obs:hasStatus"].value,
                score=float(obs["prov-obs:hasScore"].value),
                evidence=json.loads(obs["prov-obs:evidence"].value),
                explanation=obs["prov-obs:explanation"].value,
            )
        topic_links = self.match(p="prov-data:hasArticle", o=a)
        topic = topic_links[0].s.split("/", 1)[1] if topic_links else DEFAULT_TOPIC
        publisher = ""
        if "bib:publisher" in asset_triples:
            names = self.match(s=asset_triples["bib:publisher"].value, p="bib:name")
            publisher = names[0].o.value if names else ""
        receipt = LedgerReceipt(
            asset_id=asset_id,
            block_index=int(asset_triples["prov-data:blockIndex"].value),
            block_hash=asset_triples["prov-data:blockHash"].value,
            content_digest=asset_triples["bib:ledgerDigest"].value,
        )
        return VerificationRecord(
            asset_id=asset_id,
            url=asset_triples["bib:url"].value,
            title=asset_triples.get("bib:title", Obj("", STRING)).value,
            publisher=publisher,
            topic=topic,
            results=results,
            ledger_receipt=receipt,
            analyzed_at=asset_triples["prov-data:analyzedAt"].value,
        )
