"""Read-only query facade over the knowledge graph.

Two tiers of access: canned queries returning JSON rows for the common
cases, and a raw triple-pattern endpoint for callers that need full
control. Every response is a pure composition of store pattern matches;
nothing is computed that the store does not already hold.
"""

from __future__ import annotations

from collections import Counter

from .criteria import CRITERIA
from .errors import ValidationError
from .ingestion import asset_id_for_url
from .knowledge_graph import TripleStore, VerificationRecord, asset_iri, slugify

CANNED_QUERIES = ("verification_by_url", "assets_by_topic", "assets_by_publisher", "caution_summary")
DEFAULT_LIMIT = 100


class QueryService:
    def __init__(self, store: TripleStore) -> None:
        self.store = store

    def verification_by_url(self, url: str) -> VerificationRecord | None:
        return self.store.get_verification(asset_id_for_url(url))

    def canned(self, name: str, params: dict[str, str], limit: int = DEFAULT_LIMIT) -> list[dict]:
        if name == "verification_by_url":
            record = self.verification_by_url(self._require(params, "url"))
            return [record.to_dict()] if record else []
        if name == "assets_by_topic":
            return self._assets_by_topic(self._require(params, "topic"))[:limit]
        if name == "assets_by_publisher":
            return self._assets_by_publisher(self._require(params, "publisher"))[:limit]
        if name == "caution_summary":
            return self._caution_summary()
        raise ValidationError(f"unknown canned query: {name!r}")

    @staticmethod
    def _require(params: dict[str, str], key: str) -> str:
        value = params.get(key)
        if value is None:
            raise ValidationError(f"missing required parameter: {key}")
        return value

    def _asset_row(self, asset_node: str) -> dict:
        fields = {t.p: t.o.value for t in self.store.match(s=asset_node)}
        return {
            "asset_id": asset_node.rsplit("/", 1)[1],
            "url": fields.get("bib:url", ""),
            "title": fields.get("bib:title", ""),
        }

    def _assets_by_topic(self, topic: str) -> list[dict]:
        topic_node = f"prov-data:topic/{slugify(topic)}"
        links = self.store.match(s=topic_node, p="prov-data:hasArticle")
        return [self._asset_row(t.o.value) for t in links]

    def _assets_by_publisher(self, publisher: str) -> list[dict]:
        rows = []
        for name_triple in self.store.match(p="bib:name", o=publisher):
            for link in self.store.match(p="bib:publisher", o=name_triple.s):
                rows.append(self._asset_row(link.s))
        rows.sort(key=lambda r: r["asset_id"])
        return rows

    def _caution_summary(self) -> list[dict]:
        counts: Counter[str] = Counter()
        for t in self.store.match(p="prov-obs:hasStatus", o="caution"):
            criterion = t.s.rsplit("/", 1)[1]
            counts[criterion] += 1
        return [{"criterion": c, "caution_count": counts.get(c, 0)} for c in CRITERIA]

    def raw(self, pattern: dict, limit: int = DEFAULT_LIMIT) -> list[dict]:
        if not isinstance(pattern, dict):
            raise ValidationError("pattern must be a JSON object")
        unknown = set(pattern) - {"s", "p", "o"}
        if unknown:
            raise ValidationError(f"unknown pattern fields: {sorted(unknown)}")
        for key, value in pattern.items():
            if value is not None and not isinstance(value, str):
                raise ValidationError(f"pattern field {key} must be a string")
        triples = self.store.match(
            s=pattern.get("s"), p=pattern.get("p"), o=pattern.get("o")
        )
        return [
            {"s": t.s, "p": t.p, "o": t.o.value, "o_kind": t.o.kind} for t in triples[:limit]
        ]

    def asset_triples(self, url: str) -> list[dict]:
        return self.raw({"s": asset_iri(asset_id_for_url(url))})
