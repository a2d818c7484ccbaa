"""Topic assignment and outlet quality bucketing.

Topics come from a supervised keyword taxonomy (a forest); a node is
assigned when 3x title hits + body hits reach its threshold, and
assignment propagates to all ancestors. Outlets are bucketed into
Low/Medium/High either by explicit score boundaries or a tertile split.
"""

from __future__ import annotations

import csv
import io
import json
import logging
import math
import re
from dataclasses import dataclass, field, replace
from enum import Enum
from functools import lru_cache
from importlib import resources
from pathlib import Path
from typing import Optional, Sequence

from .errors import EmptyOutletList, InvalidHost, InvalidTaxonomy, MalformedRanking
from .models import Article
from .urls import registrable_domain

logger = logging.getLogger(__name__)

TITLE_HIT_WEIGHT = 3
DEFAULT_TOPIC_THRESHOLD = 3.0


class RatingClass(Enum):
    LOW = "low"
    MEDIUM = "medium"
    HIGH = "high"


@dataclass(frozen=True)
class TopicNode:
    topic_id: str
    label: str
    parent: Optional[str] = None
    keywords: tuple[str, ...] = ()
    threshold: float = DEFAULT_TOPIC_THRESHOLD


@dataclass(frozen=True)
class Taxonomy:
    nodes: dict[str, TopicNode]

    def __post_init__(self):
        self._validate()

    def _validate(self):
        children: dict[str, list[str]] = {}
        for node in self.nodes.values():
            if node.parent is not None:
                if node.parent not in self.nodes:
                    raise InvalidTaxonomy(f"unknown parent {node.parent!r} of {node.topic_id!r}")
                children.setdefault(node.parent, []).append(node.topic_id)
        # Forest check: walking up from any node must terminate.
        for node in self.nodes.values():
            seen = set()
            current: Optional[str] = node.topic_id
            while current is not None:
                if current in seen:
                    raise InvalidTaxonomy(f"cycle through {current!r}")
                seen.add(current)
                current = self.nodes[current].parent
        for node in self.nodes.values():
            if node.topic_id not in children and not node.keywords:
                raise InvalidTaxonomy(f"leaf node {node.topic_id!r} has no keywords")

    def ancestors(self, topic_id: str) -> list[str]:
        out = []
        current = self.nodes[topic_id].parent
        while current is not None:
            out.append(current)
            current = self.nodes[current].parent
        return out

    @classmethod
    def from_json(cls, text: str) -> "Taxonomy":
        try:
            raw = json.loads(text)
        except json.JSONDecodeError as exc:
            raise InvalidTaxonomy(f"taxonomy not valid JSON: {exc}") from exc
        nodes = {}
        for entry in raw:
            node = TopicNode(
                topic_id=entry["topic_id"],
                label=entry.get("label", entry["topic_id"]),
                parent=entry.get("parent"),
                keywords=tuple(k.lower() for k in entry.get("keywords", [])),
                threshold=float(entry.get("threshold", DEFAULT_TOPIC_THRESHOLD)),
            )
            if node.topic_id in nodes:
                raise InvalidTaxonomy(f"duplicate topic_id {node.topic_id!r}")
            nodes[node.topic_id] = node
        return cls(nodes=nodes)

    @classmethod
    def from_file(cls, path: Path) -> "Taxonomy":
        return cls.from_json(path.read_text(encoding="utf-8"))


@lru_cache(maxsize=1)
def default_taxonomy() -> Taxonomy:
    text = resources.files("newslens.assets").joinpath("taxonomy.json").read_text(encoding="utf-8")
    return Taxonomy.from_json(text)


def _count_hits(phrase: str, text: str) -> int:
    pattern = r"(?<![a-z0-9])" + re.escape(phrase) + r"(?![a-z0-9])"
    return len(re.findall(pattern, text))


def assign_topics(article: Article, taxonomy: Taxonomy | None = None) -> set[str]:
    """Topic ids whose keyword score reaches threshold, plus all ancestors."""
    if taxonomy is None:
        taxonomy = default_taxonomy()
    title = article.title.lower()
    body = article.body.lower()
    assigned: set[str] = set()
    for node in taxonomy.nodes.values():
        score = 0.0
        for keyword in node.keywords:
            score += TITLE_HIT_WEIGHT * _count_hits(keyword, title) + _count_hits(keyword, body)
        if node.keywords and score >= node.threshold:
            assigned.add(node.topic_id)
    for topic_id in list(assigned):
        assigned.update(taxonomy.ancestors(topic_id))
    return assigned


@dataclass(frozen=True)
class Outlet:
    domain: str
    name: str
    quality_score: float
    rating_class: Optional[RatingClass] = None

    def to_dict(self) -> dict:
        return {
            "domain": self.domain,
            "name": self.name,
            "quality_score": self.quality_score,
            "rating_class": self.rating_class.value if self.rating_class else None,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "Outlet":
        return cls(
            domain=d["domain"],
            name=d.get("name", ""),
            quality_score=float(d["quality_score"]),
            rating_class=RatingClass(d["rating_class"]) if d.get("rating_class") else None,
        )


RANKING_HEADER = ["domain", "name", "quality_score"]


def load_outlet_ranking(csv_bytes: bytes) -> list[Outlet]:
    """Parse an outlet ranking CSV (header: domain,name,quality_score)."""
    try:
        text = csv_bytes.decode("utf-8")
    except UnicodeDecodeError as exc:
        raise MalformedRanking(f"ranking not UTF-8: {exc}") from exc
    reader = csv.reader(io.StringIO(text))
    try:
        header = next(reader)
    except StopIteration:
        raise MalformedRanking("empty ranking file") from None
    if [h.strip().lower() for h in header] != RANKING_HEADER:
        raise MalformedRanking(f"bad header {header!r}, expected {RANKING_HEADER}")
    by_domain: dict[str, Outlet] = {}
    order: list[str] = []
    for lineno, row in enumerate(reader, start=2):
        if not row or all(not cell.strip() for cell in row):
            continue
        if len(row) != 3:
            raise MalformedRanking(f"line {lineno}: expected 3 columns, got {len(row)}")
        domain_raw, name, score_raw = (cell.strip() for cell in row)
        try:
            domain = registrable_domain(domain_raw)
        except InvalidHost as exc:
            raise MalformedRanking(f"line {lineno}: {exc.message}") from exc
        try:
            score = float(score_raw)
        except ValueError:
            raise MalformedRanking(f"line {lineno}: unparseable score {score_raw!r}") from None
        if not math.isfinite(score):
            raise MalformedRanking(f"line {lineno}: non-finite score {score_raw!r}")
        if domain in by_domain:
            logger.warning("duplicate outlet domain %s at line %d: last row wins", domain, lineno)
            order.remove(domain)
        by_domain[domain] = Outlet(domain=domain, name=name, quality_score=score)
        order.append(domain)
    return [by_domain[d] for d in order]


def bucket_outlets(
    outlets: Sequence[Outlet],
    boundaries: Optional[tuple[float, float]] = None,
) -> list[Outlet]:
    """Assign a rating class to every outlet.

    With explicit (low_hi, med_hi) boundaries: score <= low_hi is Low,
    <= med_hi is Medium, else High. Without boundaries: tertile split on
    the empirical score distribution, ties broken toward the lower class.
    """
    if not outlets:
        raise EmptyOutletList("no outlets to bucket")
    if boundaries is None:
        scores = sorted(o.quality_score for o in outlets)
        n = len(scores)
        low_hi = scores[math.ceil(n / 3) - 1]
        med_hi = scores[math.ceil(2 * n / 3) - 1]
    else:
        low_hi, med_hi = boundaries
        if low_hi > med_hi:
            raise ValueError(f"boundaries out of order: {boundaries}")

    def classify(score: float) -> RatingClass:
        if score <= low_hi:
            return RatingClass.LOW
        if score <= med_hi:
            return RatingClass.MEDIUM
        return RatingClass.HIGH

    return [replace(o, rating_class=classify(o.quality_score)) for o in outlets]
