"""Platform core: persistence, ingestion, report assembly, migration, analytics.

All state lives in the hot KV store plus the archive; every method here is
safe to call from service handlers, the CLI, or tests interchangeably.
Cached indicator reports are stored as canonical JSON strings so repeated
reads within the TTL are byte-identical.
"""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass
from datetime import date, datetime, timedelta, timezone
from pathlib import Path
from typing import Callable, Iterator, Optional

from . import content as content_mod
from . import references as refs_mod
from . import social as social_mod
from .analytics import (
    ActivitySeries,
    CorpusSnapshot,
    DensityCurve,
    DensityMetric,
    class_activity_series,
    density_curve,
)
from .config import Config
from .errors import (
    EmptyDocument,
    FetchError,
    FetchFailed,
    InvalidPosting,
    MalformedUrl,
    ParseFailed,
    PartialMigration,
    UnknownArticle,
    UnknownClass,
    UnknownExpert,
)
from .fetch import FetchResult, fetch_article
from .htmlparse import parse_article_html
from .models import Article, RawPosting, canonical_json, iso_utc, parse_utc
from .reviews import ExpertReview, ReviewAggregate, aggregate_reviews
from .segmentation import Outlet, RatingClass, Taxonomy, bucket_outlets, default_taxonomy, load_outlet_ranking
from .storage import Archive, ArchivePartition, KVStore
from .urls import article_id, normalize_url

logger = logging.getLogger(__name__)

Fetcher = Callable[[str, float], FetchResult]


@dataclass(frozen=True)
class IngestOutcome:
    post_id: str
    status: str  # stored_new | updated | rejected
    article_enqueued: bool = False
    error: Optional[str] = None

    def to_dict(self) -> dict:
        return {
            "post_id": self.post_id,
            "status": self.status,
            "article_enqueued": self.article_enqueued,
            "error": self.error,
        }


@dataclass(frozen=True)
class MigrationReport:
    epoch: int
    moved: dict[str, int]

    def to_dict(self) -> dict:
        return {"epoch": self.epoch, "moved": dict(self.moved)}


def _utcnow() -> datetime:
    return datetime.now(timezone.utc).replace(microsecond=0)


class Platform:
    def __init__(self, config: Config | None = None):
        self.config = config or Config()
        self.store = KVStore(self.config.store_path)
        self.archive = Archive(self.config.archive_dir)
        self._load_assets()

    def _load_assets(self):
        cfg = self.config
        self.hyperbole = (
            content_mod.load_lexicon(Path(cfg.hyperbole_path))
            if cfg.hyperbole_path
            else content_mod.default_hyperbole_lexicon()
        )
        self.subjective = (
            content_mod.load_lexicon(Path(cfg.subjective_path))
            if cfg.subjective_path
            else content_mod.default_subjective_lexicon()
        )
        self.cues = (
            tuple(social_mod.load_cues(Path(cfg.stance_cues_path)))
            if cfg.stance_cues_path
            else social_mod.default_cues()
        )
        self.sci_domains = (
            refs_mod.SciDomainSet.from_file(Path(cfg.sci_domains_path))
            if cfg.sci_domains_path
            else refs_mod.default_sci_domains()
        )
        self.taxonomy: Taxonomy = (
            Taxonomy.from_file(Path(cfg.taxonomy_path))
            if cfg.taxonomy_path
            else default_taxonomy()
        )

    # ------------------------------------------------------------------ ingest

    def ingest_posting(self, raw: dict) -> IngestOutcome:
        """Idempotent upsert keyed by post_id; enqueues unseen articles once."""
        try:
            posting = RawPosting.from_dict(raw)
            norm = normalize_url(posting.url)
        except (InvalidPosting, MalformedUrl) as exc:
            post_id = raw.get("post_id", "") if isinstance(raw, dict) else ""
            self._bump_counter("meta/rejected_postings")
            return IngestOutcome(post_id=str(post_id), status="rejected", error=exc.message)

        aid = article_id(norm)
        record = posting.to_dict()
        record["normalized_url"] = norm
        record["article_id"] = aid

        key = f"posting/{posting.post_id}"
        enqueued = False
        with self.store.transaction():
            existing = self.store.get_json(key)
            if existing is None:
                status = "stored_new"
                self.store.put_json(key, record)
            else:
                status = "updated"
                # Last-write-wins by posted_at: replays and reordered logs converge.
                if parse_utc(record["posted_at"]) >= parse_utc(existing["posted_at"]):
                    self.store.put_json(key, record)
            self.store.put(f"by_article/{aid}/{posting.post_id}", posting.post_id)
            if (
                self.store.get(f"article/{aid}") is None
                and self.store.get(f"archived/articles/{aid}") is None
                and self.store.get(f"enqueued/{aid}") is None
            ):
                self.store.put(f"enqueued/{aid}", norm)
                enqueued = True
        return IngestOutcome(post_id=posting.post_id, status=status, article_enqueued=enqueued)

    def ingest_lines(self, text: str) -> list[IngestOutcome]:
        """Newline-delimited JSON posting records, one outcome per line."""
        outcomes = []
        for lineno, line in enumerate(text.splitlines(), start=1):
            if not line.strip():
                continue
            try:
                raw = json.loads(line)
            except json.JSONDecodeError as exc:
                outcomes.append(
                    IngestOutcome(post_id="", status="rejected", error=f"line {lineno}: {exc}")
                )
                continue
            outcomes.append(self.ingest_posting(raw))
        return outcomes

    def _bump_counter(self, key: str) -> None:
        current = int(self.store.get(key) or 0)
        self.store.put(key, str(current + 1))

    def pending_fetches(self) -> list[tuple[str, str]]:
        return [(k.split("/", 1)[1], v) for k, v in self.store.scan_prefix("enqueued/")]

    def process_fetch_queue(
        self, fetcher: Fetcher = fetch_article, now: Optional[datetime] = None
    ) -> dict[str, int]:
        """Fetch + parse + store every enqueued article. Failures are recorded,
        not retried; the enqueue marker is consumed either way."""
        counts = {"fetched": 0, "failed": 0}
        for aid, url in self.pending_fetches():
            try:
                article = self._fetch_and_parse(url, fetcher, now)
                self.upsert_article(article)
                counts["fetched"] += 1
            except (FetchFailed, ParseFailed) as exc:
                self.store.put_json(f"fetch_failed/{aid}", {"url": url, "error": exc.payload()})
                counts["failed"] += 1
            self.store.delete(f"enqueued/{aid}")
        return counts

    def _fetch_and_parse(
        self, url: str, fetcher: Fetcher, now: Optional[datetime] = None
    ) -> Article:
        try:
            result = fetcher(url, self.config.fetch_timeout)
        except FetchError as exc:
            raise FetchFailed(exc.message, detail={"reason": exc.code}) from exc
        if result.status >= 400:
            raise FetchFailed(f"HTTP {result.status} for {url}", detail={"status": result.status})
        try:
            return parse_article_html(
                result.body, result.final_url, fetched_at=now or _utcnow()
            )
        except (EmptyDocument, MalformedUrl) as exc:
            raise ParseFailed(exc.message) from exc

    # ----------------------------------------------------------------- articles

    def upsert_article(self, article: Article) -> tuple[str, bool]:
        """Returns (stored|updated, recompute_scheduled)."""
        import hashlib

        key = f"article/{article.article_id}"
        record = article.to_dict()
        body_hash = hashlib.sha256(article.body.encode("utf-8")).hexdigest()
        record["body_hash"] = body_hash
        with self.store.transaction():
            existing = self.store.get_json(key)
            if existing is None:
                self.store.put_json(key, record)
                return "stored", True
            changed = existing.get("body_hash") != body_hash
            self.store.put_json(key, record)
            if changed:
                self.store.delete(f"report/{article.article_id}")
            return "updated", changed

    def get_article(self, aid: str) -> Optional[Article]:
        record = self.store.get_json(f"article/{aid}")
        if record is None:
            record = self._archived_record("articles", aid, "article_id")
        return Article.from_dict(record) if record else None

    def postings_for_article(self, aid: str) -> list[RawPosting]:
        postings = []
        for _, post_id in self.store.scan_prefix(f"by_article/{aid}/"):
            record = self.get_posting(post_id)
            if record is not None:
                postings.append(RawPosting.from_dict(record))
        return postings

    def get_posting(self, post_id: str) -> Optional[dict]:
        record = self.store.get_json(f"posting/{post_id}")
        if record is None:
            record = self._archived_record("postings", post_id, "post_id")
        return record

    def _archived_record(self, kind: str, record_id: str, id_field: str) -> Optional[dict]:
        pointer = self.store.get(f"archived/{kind}/{record_id}")
        if pointer is None:
            return None
        manifest = self.store.get_json(pointer)
        if manifest is None:
            return None
        partition = ArchivePartition.from_dict(manifest)
        for record in self.archive.read_partition(partition):
            if record.get(id_field) == record_id:
                return record
        return None

    # ------------------------------------------------------------------ reviews

    def expert_for_token(self, token: str) -> Optional[str]:
        return self.config.experts.get(token)

    def submit_review(self, payload: dict) -> ExpertReview:
        """Validate and store a review; one per (article, expert), latest wins."""
        expert_id = payload.get("expert_id", "")
        if expert_id not in self.config.experts.values():
            raise UnknownExpert(f"expert {expert_id!r} not registered")
        aid = payload.get("article_id", "")
        if self.get_article(aid) is None:
            raise UnknownArticle(f"article {aid!r} not found")
        review = ExpertReview.from_dict(payload)
        with self.store.transaction():
            self.store.put_json(f"review/{aid}/{expert_id}", review.to_dict())
            self.store.delete(f"report/{aid}")  # aggregate is stale
        return review

    def reviews_for_article(self, aid: str) -> list[ExpertReview]:
        return [
            ExpertReview.from_dict(json.loads(v))
            for _, v in self.store.scan_prefix(f"review/{aid}/")
        ]

    def review_aggregate(self, aid: str, now: Optional[datetime] = None) -> Optional[ReviewAggregate]:
        reviews = self.reviews_for_article(aid)
        if not reviews:
            return None
        return aggregate_reviews(reviews, now or _utcnow(), self.config.half_life_days)

    # ------------------------------------------------------------------ outlets

    def load_outlets(self, csv_bytes: bytes) -> list[Outlet]:
        outlets = bucket_outlets(load_outlet_ranking(csv_bytes), self.config.class_boundaries)
        with self.store.transaction():
            for outlet in outlets:
                self.store.put_json(f"outlet/{outlet.domain}", outlet.to_dict())
        return outlets

    def outlets(self) -> list[Outlet]:
        return [Outlet.from_dict(json.loads(v)) for _, v in self.store.scan_prefix("outlet/")]

    def outlet_for_domain(self, domain: str) -> Optional[Outlet]:
        record = self.store.get_json(f"outlet/{domain}")
        return Outlet.from_dict(record) if record else None

    # ------------------------------------------------------------------ reports

    def build_report(self, article: Article, now: Optional[datetime] = None) -> dict:
        """Assemble the full indicator report for a stored article."""
        now = now or _utcnow()
        topics = sorted(self.assign_topics(article))
        outlet = self.outlet_for_domain(article.outlet_domain)
        content = content_mod.content_indicators(article, self.hyperbole, self.subjective)
        context = refs_mod.context_indicators(article, self.sci_domains)
        postings = self.postings_for_article(article.article_id)
        social = social_mod.social_indicators(postings, self.cues, self.config.stance_threshold)
        aggregate = self.review_aggregate(article.article_id, now)
        return {
            "article": {
                "id": article.article_id,
                "url": article.url,
                "outlet": article.outlet_domain,
                "title": article.title,
                "byline": article.byline,
                "topics": topics,
                "rating_class": outlet.rating_class.value if outlet and outlet.rating_class else None,
            },
            "content": {"available": True, **content.to_dict()},
            "context": {"available": True, **context.to_dict()},
            "social": {"available": True, **social.to_dict()},
            "reviews": (
                {"available": True, **aggregate.to_dict()}
                if aggregate
                else {"available": False, "reason": "no reviews yet"}
            ),
            "computed_at": iso_utc(now),
        }

    def assign_topics(self, article: Article) -> set[str]:
        from .segmentation import assign_topics

        return assign_topics(article, self.taxonomy)

    def report_for_article(self, aid: str, now: Optional[datetime] = None) -> Optional[str]:
        """Canonical JSON report for a stored article, or None if unknown."""
        article = self.get_article(aid)
        if article is None:
            return None
        return canonical_json(self.build_report(article, now))

    def evaluate_url(
        self,
        url: str,
        fetcher: Fetcher = fetch_article,
        now: Optional[datetime] = None,
    ) -> str:
        """Fetch, parse, compute, and cache; byte-identical within the TTL."""
        now = now or _utcnow()
        norm = normalize_url(url)
        aid = article_id(norm)
        cached = self.store.get_json(f"report/{aid}")
        if cached is not None:
            age = now.timestamp() - cached["computed_at_epoch"]
            if 0 <= age < self.config.report_ttl_seconds:
                return cached["body"]
        article = self._fetch_and_parse(norm, fetcher, now)
        self.upsert_article(article)
        body = canonical_json(self.build_report(article, now))
        self.store.put_json(
            f"report/{article.article_id}",
            {"computed_at_epoch": now.timestamp(), "body": body},
        )
        if article.article_id != aid:
            # Redirect changed the identity; cache under the requested URL too.
            self.store.put_json(
                f"report/{aid}", {"computed_at_epoch": now.timestamp(), "body": body}
            )
        self.store.delete(f"enqueued/{aid}")
        return body

    # ---------------------------------------------------------------- migration

    def migrate_day(self, cutoff_days: int, now: Optional[datetime] = None) -> MigrationReport:
        """Move postings/articles older than the cutoff into archive partitions.

        Idempotent: records already archived are gone from the hot store, so
        a rerun moves nothing. Each (kind, date) batch is written to its own
        epoch-stamped file and committed in one transaction, so a crash
        between file write and commit at worst leaves an orphan file.
        """
        if cutoff_days < 1:
            raise ValueError("cutoff_days must be >= 1")
        now = now or _utcnow()
        cutoff_date = (now - timedelta(days=cutoff_days)).date()
        epoch = int(self.store.get("meta/epoch") or 0) + 1

        moved: dict[str, int] = {"postings": 0, "articles": 0}
        failures: dict[str, str] = {}
        plans = [
            ("postings", "posting/", "posted_at", "post_id"),
            ("articles", "article/", "fetched_at", "article_id"),
        ]
        for kind, prefix, ts_field, id_field in plans:
            try:
                batches: dict[str, list[dict]] = {}
                for key, value in self.store.scan_prefix(prefix):
                    record = json.loads(value)
                    ts = record.get(ts_field)
                    if not ts:
                        continue
                    day = parse_utc(ts).date()
                    if day < cutoff_date:
                        batches.setdefault(day.isoformat(), []).append(record)
                for day, records in sorted(batches.items()):
                    records.sort(key=lambda r: r[id_field])
                    partition = self.archive.write_partition(kind, day, epoch, records)
                    manifest_key = f"partition/{kind}/{day}/{epoch:06d}"
                    with self.store.transaction():
                        self.store.put_json(manifest_key, partition.to_dict())
                        for record in records:
                            rid = record[id_field]
                            self.store.put(f"archived/{kind}/{rid}", manifest_key)
                            self.store.delete(f"{prefix}{rid}")
                        moved[kind] += len(records)
            except Exception as exc:  # per-kind isolation; other kinds proceed
                logger.exception("migration failed for %s", kind)
                failures[kind] = str(exc)
        self.store.put("meta/epoch", str(epoch))
        if failures:
            raise PartialMigration("migration incomplete", moved=moved, failures=failures)
        return MigrationReport(epoch=epoch, moved=moved)

    # ---------------------------------------------------------------- analytics

    def iter_postings(self) -> Iterator[dict]:
        for _, value in self.store.scan_prefix("posting/"):
            yield json.loads(value)
        yield from self._iter_archived("postings")

    def iter_articles(self) -> Iterator[dict]:
        for _, value in self.store.scan_prefix("article/"):
            yield json.loads(value)
        yield from self._iter_archived("articles")

    def _iter_archived(self, kind: str) -> Iterator[dict]:
        for _, manifest in self.store.scan_prefix(f"partition/{kind}/"):
            partition = ArchivePartition.from_dict(json.loads(manifest))
            yield from self.archive.read_partition(partition)

    def build_snapshot(self) -> CorpusSnapshot:
        """Join postings, articles, topics, and outlets for analytics."""
        articles: dict[str, Article] = {}
        topics_cache: dict[str, frozenset[str]] = {}
        ratios: dict[str, float] = {}
        reach: dict[str, int] = {}
        for record in self.iter_articles():
            article = Article.from_dict(record)
            articles[article.article_id] = article
            topics_cache[article.article_id] = frozenset(self.assign_topics(article))
            ratios[article.article_id] = refs_mod.context_indicators(
                article, self.sci_domains
            ).sci_ref_ratio

        day_counts: dict[tuple[str, date], tuple[dict[str, int], int]] = {}
        for record in self.iter_postings():
            aid = record.get("article_id")
            article = articles.get(aid)
            if article is None:
                continue
            posting = RawPosting.from_dict(record)
            reach[aid] = reach.get(aid, 0) + posting.reaction_total
            key = (article.outlet_domain, posting.posted_at.date())
            topic_counts, total = day_counts.get(key, ({}, 0))
            for topic in topics_cache[aid]:
                topic_counts[topic] = topic_counts.get(topic, 0) + 1
            day_counts[key] = (topic_counts, total + 1)

        outlets_by_class: dict[RatingClass, tuple[str, ...]] = {}
        for outlet in self.outlets():
            if outlet.rating_class is None:
                continue
            outlets_by_class.setdefault(outlet.rating_class, ())
            outlets_by_class[outlet.rating_class] += (outlet.domain,)

        metrics = {
            aid: (topics_cache[aid], ratios[aid], reach.get(aid, 0)) for aid in articles
        }
        return CorpusSnapshot(
            day_counts=day_counts,
            article_metrics=metrics,
            outlets_by_class=outlets_by_class,
        )

    def activity_series(
        self,
        topic: str,
        rating_class: str | RatingClass,
        window: tuple[date, date],
        snapshot: Optional[CorpusSnapshot] = None,
    ) -> ActivitySeries:
        try:
            cls = RatingClass(rating_class) if isinstance(rating_class, str) else rating_class
        except ValueError:
            raise UnknownClass(f"unknown rating class {rating_class!r}") from None
        snapshot = snapshot or self.build_snapshot()
        return class_activity_series(snapshot, cls, topic, window)

    def topic_density(
        self,
        topic: str,
        metric: str | DensityMetric,
        log_scale: bool = False,
        snapshot: Optional[CorpusSnapshot] = None,
        include_zero_reference_articles: bool = True,
    ) -> DensityCurve:
        metric = DensityMetric(metric) if isinstance(metric, str) else metric
        snapshot = snapshot or self.build_snapshot()
        samples = []
        for aid, (topics, ratio, article_reach) in snapshot.article_metrics.items():
            if topic not in topics:
                continue
            if metric is DensityMetric.REACTIONS:
                samples.append(float(article_reach))
            else:
                if not include_zero_reference_articles:
                    article = self.get_article(aid)
                    if article is not None and not article.references:
                        continue
                samples.append(ratio)
        return density_curve(samples, metric, log_scale=log_scale)

    # ------------------------------------------------------------------- misc

    def snapshot_hash(self) -> str:
        return self.store.snapshot_hash()

    def health(self) -> dict:
        store_ok = True
        try:
            self.store.get("meta/epoch")
        except Exception:
            store_ok = False
        return {
            "status": "ok" if store_ok else "degraded",
            "store": store_ok,
            "assets": {
                "hyperbole_terms": len(self.hyperbole),
                "subjective_terms": len(self.subjective),
                "stance_cues": len(self.cues),
                "sci_domains": len(self.sci_domains.domains),
                "taxonomy_nodes": len(self.taxonomy.nodes),
            },
        }

    def close(self) -> None:
        self.store.close()
