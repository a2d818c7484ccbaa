"""Core domain records and their (de)serialization.

All records serialize to plain dicts with snake_case keys so they can be
stored as canonical JSON and shipped over the wire unchanged.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from datetime import datetime, timezone
from typing import Optional

from .errors import InvalidPosting

REACTION_KINDS = ("shares", "likes", "replies")


def parse_utc(value: str | datetime) -> datetime:
    """Parse an ISO-8601 timestamp into an aware UTC datetime (seconds precision)."""
    if isinstance(value, datetime):
        dt = value
    else:
        dt = datetime.fromisoformat(value.replace("Z", "+00:00"))
    if dt.tzinfo is None:
        dt = dt.replace(tzinfo=timezone.utc)
    return dt.astimezone(timezone.utc).replace(microsecond=0)


def iso_utc(dt: datetime) -> str:
    return parse_utc(dt).strftime("%Y-%m-%dT%H:%M:%SZ")


def canonical_json(obj) -> str:
    """Deterministic serialization: sorted keys, compact separators."""
    return json.dumps(obj, sort_keys=True, separators=(",", ":"), ensure_ascii=False)


@dataclass(frozen=True)
class RawPosting:
    post_id: str
    outlet_hint: str
    url: str
    text: str
    reactions: dict[str, int]
    posted_at: datetime

    @classmethod
    def from_dict(cls, raw: dict) -> "RawPosting":
        if not isinstance(raw, dict):
            raise InvalidPosting("posting record must be an object")
        post_id = raw.get("post_id")
        if not isinstance(post_id, str) or not post_id:
            raise InvalidPosting("post_id missing or empty")
        url = raw.get("url")
        if not isinstance(url, str) or not url:
            raise InvalidPosting("url missing or empty")
        reactions = raw.get("reactions") or {}
        if not isinstance(reactions, dict):
            raise InvalidPosting("reactions must be a map")
        counts: dict[str, int] = {}
        for kind in REACTION_KINDS:
            v = reactions.get(kind, 0)
            if v is None:
                v = 0
            if not isinstance(v, int) or isinstance(v, bool) or v < 0:
                raise InvalidPosting(f"reaction count {kind}={v!r} must be a non-negative integer")
            counts[kind] = v
        try:
            posted_at = parse_utc(raw.get("posted_at", ""))
        except (ValueError, TypeError, AttributeError) as exc:
            raise InvalidPosting(f"posted_at unparseable: {raw.get('posted_at')!r}") from exc
        return cls(
            post_id=post_id,
            outlet_hint=str(raw.get("outlet_hint") or ""),
            url=url,
            text=str(raw.get("text") or ""),
            reactions=counts,
            posted_at=posted_at,
        )

    def to_dict(self) -> dict:
        return {
            "post_id": self.post_id,
            "outlet_hint": self.outlet_hint,
            "url": self.url,
            "text": self.text,
            "reactions": dict(self.reactions),
            "posted_at": iso_utc(self.posted_at),
        }

    @property
    def reaction_total(self) -> int:
        return sum(self.reactions.get(k, 0) for k in REACTION_KINDS)


@dataclass(frozen=True)
class ReferenceLink:
    href: str
    anchor_text: str
    position: int

    def to_dict(self) -> dict:
        return {"href": self.href, "anchor_text": self.anchor_text, "position": self.position}

    @classmethod
    def from_dict(cls, d: dict) -> "ReferenceLink":
        return cls(href=d["href"], anchor_text=d.get("anchor_text", ""), position=int(d.get("position", 0)))


@dataclass
class Article:
    article_id: str
    url: str
    outlet_domain: str
    title: str
    body: str
    byline: Optional[str] = None
    published_at: Optional[datetime] = None
    references: list[ReferenceLink] = field(default_factory=list)
    fetched_at: Optional[datetime] = None

    def to_dict(self) -> dict:
        return {
            "article_id": self.article_id,
            "url": self.url,
            "outlet_domain": self.outlet_domain,
            "title": self.title,
            "body": self.body,
            "byline": self.byline,
            "published_at": iso_utc(self.published_at) if self.published_at else None,
            "references": [r.to_dict() for r in self.references],
            "fetched_at": iso_utc(self.fetched_at) if self.fetched_at else None,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "Article":
        return cls(
            article_id=d["article_id"],
            url=d["url"],
            outlet_domain=d["outlet_domain"],
            title=d.get("title", ""),
            body=d.get("body", ""),
            byline=d.get("byline"),
            published_at=parse_utc(d["published_at"]) if d.get("published_at") else None,
            references=[ReferenceLink.from_dict(r) for r in d.get("references", [])],
            fetched_at=parse_utc(d["fetched_at"]) if d.get("fetched_at") else None,
        )
