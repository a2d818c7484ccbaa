"""Reference classification: internal vs external vs scientific links.

Precedence is Internal > Scientific > External, so an outlet that is
itself on the scientific list still classifies its self-links as
internal. The ratio denominator includes all references; articles with
none score 0 with ``has_references`` false.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from importlib import resources
from pathlib import Path

from .errors import InvalidHost, MalformedUrl
from .models import Article, ReferenceLink
from .urls import host_of, registrable_domain

logger = logging.getLogger(__name__)


class ReferenceClass(Enum):
    INTERNAL = "internal"
    EXTERNAL = "external"
    SCIENTIFIC = "scientific"


@dataclass(frozen=True)
class SciDomainSet:
    """Scientific-domain list: exact registrable domains plus suffix patterns."""

    domains: frozenset[str]
    suffixes: tuple[str, ...]

    @classmethod
    def from_lines(cls, lines) -> "SciDomainSet":
        domains, suffixes = [], []
        for line in lines:
            entry = line.strip().lower()
            if not entry or entry.startswith("#"):
                continue
            if entry.startswith("."):
                suffixes.append(entry)
            else:
                domains.append(entry)
        return cls(domains=frozenset(domains), suffixes=tuple(suffixes))

    @classmethod
    def from_file(cls, path: Path) -> "SciDomainSet":
        return cls.from_lines(path.read_text(encoding="utf-8").splitlines())

    def matches(self, host: str) -> bool:
        host = host.lower()
        labels = host.split(".")
        # Academic host conventions: *.edu and *.ac.<cc> are always scientific.
        if len(labels) >= 2 and (labels[-1] == "edu" or labels[-2] == "ac"):
            return True
        if registrable_domain(host) in self.domains:
            return True
        return any(host.endswith(suffix) for suffix in self.suffixes)


@lru_cache(maxsize=1)
def default_sci_domains() -> SciDomainSet:
    text = resources.files("newslens.assets").joinpath("sci_domains.txt").read_text(encoding="utf-8")
    return SciDomainSet.from_lines(text.splitlines())


def classify_reference(
    article_domain: str, ref: ReferenceLink, sci_domains: SciDomainSet
) -> ReferenceClass:
    """One class per reference; precedence Internal > Scientific > External."""
    host = host_of(ref.href)
    if registrable_domain(host) == article_domain.lower():
        return ReferenceClass.INTERNAL
    if sci_domains.matches(host):
        return ReferenceClass.SCIENTIFIC
    return ReferenceClass.EXTERNAL


@dataclass(frozen=True)
class ContextIndicators:
    internal: int
    external: int
    scientific: int
    sci_ref_ratio: float
    has_references: bool

    def to_dict(self) -> dict:
        return {
            "internal": self.internal,
            "external": self.external,
            "scientific": self.scientific,
            "sci_ref_ratio": self.sci_ref_ratio,
            "has_references": self.has_references,
        }


def _sci_ratio(internal: int, external: int, scientific: int) -> float:
    # Denominator deliberately counts all references; isolated here so the
    # alternative (exclude internal) is a one-line change.
    total = internal + external + scientific
    return scientific / total if total else 0.0


def context_indicators(article: Article, sci_domains: SciDomainSet | None = None) -> ContextIndicators:
    """Classify every reference and compute the scientific-references ratio."""
    if sci_domains is None:
        sci_domains = default_sci_domains()
    counts = {cls: 0 for cls in ReferenceClass}
    for ref in article.references:
        try:
            counts[classify_reference(article.outlet_domain, ref, sci_domains)] += 1
        except (InvalidHost, MalformedUrl) as exc:
            logger.warning("unclassifiable reference %s: %s", ref.href, exc)
            counts[ReferenceClass.EXTERNAL] += 1
    internal = counts[ReferenceClass.INTERNAL]
    external = counts[ReferenceClass.EXTERNAL]
    scientific = counts[ReferenceClass.SCIENTIFIC]
    total = internal + external + scientific
    return ContextIndicators(
        internal=internal,
        external=external,
        scientific=scientific,
        sci_ref_ratio=_sci_ratio(internal, external, scientific),
        has_references=total > 0,
    )
