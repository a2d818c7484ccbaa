"""Content quality indicators: clickbait, readability, subjectivity, byline.

All scores are deterministic heuristics behind small, swappable surfaces;
a trained model can replace any of them without touching callers. The
syllable counter is the usual vowel-group approximation with a silent-e
rule, documented as approximate.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources
from pathlib import Path
from typing import Iterable, Optional

from .errors import EmptyTitle, NoWords
from .models import Article

CLICKBAIT_WEIGHT_TOTAL = 11

SECOND_PERSON = frozenset({"you", "your", "yours", "you're", "youre", "yourself", "yourselves"})
FORWARD_DEMONSTRATIVES = frozenset({"this", "these", "here's", "heres"})
GENERIC_STAFF = frozenset({"staff", "admin", "newsroom"})

_ALLCAPS_RE = re.compile(r"\b[A-Z]{3,}\b")
_TOKEN_RE = re.compile(r"[a-z']+")
_ALPHA_TOKEN_RE = re.compile(r"[a-z]+")
_SENTENCE_RE = re.compile(r"[.!?]+")
_VOWEL_GROUP_RE = re.compile(r"[aeiouy]+")


def load_lexicon(path: Path) -> frozenset[str]:
    """One lowercase term per line, UTF-8; blank lines and # comments skipped."""
    terms = []
    for line in path.read_text(encoding="utf-8").splitlines():
        term = line.strip().lower()
        if term and not term.startswith("#"):
            terms.append(term)
    return frozenset(terms)


def _asset_lexicon(name: str) -> frozenset[str]:
    text = resources.files("newslens.assets").joinpath(name).read_text(encoding="utf-8")
    return frozenset(
        t.strip().lower() for t in text.splitlines() if t.strip() and not t.startswith("#")
    )


@lru_cache(maxsize=1)
def default_hyperbole_lexicon() -> frozenset[str]:
    return _asset_lexicon("hyperbole.txt")


@lru_cache(maxsize=1)
def default_subjective_lexicon() -> frozenset[str]:
    return _asset_lexicon("subjective.txt")


def _phrase_in(phrase: str, text: str) -> bool:
    """Phrase match on token boundaries in lowercased text."""
    pattern = r"(?<![a-z0-9])" + re.escape(phrase) + r"(?![a-z0-9])"
    return re.search(pattern, text) is not None


def clickbait_score(title: str, hyperbole: Optional[frozenset[str]] = None) -> float:
    """Weighted sensational-feature score in [0, 1]; each feature counts once."""
    if not title or not title.strip():
        raise EmptyTitle("title empty after trimming")
    if hyperbole is None:
        hyperbole = default_hyperbole_lexicon()

    stripped = title.strip()
    lower = stripped.lower()
    tokens = _TOKEN_RE.findall(lower)

    score = 0
    if any(t in SECOND_PERSON for t in tokens):
        score += 2
    if tokens and tokens[0] in FORWARD_DEMONSTRATIVES:
        score += 2
    if stripped[0].isdigit():
        score += 1
    if "?" in stripped:
        score += 1
    if any(_phrase_in(term, lower) for term in hyperbole):
        score += 3
    if _ALLCAPS_RE.search(stripped):
        score += 1
    if "!" in stripped or "…" in stripped:
        score += 1
    return score / CLICKBAIT_WEIGHT_TOTAL


def count_syllables(word: str) -> int:
    """Vowel-group count with a silent-e adjustment; at least 1 per word."""
    letters = "".join(c for c in word.lower() if c.isalpha())
    if not letters:
        return 1
    n = len(_VOWEL_GROUP_RE.findall(letters))
    if letters.endswith("e") and not letters.endswith("le") and n > 1:
        n -= 1
    return max(n, 1)


def readability_score(body: str) -> float:
    """Flesch Reading Ease: 206.835 - 1.015*(words/sentences) - 84.6*(syllables/words)."""
    words = [t for t in body.split() if any(c.isalpha() for c in t)]
    if not words:
        raise NoWords("body contains no words")
    sentences = max(len(_SENTENCE_RE.findall(body)), 1)
    syllables = sum(count_syllables(w) for w in words)
    return 206.835 - 1.015 * (len(words) / sentences) - 84.6 * (syllables / len(words))


def subjectivity_score(body: str, lexicon: Optional[Iterable[str]] = None) -> float:
    """Fraction of lowercase alphabetic tokens found in the subjective lexicon."""
    if lexicon is None:
        lexicon = default_subjective_lexicon()
    lexicon = frozenset(lexicon)
    tokens = _ALPHA_TOKEN_RE.findall(body.lower())
    if not tokens:
        raise NoWords("body has no alphabetic tokens")
    hits = sum(1 for t in tokens if t in lexicon)
    return hits / len(tokens)


def detect_byline(article: Article) -> bool:
    byline = (article.byline or "").strip()
    return bool(byline) and byline.lower() not in GENERIC_STAFF


@dataclass(frozen=True)
class ContentIndicators:
    clickbait: float
    readability_fre: float
    subjectivity: float
    has_byline: bool

    def to_dict(self) -> dict:
        return {
            "clickbait": self.clickbait,
            "readability_fre": self.readability_fre,
            "subjectivity": self.subjectivity,
            "has_byline": self.has_byline,
        }


def content_indicators(
    article: Article,
    hyperbole: Optional[frozenset[str]] = None,
    subjective: Optional[frozenset[str]] = None,
) -> ContentIndicators:
    """All content indicators for one article. Unscorable fields degrade to 0."""
    try:
        clickbait = clickbait_score(article.title, hyperbole)
    except EmptyTitle:
        clickbait = 0.0
    try:
        readability = readability_score(article.body)
    except NoWords:
        readability = 0.0
    try:
        subjectivity = subjectivity_score(article.body, subjective)
    except NoWords:
        subjectivity = 0.0
    return ContentIndicators(
        clickbait=clickbait,
        readability_fre=readability,
        subjectivity=subjectivity,
        has_byline=detect_byline(article),
    )
