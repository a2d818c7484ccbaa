"""Social-media indicators: reach and stance per article.

Stance is cue-lexicon based (support vs doubt terms) with a Neutral band
for zero-signal texts. Per-article aggregation weights each posting by
1 + reach, so a widely shared doubting post outweighs an unseen
supporting one while zero-reach posts still count.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from importlib import resources
from pathlib import Path
from typing import Iterable, Sequence

from .errors import LengthMismatch
from .models import RawPosting

DEFAULT_STANCE_THRESHOLD = 0.2


class Polarity(Enum):
    SUPPORT = "support"
    DOUBT = "doubt"


class StanceLabel(Enum):
    POSITIVE = "positive"
    NEGATIVE = "negative"
    NEUTRAL = "neutral"


@dataclass(frozen=True)
class StanceCue:
    term: str
    polarity: Polarity


def load_cues(path: Path) -> list[StanceCue]:
    """Cue file: ``term<TAB>support|doubt``, one per line, UTF-8."""
    return _parse_cues(path.read_text(encoding="utf-8").splitlines())


def _parse_cues(lines: Iterable[str]) -> list[StanceCue]:
    cues: list[StanceCue] = []
    seen: set[str] = set()
    for line in lines:
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        term, _, polarity = line.partition("\t")
        term = term.strip().lower()
        if not term or term in seen:
            continue
        seen.add(term)
        cues.append(StanceCue(term=term, polarity=Polarity(polarity.strip().lower())))
    return cues


@lru_cache(maxsize=1)
def default_cues() -> tuple[StanceCue, ...]:
    text = resources.files("newslens.assets").joinpath("stance_cues.tsv").read_text(encoding="utf-8")
    return tuple(_parse_cues(text.splitlines()))


def compute_reach(postings: Sequence[RawPosting]) -> int:
    """Sum of shares + likes + replies across postings; absent counts are 0."""
    return sum(p.reaction_total for p in postings)


def stance_of_posting(text: str, cues: Sequence[StanceCue] | None = None) -> float:
    """(support hits - doubt hits) / total hits; 0 when no cue matches.

    Cues match as substrings on token boundaries of the lowercased text,
    each cue at most once.
    """
    if cues is None:
        cues = default_cues()
    lower = text.lower()
    support = doubt = 0
    for cue in cues:
        pattern = r"(?<![a-z0-9])" + re.escape(cue.term) + r"(?![a-z0-9])"
        if re.search(pattern, lower):
            if cue.polarity is Polarity.SUPPORT:
                support += 1
            else:
                doubt += 1
    total = support + doubt
    return (support - doubt) / total if total else 0.0


@dataclass(frozen=True)
class SocialIndicators:
    reach: int
    posting_count: int
    stance_score: float
    stance_label: StanceLabel

    def to_dict(self) -> dict:
        return {
            "reach": self.reach,
            "posting_count": self.posting_count,
            "stance_score": self.stance_score,
            "stance_label": self.stance_label.value,
        }


def label_for(score: float, threshold: float) -> StanceLabel:
    if score > threshold:
        return StanceLabel.POSITIVE
    if score < -threshold:
        return StanceLabel.NEGATIVE
    return StanceLabel.NEUTRAL


def aggregate_stance(
    scores: Sequence[float],
    reaches: Sequence[int],
    threshold: float = DEFAULT_STANCE_THRESHOLD,
) -> tuple[float, StanceLabel]:
    """Reach-weighted mean stance with weights 1 + reach; empty input is Neutral."""
    if len(scores) != len(reaches):
        raise LengthMismatch(f"{len(scores)} scores vs {len(reaches)} reaches")
    if not 0 < threshold < 1:
        raise ValueError("stance threshold must be in (0, 1)")
    if not scores:
        return 0.0, StanceLabel.NEUTRAL
    weights = [1 + r for r in reaches]
    score = sum(w * s for w, s in zip(weights, scores)) / sum(weights)
    return score, label_for(score, threshold)


def social_indicators(
    postings: Sequence[RawPosting],
    cues: Sequence[StanceCue] | None = None,
    threshold: float = DEFAULT_STANCE_THRESHOLD,
) -> SocialIndicators:
    """Full per-article social rollup from its postings."""
    scores = [stance_of_posting(p.text, cues) for p in postings]
    reaches = [p.reaction_total for p in postings]
    stance_score, label = aggregate_stance(scores, reaches, threshold)
    return SocialIndicators(
        reach=compute_reach(postings),
        posting_count=len(postings),
        stance_score=stance_score,
        stance_label=label,
    )
