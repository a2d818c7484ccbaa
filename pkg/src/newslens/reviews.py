"""Expert reviews: seven-criterion Likert scores with time-decayed aggregation.

Aggregation uses exponential half-life decay: a review's weight halves
every ``half_life_days`` days of age. One review per (article, expert);
resubmission replaces the prior review.
"""

from __future__ import annotations

from dataclasses import dataclass
from datetime import datetime
from typing import Optional, Sequence

from .errors import InvalidScore, NoReviews
from .models import iso_utc, parse_utc

CRITERIA = (
    "factual_accuracy",
    "scientific_understanding",
    "logic_reasoning",
    "precision_clarity",
    "sources_quality",
    "fairness",
    "clickbaitness",
)

LIKERT_MIN = 1
LIKERT_MAX = 5

DEFAULT_HALF_LIFE_DAYS = 30.0

_SECONDS_PER_DAY = 86400.0


@dataclass(frozen=True)
class ExpertReview:
    review_id: str
    article_id: str
    expert_id: str
    scores: dict[str, int]
    created_at: datetime
    free_text: Optional[str] = None

    def __post_init__(self):
        validate_scores(self.scores)

    def to_dict(self) -> dict:
        return {
            "review_id": self.review_id,
            "article_id": self.article_id,
            "expert_id": self.expert_id,
            "scores": dict(self.scores),
            "free_text": self.free_text,
            "created_at": iso_utc(self.created_at),
        }

    @classmethod
    def from_dict(cls, d: dict) -> "ExpertReview":
        return cls(
            review_id=d["review_id"],
            article_id=d["article_id"],
            expert_id=d["expert_id"],
            scores={k: int(v) for k, v in d["scores"].items()},
            free_text=d.get("free_text"),
            created_at=parse_utc(d["created_at"]),
        )


def validate_scores(scores: dict) -> None:
    """All seven criteria present, each an integer in 1..5."""
    if not isinstance(scores, dict):
        raise InvalidScore("scores must be a map of criterion -> 1..5")
    for criterion in CRITERIA:
        if criterion not in scores:
            raise InvalidScore(f"missing criterion: {criterion}")
        value = scores[criterion]
        if not isinstance(value, int) or isinstance(value, bool) or not LIKERT_MIN <= value <= LIKERT_MAX:
            raise InvalidScore(f"{criterion}={value!r} outside {LIKERT_MIN}..{LIKERT_MAX}")
    extras = set(scores) - set(CRITERIA)
    if extras:
        raise InvalidScore(f"unknown criteria: {sorted(extras)}")


@dataclass(frozen=True)
class ReviewAggregate:
    criterion_means: dict[str, float]
    overall: float
    review_count: int
    as_of: datetime

    def to_dict(self) -> dict:
        return {
            "criterion_means": dict(self.criterion_means),
            "overall": self.overall,
            "review_count": self.review_count,
            "as_of": iso_utc(self.as_of),
        }


def aggregate_reviews(
    reviews: Sequence[ExpertReview],
    now: datetime,
    half_life_days: float = DEFAULT_HALF_LIFE_DAYS,
) -> ReviewAggregate:
    """Weighted, time-sensitive average of reviews.

    Weight of review i is 2^(-age_days / half_life_days), age clamped at 0.
    Overall score is the unweighted mean of the seven criterion means.
    """
    if not reviews:
        raise NoReviews("cannot aggregate zero reviews")
    if half_life_days <= 0:
        raise ValueError("half_life_days must be positive")
    now = parse_utc(now)
    weights = []
    for review in reviews:
        age_days = max((now - parse_utc(review.created_at)).total_seconds() / _SECONDS_PER_DAY, 0.0)
        weights.append(2.0 ** (-age_days / half_life_days))
    total_weight = sum(weights)
    means = {
        criterion: sum(w * r.scores[criterion] for w, r in zip(weights, reviews)) / total_weight
        for criterion in CRITERIA
    }
    overall = sum(means.values()) / len(CRITERIA)
    return ReviewAggregate(
        criterion_means=means,
        overall=overall,
        review_count=len(reviews),
        as_of=now,
    )
