"""Topic-level analytics: daily activity series and kernel density estimates.

All functions are pure over an immutable corpus snapshot. KDE uses a
Gaussian kernel evaluated directly (no FFT shortcuts) with Silverman's
bandwidth rule; the reactions metric can optionally run on a
log10(1 + x) scale.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from datetime import date, timedelta
from enum import Enum
from typing import Optional, Sequence

import numpy as np

from .errors import EmptySample, NonpositiveBandwidth, UnknownClass
from .segmentation import RatingClass

KDE_GRID_POINTS = 256
GRID_BANDWIDTH_MARGIN = 5.0  # grid spans [min - 5h, max + 5h]


class DensityMetric(Enum):
    REACTIONS = "reactions"
    SCI_REF_RATIO = "sci_ref_ratio"


@dataclass(frozen=True)
class CorpusSnapshot:
    """Join of postings, articles, topics, and outlets, frozen for analytics.

    day_counts maps (outlet_domain, date) -> (on-topic posting count by
    topic, total posting count). article_metrics maps article_id ->
    (topics, sci_ref_ratio, reach).
    """

    day_counts: dict[tuple[str, date], tuple[dict[str, int], int]]
    article_metrics: dict[str, tuple[frozenset[str], float, int]]
    outlets_by_class: dict[RatingClass, tuple[str, ...]]


def daily_topic_share(
    snapshot: CorpusSnapshot, outlet: str, day: date, topic: str
) -> Optional[float]:
    """Percentage of the outlet's postings that day on the topic; None if no postings."""
    topic_counts, total = snapshot.day_counts.get((outlet, day), ({}, 0))
    if total == 0:
        return None
    return 100.0 * topic_counts.get(topic, 0) / total


@dataclass(frozen=True)
class ActivitySeries:
    rating_class: RatingClass
    points: tuple[tuple[date, Optional[float]], ...]  # None marks a gap day
    window: tuple[date, date]

    def to_dict(self) -> dict:
        return {
            "rating_class": self.rating_class.value,
            "points": [
                {"date": d.isoformat(), "mean_pct": pct} for d, pct in self.points
            ],
            "window": {"from": self.window[0].isoformat(), "to": self.window[1].isoformat()},
        }


def class_activity_series(
    snapshot: CorpusSnapshot,
    rating_class: RatingClass,
    topic: str,
    window: tuple[date, date],
    rolling_7day: bool = False,
) -> ActivitySeries:
    """Per-day unweighted mean of defined outlet shares for one rating class."""
    outlets = snapshot.outlets_by_class.get(rating_class)
    if outlets is None:
        raise UnknownClass(f"no outlets known for class {rating_class!r}")
    start, end = window
    if start > end:
        raise ValueError(f"empty window: {window}")
    points: list[tuple[date, Optional[float]]] = []
    day = start
    while day <= end:
        shares = [
            s
            for s in (daily_topic_share(snapshot, o, day, topic) for o in outlets)
            if s is not None
        ]
        points.append((day, sum(shares) / len(shares) if shares else None))
        day += timedelta(days=1)
    if rolling_7day:
        points = _centered_rolling_mean(points, 7)
    return ActivitySeries(rating_class=rating_class, points=tuple(points), window=window)


def _centered_rolling_mean(
    points: list[tuple[date, Optional[float]]], width: int
) -> list[tuple[date, Optional[float]]]:
    half = width // 2
    out = []
    for i, (day, value) in enumerate(points):
        if value is None:
            out.append((day, None))
            continue
        vals = [v for _, v in points[max(0, i - half): i + half + 1] if v is not None]
        out.append((day, sum(vals) / len(vals)))
    return out


def silverman_bandwidth(samples: Sequence[float]) -> float:
    """0.9 * min(sd, IQR/1.349) * n^(-1/5), with a floor for degenerate samples."""
    n = len(samples)
    if n == 0:
        raise EmptySample("bandwidth of an empty sample")
    x = np.asarray(samples, dtype=float)
    sd = float(np.std(x, ddof=1)) if n > 1 else 0.0
    q25, q75 = np.percentile(x, [25, 75])  # linear interpolation
    spread = min(sd, (q75 - q25) / 1.349)
    h = 0.9 * spread * n ** (-0.2)
    if h <= 0 or not math.isfinite(h):
        h = max(1e-3, 1e-3 * abs(float(np.mean(x))))
    return h


@dataclass(frozen=True)
class DensityCurve:
    metric: DensityMetric
    grid: tuple[float, ...]
    density: tuple[float, ...]
    bandwidth: float
    n: int
    log_scale: bool = False

    def to_dict(self) -> dict:
        return {
            "metric": self.metric.value,
            "grid": list(self.grid),
            "density": list(self.density),
            "bandwidth": self.bandwidth,
            "n": self.n,
            "log_scale": self.log_scale,
        }


def kde_estimate(
    samples: Sequence[float],
    grid: Sequence[float],
    bandwidth: float,
    metric: DensityMetric = DensityMetric.SCI_REF_RATIO,
    log_scale: bool = False,
) -> DensityCurve:
    """Gaussian KDE evaluated directly on the grid.

    f(x) = (1/(n*h)) * sum_i exp(-((x - x_i)/h)^2 / 2) / sqrt(2*pi)
    """
    n = len(samples)
    if n == 0:
        raise EmptySample("KDE of an empty sample")
    if bandwidth <= 0:
        raise NonpositiveBandwidth(f"bandwidth {bandwidth} must be positive")
    grid_arr = np.asarray(grid, dtype=float)
    if grid_arr.ndim != 1 or np.any(np.diff(grid_arr) < 0):
        raise ValueError("grid must be a sorted 1-D sequence")
    x = np.asarray(samples, dtype=float)
    u = (grid_arr[:, None] - x[None, :]) / bandwidth
    density = np.exp(-0.5 * u * u).sum(axis=1) / (n * bandwidth * math.sqrt(2 * math.pi))
    return DensityCurve(
        metric=metric,
        grid=tuple(float(g) for g in grid_arr),
        density=tuple(float(d) for d in density),
        bandwidth=bandwidth,
        n=n,
        log_scale=log_scale,
    )


def density_curve(
    samples: Sequence[float],
    metric: DensityMetric,
    log_scale: bool = False,
    grid_points: int = KDE_GRID_POINTS,
) -> DensityCurve:
    """Bandwidth selection + default grid + KDE in one call.

    With log_scale (reactions only), samples are transformed to
    log10(1 + x) and the grid lives on the transformed axis.
    """
    if not samples:
        raise EmptySample("no samples for density curve")
    values = [math.log10(1 + s) for s in samples] if log_scale else list(samples)
    h = silverman_bandwidth(values)
    lo = min(values) - GRID_BANDWIDTH_MARGIN * h
    hi = max(values) + GRID_BANDWIDTH_MARGIN * h
    grid = np.linspace(lo, hi, grid_points)
    return kde_estimate(values, grid, h, metric=metric, log_scale=log_scale)
