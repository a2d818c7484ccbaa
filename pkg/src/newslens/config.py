"""Platform configuration: store paths, asset overrides, and tunables."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

from .errors import ConfigInvalid

DEFAULT_REPORT_TTL_SECONDS = 15 * 60
DEFAULT_CUTOFF_DAYS = 30


@dataclass
class Config:
    store_path: str = ":memory:"
    archive_dir: str = "archive"
    # Asset overrides; None means the bundled default.
    hyperbole_path: Optional[str] = None
    subjective_path: Optional[str] = None
    stance_cues_path: Optional[str] = None
    sci_domains_path: Optional[str] = None
    taxonomy_path: Optional[str] = None
    stance_threshold: float = 0.2
    half_life_days: float = 30.0
    class_boundaries: Optional[tuple[float, float]] = None
    report_ttl_seconds: float = DEFAULT_REPORT_TTL_SECONDS
    cutoff_days: int = DEFAULT_CUTOFF_DAYS
    fetch_timeout: float = 10.0
    # expert API tokens: token -> expert_id
    experts: dict[str, str] = field(default_factory=dict)

    def __post_init__(self):
        if not 0 < self.stance_threshold < 1:
            raise ConfigInvalid(f"stance_threshold {self.stance_threshold} must be in (0,1)")
        if self.half_life_days <= 0:
            raise ConfigInvalid("half_life_days must be positive")
        if self.report_ttl_seconds < 0:
            raise ConfigInvalid("report_ttl_seconds must be >= 0")
        if self.cutoff_days < 1:
            raise ConfigInvalid("cutoff_days must be >= 1")
        if self.class_boundaries is not None:
            lo, hi = self.class_boundaries
            if lo > hi:
                raise ConfigInvalid(f"class_boundaries out of order: {self.class_boundaries}")
            self.class_boundaries = (float(lo), float(hi))

    @classmethod
    def from_file(cls, path: str | Path) -> "Config":
        try:
            raw = json.loads(Path(path).read_text(encoding="utf-8"))
        except (OSError, json.JSONDecodeError) as exc:
            raise ConfigInvalid(f"cannot load config {path}: {exc}") from exc
        if not isinstance(raw, dict):
            raise ConfigInvalid("config root must be an object")
        known = {f for f in cls.__dataclass_fields__}
        unknown = set(raw) - known
        if unknown:
            raise ConfigInvalid(f"unknown config keys: {sorted(unknown)}")
        if "class_boundaries" in raw and raw["class_boundaries"] is not None:
            raw["class_boundaries"] = tuple(raw["class_boundaries"])
        try:
            return cls(**raw)
        except TypeError as exc:
            raise ConfigInvalid(str(exc)) from exc
