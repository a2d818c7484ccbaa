"""Exception hierarchy shared across the platform.

Every error carries a stable ``code`` string so service handlers can map
exceptions to structured {code, message, detail} payloads without
inspecting types at the HTTP layer.
"""

from __future__ import annotations


class NewslensError(Exception):
    """Base class for all platform errors."""

    code = "error"

    def __init__(self, message: str = "", detail: object = None):
        super().__init__(message or self.__class__.__name__)
        self.message = message or self.__class__.__name__
        self.detail = detail

    def payload(self) -> dict:
        return {"code": self.code, "message": self.message, "detail": self.detail}


# --- ingestion ---

class MalformedUrl(NewslensError):
    code = "malformed_url"


class EmptyDocument(NewslensError):
    code = "empty_document"


class InvalidPosting(NewslensError):
    code = "invalid_posting"


class FetchError(NewslensError):
    """Article fetch failed; the article is unevaluatable, never a crash."""

    code = "fetch_error"


class Timeout(FetchError):
    code = "timeout"


class TooManyRedirects(FetchError):
    code = "too_many_redirects"


class TransportError(FetchError):
    code = "transport_error"


# --- content indicators ---

class EmptyTitle(NewslensError):
    code = "empty_title"


class NoWords(NewslensError):
    code = "no_words"


# --- reference analysis ---

class InvalidHost(NewslensError):
    code = "invalid_host"


# --- social signals ---

class LengthMismatch(NewslensError):
    code = "length_mismatch"


# --- reviews ---

class NoReviews(NewslensError):
    code = "no_reviews"


class UnknownArticle(NewslensError):
    code = "unknown_article"


class UnknownExpert(NewslensError):
    code = "unknown_expert"


class InvalidScore(NewslensError):
    code = "invalid_score"


# --- segmentation ---

class MalformedRanking(NewslensError):
    code = "malformed_ranking"


class EmptyOutletList(NewslensError):
    code = "empty_outlet_list"


class InvalidTaxonomy(NewslensError):
    code = "invalid_taxonomy"


# --- analytics ---

class EmptySample(NewslensError):
    code = "empty_sample"


class NonpositiveBandwidth(NewslensError):
    code = "nonpositive_bandwidth"


class UnknownClass(NewslensError):
    code = "unknown_class"


# --- platform service ---

class StoreUnavailable(NewslensError):
    code = "store_unavailable"


class ChecksumMismatch(NewslensError):
    code = "checksum_mismatch"


class PartialMigration(NewslensError):
    code = "partial_migration"

    def __init__(self, message: str = "", moved: dict | None = None, failures: dict | None = None):
        super().__init__(message, detail={"moved": moved or {}, "failures": failures or {}})
        self.moved = moved or {}
        self.failures = failures or {}


class FetchFailed(NewslensError):
    code = "fetch_failed"


class ParseFailed(NewslensError):
    code = "parse_failed"


class ConfigInvalid(NewslensError):
    code = "config_invalid"
