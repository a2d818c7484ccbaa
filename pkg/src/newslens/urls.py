"""URL normalization and registrable-domain (eTLD+1) resolution.

Normalized URLs are the identity of an article: the same page shared with
different tracking parameters, fragments, or host casing must map to one
``article_id``. Normalization is idempotent by construction and verified
by property tests.
"""

from __future__ import annotations

import hashlib
import re
from functools import lru_cache
from importlib import resources
from urllib.parse import parse_qsl, quote, unquote, urlencode, urlsplit, urlunsplit

from .errors import InvalidHost, MalformedUrl

DEFAULT_PORTS = {"http": 80, "https": 443}

# Query parameters that vary per share but never change the page identity.
TRACKING_PARAMS = {"fbclid", "gclid", "msclkid", "mc_cid", "mc_eid"}
TRACKING_PREFIXES = ("utm_",)

# Characters left unescaped when re-quoting path segments (RFC 3986 pchar).
_PATH_SAFE = "/-._~!$&'()*+,;=:@"

_HOST_RE = re.compile(r"^[a-z0-9_]([a-z0-9_-]*[a-z0-9_])?(\.[a-z0-9_]([a-z0-9_-]*[a-z0-9_])?)*$")


def _is_tracking_param(key: str) -> bool:
    k = key.lower()
    return k in TRACKING_PARAMS or k.startswith(TRACKING_PREFIXES)


def normalize_url(url: str) -> str:
    """Canonicalize an absolute URL. Stable under repeated application."""
    if not isinstance(url, str) or not url.strip():
        raise MalformedUrl(f"not an absolute URL: {url!r}")
    try:
        parts = urlsplit(url.strip())
    except ValueError as exc:
        raise MalformedUrl(str(exc)) from exc
    if not parts.scheme or not parts.netloc:
        raise MalformedUrl(f"not an absolute URL: {url!r}")

    scheme = parts.scheme.lower()
    try:
        host = parts.hostname
        port = parts.port
    except ValueError as exc:
        raise MalformedUrl(str(exc)) from exc
    if not host:
        raise MalformedUrl(f"no host in {url!r}")
    host = host.rstrip(".")

    netloc = host
    if parts.username:
        userinfo = parts.username + (f":{parts.password}" if parts.password else "")
        netloc = f"{userinfo}@{netloc}"
    if port is not None and port != DEFAULT_PORTS.get(scheme):
        netloc = f"{netloc}:{port}"

    path = quote(unquote(parts.path), safe=_PATH_SAFE)
    if not path:
        path = "/"

    pairs = [
        (k, v)
        for k, v in parse_qsl(parts.query, keep_blank_values=True)
        if not _is_tracking_param(k)
    ]
    query = urlencode(pairs, quote_via=quote, safe="-._~")

    return urlunsplit((scheme, netloc, path, query, ""))


def article_id(normalized_url: str) -> str:
    """Content address of an article: hex digest of its normalized URL."""
    return hashlib.sha256(normalized_url.encode("utf-8")).hexdigest()[:32]


@lru_cache(maxsize=1)
def _suffix_snapshot() -> frozenset[str]:
    text = (
        resources.files("newslens.assets")
        .joinpath("public_suffix_snapshot.txt")
        .read_text(encoding="utf-8")
    )
    return frozenset(
        line.strip() for line in text.splitlines() if line.strip() and not line.startswith("#")
    )


def registrable_domain(host: str) -> str:
    """eTLD+1 of ``host`` per the vendored suffix snapshot.

    Unknown suffixes fall back to the last two labels; a host that is
    itself a public suffix (or a single label) is returned unchanged.
    """
    if not isinstance(host, str) or not host.strip():
        raise InvalidHost("empty host")
    h = host.strip().lower().rstrip(".")
    if not _HOST_RE.match(h):
        raise InvalidHost(f"illegal host: {host!r}")
    labels = h.split(".")
    if len(labels) == 1:
        return h
    suffixes = _suffix_snapshot()
    # Longest matching suffix wins.
    for i in range(len(labels)):
        candidate = ".".join(labels[i:])
        if candidate in suffixes:
            if i == 0:
                return h
            return ".".join(labels[i - 1:])
    return ".".join(labels[-2:])


def host_of(url: str) -> str:
    """Lowercased host of an absolute URL."""
    try:
        host = urlsplit(url).hostname
    except ValueError as exc:
        raise MalformedUrl(str(exc)) from exc
    if not host:
        raise MalformedUrl(f"no host in {url!r}")
    return host.rstrip(".")
