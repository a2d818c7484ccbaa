"""HTTP article fetching with bounded redirects and timeouts.

Fetch failures signal that an article is unevaluatable; they never crash
the pipeline. Callers catch ``FetchError`` subclasses and surface the
reason in the report.
"""

from __future__ import annotations

from dataclasses import dataclass

import httpx

from .errors import Timeout, TooManyRedirects, TransportError

MAX_REDIRECTS = 5
USER_AGENT = "newslens/0.1 (+article quality indicators)"


@dataclass(frozen=True)
class FetchResult:
    status: int
    body: bytes
    final_url: str  # after redirects, for renormalization


def fetch_article(url: str, timeout: float = 10.0) -> FetchResult:
    """Fetch ``url`` following at most 5 redirects.

    Raises Timeout, TooManyRedirects, or TransportError.
    """
    if timeout <= 0:
        raise ValueError("timeout must be positive")
    try:
        with httpx.Client(
            follow_redirects=True,
            max_redirects=MAX_REDIRECTS,
            timeout=timeout,
            headers={"User-Agent": USER_AGENT},
        ) as client:
            resp = client.get(url)
    except httpx.TimeoutException as exc:
        raise Timeout(f"fetch timed out after {timeout}s: {url}") from exc
    except httpx.TooManyRedirects as exc:
        raise TooManyRedirects(f"more than {MAX_REDIRECTS} redirects: {url}") from exc
    except httpx.HTTPError as exc:
        raise TransportError(f"{exc.__class__.__name__}: {exc}") from exc
    return FetchResult(status=resp.status_code, body=resp.content, final_url=str(resp.url))
