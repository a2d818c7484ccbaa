import json
from datetime import datetime, timezone

import pytest

from newslens.config import Config
from newslens.fetch import FetchResult
from newslens.platform import Platform

FIXTURE_PAGES = {
    "https://outlet.com/story/1": b"""<html><head>
        <title>Ignored</title>
        <meta property="og:title" content="Vaccine trial begins">
        <meta name="author" content="Jane Doe">
        </head><body><div>
        <p>A covid-19 vaccine trial for covid-19 began this week, a covid-19 first.</p>
        <p>Results appear in <a href="https://www.nature.com/articles/x">a journal</a>
           and were covered by <a href="https://cnn.com/story">CNN</a>.</p>
        <p>See also <a href="https://outlet.com/related">our earlier report</a>.</p>
        </div></body></html>""",
    "https://outlet.com/story/2": b"""<html><head>
        <title>Quiet local news</title>
        </head><body><div>
        <p>Nothing topical happened today in the town hall.</p>
        </div></body></html>""",
}


def fake_fetcher(url: str, timeout: float) -> FetchResult:
    from newslens.errors import TransportError

    page = FIXTURE_PAGES.get(url)
    if page is None:
        raise TransportError(f"no fixture for {url}")
    return FetchResult(status=200, body=page, final_url=url)


@pytest.fixture
def platform(tmp_path):
    config = Config(
        store_path=str(tmp_path / "hot.db"),
        archive_dir=str(tmp_path / "archive"),
        experts={"token-1": "expert-1", "token-2": "expert-2"},
    )
    p = Platform(config)
    yield p
    p.close()


def make_raw_posting(post_id="p1", url="https://outlet.com/story/1",
                     posted_at="2020-02-01T12:00:00Z", reactions=None, text="interesting"):
    return {
        "post_id": post_id,
        "outlet_hint": "@outlet",
        "url": url,
        "text": text,
        "reactions": reactions if reactions is not None else {"shares": 1, "likes": 2, "replies": 0},
        "posted_at": posted_at,
    }


def posting_log_lines(n, start_day=1):
    """n distinct valid posting records as NDJSON lines."""
    lines = []
    for i in range(n):
        day = start_day + (i % 28)
        record = make_raw_posting(
            post_id=f"log-{i}",
            url=f"https://outlet.com/story/{i % 50}",
            posted_at=f"2020-02-{day:02d}T08:00:00Z",
            reactions={"shares": i % 7, "likes": i % 11, "replies": i % 3},
            text=f"post number {i}",
        )
        lines.append(json.dumps(record))
    return "\n".join(lines) + "\n"


UTC_NOW = datetime(2020, 3, 15, 12, 0, tzinfo=timezone.utc)
