"""Article extraction from raw HTML.

Main-content heuristic: paragraphs are grouped by their nearest container
element; the cluster with the most text is taken as the article body.
Anchors outside that cluster (nav, footer, sidebars) are not counted as
references. Deterministic by construction: no network, no clocks.
"""

from __future__ import annotations

import re
from datetime import datetime
from html.parser import HTMLParser
from typing import Optional
from urllib.parse import urljoin, urlsplit

from .errors import EmptyDocument, MalformedUrl
from .models import Article, ReferenceLink
from .urls import article_id, host_of, normalize_url, registrable_domain

CONTAINER_TAGS = {"body", "div", "section", "article", "main", "td", "li", "blockquote"}
SKIP_TAGS = {"script", "style", "nav", "footer", "header", "aside", "noscript", "template", "svg"}
VOID_TAGS = {"br", "hr", "img", "meta", "link", "input", "area", "base", "col", "embed",
             "source", "track", "wbr"}

_BYLINE_RE = re.compile(r"^by\s+([^\s].{1,80})$", re.IGNORECASE)
_WS_RE = re.compile(r"\s+")


def _collapse(text: str) -> str:
    return _WS_RE.sub(" ", text).strip()


class _Paragraph:
    __slots__ = ("container", "parts", "anchors")

    def __init__(self, container: int):
        self.container = container
        self.parts: list[str] = []
        self.anchors: list[tuple[str, str, int]] = []  # href, anchor text, byte offset

    @property
    def text(self) -> str:
        return _collapse("".join(self.parts))


class _Extractor(HTMLParser):
    def __init__(self, source: str):
        super().__init__(convert_charrefs=True)
        # Line-start byte offsets so getpos() can be turned into a byte offset.
        self._line_starts: list[int] = [0]
        offset = 0
        for line in source.splitlines(keepends=True):
            offset += len(line.encode("utf-8"))
            self._line_starts.append(offset)
        self._lines = source.split("\n")

        self.skip_depth = 0
        self.container_stack: list[int] = [0]
        self.tag_stack: list[str] = []
        self._next_container = 1

        self.in_title = False
        self.title_parts: list[str] = []
        self.og_title: Optional[str] = None
        self.meta_author: Optional[str] = None
        self.published: Optional[str] = None

        self.paragraphs: list[_Paragraph] = []
        self.current: Optional[_Paragraph] = None
        self._anchor: Optional[tuple[str, list[str], int]] = None

    def _byte_offset(self) -> int:
        line, col = self.getpos()
        base = self._line_starts[min(line - 1, len(self._line_starts) - 1)]
        try:
            prefix = self._lines[line - 1][:col]
        except IndexError:
            prefix = ""
        return base + len(prefix.encode("utf-8"))

    # -- tag handling --

    def handle_starttag(self, tag, attrs):
        if tag in VOID_TAGS:
            self.handle_startendtag(tag, attrs)
            return
        if tag in SKIP_TAGS:
            self.skip_depth += 1
            self.tag_stack.append(tag)
            return
        if self.skip_depth:
            # Suppressed: closing it must not touch container/paragraph state.
            self.tag_stack.append("#" + tag)
            return
        self.tag_stack.append(tag)
        if tag == "title":
            self.in_title = True
        elif tag in CONTAINER_TAGS:
            self.container_stack.append(self._next_container)
            self._next_container += 1
        elif tag == "p":
            self._close_paragraph()
            self.current = _Paragraph(self.container_stack[-1])
        elif tag == "a" and self.current is not None:
            href = dict(attrs).get("href")
            if href:
                self._anchor = (href, [], self._byte_offset())

    def handle_startendtag(self, tag, attrs):
        if self.skip_depth:
            return
        if tag == "meta":
            a = dict(attrs)
            key = (a.get("property") or a.get("name") or "").lower()
            content = a.get("content")
            if not content:
                return
            if key == "og:title":
                self.og_title = content
            elif key in ("author", "article:author", "parsely-author"):
                if not self.meta_author:
                    self.meta_author = content
            elif key in ("article:published_time", "parsely-pub-date"):
                if not self.published:
                    self.published = content
        elif tag == "br" and self.current is not None:
            self.current.parts.append(" ")

    def handle_endtag(self, tag):
        if tag in VOID_TAGS:
            return
        if tag in SKIP_TAGS:
            if tag in self.tag_stack:
                # Unwind any unclosed children too.
                while self.tag_stack:
                    top = self.tag_stack.pop()
                    self._on_close(top)
                    if top == tag:
                        break
            return
        if tag not in self.tag_stack and ("#" + tag) not in self.tag_stack:
            return
        while self.tag_stack:
            top = self.tag_stack.pop()
            self._on_close(top)
            if top == tag or top == "#" + tag:
                break

    def _on_close(self, tag: str):
        if tag.startswith("#"):
            return
        if tag in SKIP_TAGS:
            self.skip_depth = max(0, self.skip_depth - 1)
        elif tag == "title":
            self.in_title = False
        elif tag in CONTAINER_TAGS:
            if len(self.container_stack) > 1:
                self.container_stack.pop()
        elif tag == "p":
            self._close_paragraph()
        elif tag == "a":
            self._close_anchor()

    def _close_anchor(self):
        if self._anchor is None:
            return
        href, parts, pos = self._anchor
        text = _collapse("".join(parts))
        if self.current is not None:
            self.current.anchors.append((href, text, pos))
        self._anchor = None

    def _close_paragraph(self):
        self._close_anchor()
        if self.current is not None:
            self.paragraphs.append(self.current)
            self.current = None

    def handle_data(self, data):
        if self.skip_depth:
            return
        if self.in_title:
            self.title_parts.append(data)
        if self._anchor is not None:
            self._anchor[1].append(data)
            if self.current is not None:
                self.current.parts.append(data)
        elif self.current is not None:
            self.current.parts.append(data)

    def close(self):
        self._close_paragraph()
        super().close()


def _main_cluster(paragraphs: list[_Paragraph]) -> list[_Paragraph]:
    """Largest contiguous paragraph cluster, keyed by shared container."""
    totals: dict[int, int] = {}
    for p in paragraphs:
        totals[p.container] = totals.get(p.container, 0) + len(p.text)
    if not totals:
        return []
    best = max(totals, key=lambda c: (totals[c], -c))
    return [p for p in paragraphs if p.container == best and p.text]


def parse_article_html(html: bytes, base_url: str, fetched_at: Optional[datetime] = None) -> Article:
    """Parse raw HTML bytes into a structured Article.

    Raises EmptyDocument when neither a title nor any body text can be
    extracted. Same bytes always produce the same Article (``fetched_at``
    is caller-supplied, never a clock read).
    """
    source = html.decode("utf-8", errors="replace")
    extractor = _Extractor(source)
    try:
        extractor.feed(source)
        extractor.close()
    except Exception as exc:  # html.parser is lenient; anything else is a parse failure
        raise EmptyDocument(f"unparseable document: {exc}") from exc

    title = _collapse(extractor.og_title or "".join(extractor.title_parts))
    cluster = _main_cluster(extractor.paragraphs)
    body = "\n\n".join(p.text for p in cluster)

    if not title and not body:
        raise EmptyDocument("no extractable title and no body text")

    byline = _collapse(extractor.meta_author or "")
    if not byline:
        for p in cluster[:2]:
            m = _BYLINE_RE.match(p.text)
            if m:
                byline = m.group(1).strip()
                break

    norm_url = normalize_url(base_url)
    references: list[ReferenceLink] = []
    seen: set[str] = set()
    for href, text, pos in (a for p in cluster for a in p.anchors):
        absolute = urljoin(base_url, href)
        if urlsplit(absolute).scheme not in ("http", "https"):
            continue
        try:
            key = normalize_url(absolute)
        except MalformedUrl:
            continue
        if key in seen:
            continue
        seen.add(key)
        references.append(ReferenceLink(href=absolute, anchor_text=text, position=pos))

    published = None
    if extractor.published:
        try:
            from .models import parse_utc

            published = parse_utc(extractor.published)
        except (ValueError, TypeError):
            published = None

    return Article(
        article_id=article_id(norm_url),
        url=norm_url,
        outlet_domain=registrable_domain(host_of(norm_url)),
        title=title,
        body=body,
        byline=byline or None,
        published_at=published,
        references=references,
        fetched_at=fetched_at,
    )
