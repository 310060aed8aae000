"""Search-and-save-news: index crawling, fetching, text and date extraction, storage."""

from __future__ import annotations

import base64
import datetime as dt
import json
import logging
import os
import re
import threading
import time
from dataclasses import dataclass, field
from html.parser import HTMLParser
from pathlib import Path
from typing import Optional
from urllib.parse import parse_qsl, urlencode, urljoin, urlsplit, urlunsplit

logger = logging.getLogger(__name__)

MIN_TEXT_CHARS = 20
FETCH_STATUSES = ("ok", "http_error", "parse_error", "duplicate", "off_host")

SKIP_TAGS = frozenset(
    "script style nav footer header aside noscript template svg iframe form button select".split()
)
BLOCK_TAGS = frozenset(
    """p div h1 h2 h3 h4 h5 h6 li ul ol dl dt dd section article main blockquote pre
    table tr td th thead tbody figure figcaption br hr address details summary""".split()
)
VOID_TAGS = frozenset("area base br col embed hr img input link meta source track wbr".split())


class MalformedHtml(ValueError):
    pass


class EmptyDocument(ValueError):
    pass


# ---------------------------------------------------------------------------
# sources and records


@dataclass(frozen=True)
class NewsSource:
    id: str
    display_name: str
    index_urls: tuple = ()
    host_allowlist: tuple = ()
    rate_limit: float = 1.0

    def __post_init__(self):
        object.__setattr__(self, "index_urls", tuple(self.index_urls))
        object.__setattr__(self, "host_allowlist", tuple(h.lower() for h in self.host_allowlist))
        if self.rate_limit < 0:
            raise ValueError("rate_limit must be >= 0")
        for url in self.index_urls:
            if host_of(url) not in self.host_allowlist:
                raise ValueError(f"{self.id}: index url host {host_of(url)!r} not in allowlist")

    def allows(self, url):
        return host_of(url) in self.host_allowlist


@dataclass
class Article:
    url: str
    source_id: str
    title: str
    raw_html: bytes
    text: str
    published_at: Optional[dt.date]
    fetched_at: dt.datetime

    def to_record(self):
        return {
            "url": self.url,
            "source_id": self.source_id,
            "title": self.title,
            "text": self.text,
            "published_at": self.published_at.isoformat() if self.published_at else None,
            "fetched_at": self.fetched_at.isoformat(),
            "raw_html_b64": base64.b64encode(self.raw_html).decode("ascii"),
        }

    @classmethod
    def from_record(cls, rec):
        pub = rec.get("published_at")
        return cls(
            url=rec["url"],
            source_id=rec["source_id"],
            title=rec["title"],
            raw_html=base64.b64decode(rec["raw_html_b64"]),
            text=rec["text"],
            published_at=dt.date.fromisoformat(pub) if pub else None,
            fetched_at=dt.datetime.fromisoformat(rec["fetched_at"]),
        )


@dataclass(frozen=True)
class FetchRecord:
    url: str
    status: str
    detail: str = ""


# ---------------------------------------------------------------------------
# urls


def host_of(url):
    return (urlsplit(url).hostname or "").lower()


def canonicalize_url(url, base=None):
    """Absolute URL with lowercase scheme/host, no fragment, no ``utm_*`` params."""
    if base:
        url = urljoin(base, url)
    parts = urlsplit(url.strip())
    query = [(k, v) for k, v in parse_qsl(parts.query, keep_blank_values=True)
             if not k.lower().startswith("utm_")]
    netloc = parts.netloc.lower()
    path = parts.path or "/"
    return urlunsplit((parts.scheme.lower(), netloc, path, urlencode(query), ""))


# ---------------------------------------------------------------------------
# html


class _Collector(HTMLParser):
    """Single pass over a page collecting anchors, metadata and visible text."""

    def __init__(self):
        super().__init__(convert_charrefs=True)
        self.anchors = []
        self.meta = {}
        self.time_datetimes = []
        self.title_parts = []
        self.h1_parts = None
        self.h1_done = False
        self.paragraphs = []
        self._buf = []
        self._skip_depth = 0
        self._stack = []
        self._in_title = False
        self._in_h1 = False

    def handle_starttag(self, tag, attrs):
        a = dict(attrs)
        if tag == "a" and a.get("href"):
            self.anchors.append(a["href"])
        elif tag == "meta":
            key = (a.get("property") or a.get("name") or a.get("itemprop") or "").lower()
            if key and a.get("content") is not None:
                self.meta.setdefault(key, a["content"])
        elif tag == "time" and a.get("datetime"):
            self.time_datetimes.append(a["datetime"])
        elif tag == "title":
            self._in_title = True
        if tag in VOID_TAGS:
            if tag in BLOCK_TAGS and not self._skip_depth:
                self._flush()
            return
        self._stack.append(tag)
        if tag in SKIP_TAGS:
            self._skip_depth += 1
        elif tag == "h1" and not self.h1_done and not self._skip_depth:
            self._in_h1 = True
            self.h1_parts = []
        if tag in BLOCK_TAGS and not self._skip_depth:
            self._flush()

    def handle_startendtag(self, tag, attrs):
        self.handle_starttag(tag, attrs)
        if tag not in VOID_TAGS:
            self.handle_endtag(tag)

    def handle_endtag(self, tag):
        if tag == "title":
            self._in_title = False
        if tag not in self._stack:
            return
        # close implicitly-open children too
        while self._stack:
            top = self._stack.pop()
            if top in SKIP_TAGS:
                self._skip_depth -= 1
            if top == "h1" and self._in_h1:
                self._in_h1 = False
                self.h1_done = True
            if top in BLOCK_TAGS and not self._skip_depth:
                self._flush()
            if top == tag:
                break

    def handle_data(self, data):
        if self._in_title:
            self.title_parts.append(data)
            return
        if self._skip_depth or "head" in self._stack:
            return
        self._buf.append(data)
        if self._in_h1:
            self.h1_parts.append(data)

    def _flush(self):
        para = " ".join("".join(self._buf).split())
        if para:
            self.paragraphs.append(para)
        self._buf = []

    def finish(self):
        self.close()
        self._flush()
        return self


def _collect(raw_html):
    if isinstance(raw_html, bytes):
        raw_html = raw_html.decode("utf-8", errors="replace")
    c = _Collector()
    c.feed(raw_html)
    return c.finish()


_TAGLIKE = re.compile(r"<(?=[A-Za-z])")


def extract_text(raw_html, min_chars=MIN_TEXT_CHARS):
    """Visible prose of a page as ``{"title", "text"}``.

    Chrome subtrees (script, style, nav, footer, header, aside, ...) are
    dropped, block elements become blank-line paragraph breaks and runs of
    whitespace collapse to one space.
    """
    c = _collect(raw_html)
    text = "\n\n".join(c.paragraphs)
    # decoded entities must not look like surviving tags
    text = _TAGLIKE.sub("< ", text)
    if len(text) < min_chars:
        raise EmptyDocument(f"only {len(text)} characters of text")
    title = " ".join("".join(c.title_parts).split())
    if not title and c.h1_parts:
        title = " ".join("".join(c.h1_parts).split())
    return {"title": _TAGLIKE.sub("< ", title), "text": text}


def discover_urls(source, index_html, base_url=None):
    base = base_url or (source.index_urls[0] if source.index_urls else None)
    c = _collect(index_html)
    raw = index_html if isinstance(index_html, bytes) else index_html.encode()
    if not c.anchors and re.search(rb"<a[\s>]", raw, re.I):
        raise MalformedHtml("anchor markup present but nothing parseable")
    seen, out = set(), []
    for href in c.anchors:
        if href.startswith(("mailto:", "javascript:", "tel:", "#")):
            continue
        url = canonicalize_url(href, base)
        if urlsplit(url).scheme not in ("http", "https") or not source.allows(url):
            continue
        if url not in seen:
            seen.add(url)
            out.append(url)
    return out


# ---------------------------------------------------------------------------
# dates

_MONTHS = {m: i for i, m in enumerate(
    "january february march april may june july august september october november december".split(), 1)}
_MONTHS.update({k[:3]: v for k, v in list(_MONTHS.items())})
_MONTHS["sept"] = 9
_ISO_RE = re.compile(r"(?<!\d)(\d{4})-(\d{2})-(\d{2})(?!\d)")
_URL_DATE_RE = re.compile(r"(?<!\d)(\d{4})([/-])(\d{1,2})\2(\d{1,2})(?!\d)")
_PROSE_RE = re.compile(
    r"\b(" + "|".join(sorted(_MONTHS, key=len, reverse=True)) + r")\.?\s+(\d{1,2}),?\s+(\d{4})\b",
    re.I,
)


def _mkdate(y, m, d):
    try:
        return dt.date(int(y), int(m), int(d))
    except ValueError:
        return None


def _iso_prefix(value):
    m = _ISO_RE.search(value or "")
    return _mkdate(*m.groups()) if m else None


def _date_from_url(url):
    for m in _URL_DATE_RE.finditer(urlsplit(url).path):
        d = _mkdate(m.group(1), m.group(3), m.group(4))
        if d:
            return d
    return None


def _date_from_text(text):
    head = text[:2000]
    hits = []
    m = _ISO_RE.search(head)
    if m and _mkdate(*m.groups()):
        hits.append((m.start(), _mkdate(*m.groups())))
    for m in _PROSE_RE.finditer(head):
        d = _mkdate(m.group(3), _MONTHS[m.group(1).lower()], m.group(2))
        if d:
            hits.append((m.start(), d))
            break
    return min(hits)[1] if hits else None


def extract_pub_date(raw_html, url, fetched_at=None, text=None):
    """Publication date by cascade: meta tag, <time>, URL path, body text.

    Candidates later than ``fetched_at`` are skipped.
    """
    c = _collect(raw_html)
    limit = fetched_at.date() if isinstance(fetched_at, dt.datetime) else fetched_at

    def ok(d):
        return d is not None and (limit is None or d <= limit)

    d = _iso_prefix(c.meta.get("article:published_time"))
    if ok(d):
        return d
    for value in c.time_datetimes:
        d = _iso_prefix(value)
        if ok(d):
            return d
    d = _date_from_url(url)
    if ok(d):
        return d
    if text is None:
        text = "\n\n".join(c.paragraphs)
    d = _date_from_text(text)
    return d if ok(d) else None


# ---------------------------------------------------------------------------
# store


class ArticleStore:
    """Append-only line-delimited article store with a url -> offset index."""

    def __init__(self, data_dir):
        self.dir = Path(data_dir)
        self.dir.mkdir(parents=True, exist_ok=True)
        self.path = self.dir / "articles.jsonl"
        self.index_path = self.dir / "articles.idx.json"
        self._lock = threading.Lock()
        self._index = {}
        if self.index_path.exists():
            self._index = json.loads(self.index_path.read_text("utf-8"))

    def __contains__(self, url):
        return url in self._index

    def __len__(self):
        return len(self._index)

    def urls(self):
        return list(self._index)

    def add(self, article):
        with self._lock:
            if article.url in self._index:
                return False
            line = (json.dumps(article.to_record(), ensure_ascii=False, sort_keys=True) + "\n").encode()
            with open(self.path, "ab") as fh:
                offset = fh.tell()
                fh.write(line)
                fh.flush()
                os.fsync(fh.fileno())
            self._index[article.url] = offset
            tmp = self.index_path.with_suffix(".tmp")
            tmp.write_text(json.dumps(self._index, indent=0, sort_keys=True), "utf-8")
            os.replace(tmp, self.index_path)
            return True

    def get(self, url):
        with open(self.path, "rb") as fh:
            fh.seek(self._index[url])
            return Article.from_record(json.loads(fh.readline()))

    def articles(self):
        """Stored articles in insertion order."""
        if not self.path.exists():
            return []
        ordered = sorted(self._index.items(), key=lambda kv: kv[1])
        out = []
        with open(self.path, "rb") as fh:
            for _, offset in ordered:
                fh.seek(offset)
                out.append(Article.from_record(json.loads(fh.readline())))
        return out


# ---------------------------------------------------------------------------
# transport and fetching


@dataclass(frozen=True)
class Response:
    status: int
    body: bytes = b""


class HttpTransport:
    def __init__(self, timeout=20.0, user_agent="adwatch/0.1 (+news research crawler)"):
        import httpx

        self._client = httpx.Client(
            timeout=timeout, follow_redirects=True, headers={"User-Agent": user_agent}
        )

    def get(self, url):
        resp = self._client.get(url)
        return Response(resp.status_code, resp.content)


class FixtureTransport:
    """Serves pages from a directory through a ``routes.json`` url -> file map."""

    def __init__(self, root):
        self.root = Path(root)
        self.routes = json.loads((self.root / "routes.json").read_text("utf-8"))

    def get(self, url):
        name = self.routes.get(url)
        if name is None:
            return Response(404)
        return Response(200, (self.root / name).read_bytes())


class RecordingTransport:
    def __init__(self, inner):
        self.inner = inner
        self.requested = []

    def get(self, url):
        self.requested.append(url)
        return self.inner.get(url)


@dataclass
class HostThrottle:
    """Keeps successive requests to one host at least ``interval`` apart."""

    interval: float
    clock: object = time.monotonic
    sleep: object = time.sleep
    _last: dict = field(default_factory=dict)

    def wait(self, host):
        last = self._last.get(host)
        if last is not None:
            delay = last + self.interval - self.clock()
            if delay > 0:
                self.sleep(delay)
        self._last[host] = self.clock()


def _utcnow():
    return dt.datetime.now(dt.timezone.utc).replace(microsecond=0)


def fetch_and_store(source, urls, store, transport, *, throttle=None, now=_utcnow, seen=None):
    """Fetch each URL once and persist the successes; returns one record per URL."""
    throttle = throttle or HostThrottle(source.rate_limit)
    seen = set() if seen is None else seen
    records = []
    for raw_url in urls:
        url = canonicalize_url(raw_url)
        if url in store:
            records.append(FetchRecord(url, "duplicate", "already stored"))
            continue
        if url in seen:
            records.append(FetchRecord(url, "duplicate", "repeated in batch"))
            continue
        seen.add(url)
        if not source.allows(url):
            records.append(FetchRecord(url, "off_host", host_of(url)))
            continue
        throttle.wait(host_of(url))
        try:
            resp = transport.get(url)
        except Exception as exc:  # network faults are per-URL data
            records.append(FetchRecord(url, "http_error", f"{type(exc).__name__}: {exc}"))
            continue
        if resp.status != 200:
            records.append(FetchRecord(url, "http_error", str(resp.status)))
            continue
        fetched_at = now()
        try:
            parts = extract_text(resp.body)
        except EmptyDocument as exc:
            records.append(FetchRecord(url, "parse_error", str(exc)))
            continue
        article = Article(
            url=url,
            source_id=source.id,
            title=parts["title"],
            raw_html=resp.body,
            text=parts["text"],
            published_at=extract_pub_date(resp.body, url, fetched_at, parts["text"]),
            fetched_at=fetched_at,
        )
        store.add(article)
        records.append(FetchRecord(url, "ok", article.title))
    return records


def crawl_source(source, store, transport, *, throttle=None, extra_urls=(), now=_utcnow):
    """Discover article links on the source's index pages and fetch them."""
    throttle = throttle or HostThrottle(source.rate_limit)
    records, candidates = [], []
    for index_url in source.index_urls:
        throttle.wait(host_of(index_url))
        try:
            resp = transport.get(index_url)
        except Exception as exc:
            records.append(FetchRecord(index_url, "http_error", f"{type(exc).__name__}: {exc}"))
            continue
        if resp.status != 200:
            records.append(FetchRecord(index_url, "http_error", str(resp.status)))
            continue
        try:
            found = discover_urls(source, resp.body, index_url)
        except MalformedHtml as exc:
            records.append(FetchRecord(index_url, "parse_error", str(exc)))
            continue
        candidates.extend(u for u in found if u != canonicalize_url(index_url))
    candidates.extend(u for u in extra_urls if source.allows(canonicalize_url(u)))
    records.extend(fetch_and_store(source, candidates, store, transport, throttle=throttle, now=now))
    return records
