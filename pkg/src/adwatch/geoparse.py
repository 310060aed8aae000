"""Toponym recognition and resolution against a tab-separated gazetteer."""

from __future__ import annotations

import csv
import re
from collections import defaultdict
from dataclasses import dataclass
from importlib import resources
from typing import NamedTuple

GAZETTEER_COLUMNS = ("name", "alternates", "lat", "lon", "population", "country")
MENTION_COLUMNS = ("url", "surface", "resolved_name", "latitude", "longitude", "char_offset", "field")
MAX_SPAN_TOKENS = 4
CONNECTORS = frozenset(("of", "the"))

_TOKEN_RE = re.compile(r"[^\W\d_]+(?:['’.-][^\W\d_]+)*")
_SENTENCE_BREAK = re.compile(r"(?:[.!?][\"')\]”’]*\s+|\n)$")
# a period after these does not end a sentence
_ABBREV = re.compile(r"\b(?:Dr|Mr|Mrs|Ms|Prof|St|Sr|Jr|Gen|Gov|Sen|Rep|Rev)\.\s+$")


class MalformedGazetteer(ValueError):
    def __init__(self, line, reason):
        super().__init__(f"line {line}: {reason}")
        self.line = line


class Unresolvable(LookupError):
    pass


@dataclass(frozen=True)
class GazetteerEntry:
    name: str
    alternate_names: tuple
    latitude: float
    longitude: float
    population: int
    country_code: str


class Gazetteer:
    """Immutable name index; keys are case-folded names and alternates."""

    def __init__(self, entries=()):
        self.entries = tuple(entries)
        index = defaultdict(list)
        for e in self.entries:
            for key in {e.name, *e.alternate_names}:
                if key:
                    index[key].append(e)
                    folded = key.casefold()
                    if folded != key:
                        index[folded].append(e)
        self._index = {k: tuple(dict.fromkeys(v)) for k, v in index.items()}
        self.max_tokens = max(
            (len(_TOKEN_RE.findall(k)) for k in self._index), default=0
        )

    def __len__(self):
        return len(self.entries)

    def lookup(self, surface):
        hits = self._index.get(surface)
        if hits is None:
            hits = self._index.get(surface.casefold(), ())
        return hits

    def __contains__(self, surface):
        return bool(self.lookup(surface))

    def coordinates(self):
        return {(e.latitude, e.longitude) for e in self.entries}


def _split_names(value):
    return tuple(n.strip() for n in value.split(",") if n.strip())


def load_gazetteer(path):
    entries = []
    with open(path, encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh, delimiter="\t")
        header = next(reader, None)
        if header is None or tuple(h.strip().lower() for h in header) != GAZETTEER_COLUMNS:
            raise MalformedGazetteer(1, f"expected header {'/'.join(GAZETTEER_COLUMNS)}")
        for lineno, row in enumerate(reader, 2):
            if not row or not any(cell.strip() for cell in row):
                continue
            if len(row) != len(GAZETTEER_COLUMNS):
                raise MalformedGazetteer(lineno, f"expected 6 fields, got {len(row)}")
            name, alts, lat, lon, pop, cc = (c.strip() for c in row)
            try:
                lat, lon, pop = float(lat), float(lon), int(pop)
            except ValueError as exc:
                raise MalformedGazetteer(lineno, str(exc)) from None
            if not name:
                raise MalformedGazetteer(lineno, "empty name")
            if not -90 <= lat <= 90 or not -180 <= lon <= 180:
                raise MalformedGazetteer(lineno, f"coordinates out of range ({lat}, {lon})")
            if pop < 0:
                raise MalformedGazetteer(lineno, "negative population")
            if len(cc) != 2:
                raise MalformedGazetteer(lineno, f"bad country code {cc!r}")
            entries.append(GazetteerEntry(name, _split_names(alts), lat, lon, pop, cc.upper()))
    return Gazetteer(entries)


def bundled_gazetteer():
    with resources.as_file(resources.files("adwatch").joinpath("data/gazetteer.tsv")) as p:
        return load_gazetteer(p)


def load_stoplist(path=None):
    if path is None:
        text = resources.files("adwatch").joinpath("data/toponym_stoplist.txt").read_text("utf-8")
    else:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    return frozenset(w.strip().casefold() for w in text.splitlines() if w.strip() and not w.startswith("#"))


class Candidate(NamedTuple):
    surface: str
    start: int
    entries: tuple


@dataclass(frozen=True)
class PlaceMention:
    surface: str
    article_url: str
    latitude: float
    longitude: float
    resolved_name: str
    char_offset: int
    field: str = "text"


def _capitalized(tok):
    return tok[0].isupper()


def _sentence_initial(text, start):
    if start == 0:
        return True
    head = text[max(0, start - 8):start]
    if _ABBREV.search(text[max(0, start - 12):start]):
        return False
    return bool(_SENTENCE_BREAK.search(head)) or not text[:start].strip()


def recognize_toponyms(text, gazetteer, stoplist=None):
    """Longest-match scan of capitalized token runs against the gazetteer."""
    if stoplist is None:
        stoplist = load_stoplist()
    tokens = [(m.group(), m.start(), m.end()) for m in _TOKEN_RE.finditer(text)]
    span_max = min(MAX_SPAN_TOKENS, gazetteer.max_tokens or 1)
    out, i = [], 0
    while i < len(tokens):
        if not _capitalized(tokens[i][0]):
            i += 1
            continue
        match = None
        for n in range(min(span_max, len(tokens) - i), 0, -1):
            run = tokens[i:i + n]
            if not _capitalized(run[-1][0]):
                continue
            if any(not (_capitalized(t) or t in CONNECTORS) for t, _, _ in run[1:-1]):
                continue
            # tokens must be separated by plain spaces only
            if any(text[a[2]:b[1]].strip(" ") for a, b in zip(run, run[1:])):
                continue
            surface = text[run[0][1]:run[-1][2]]
            entries = gazetteer.lookup(surface)
            if entries:
                match = (n, Candidate(surface, run[0][1], entries))
                break
        if match is None:
            i += 1
            continue
        n, cand = match
        if n == 1 and cand.surface.casefold() in stoplist and _sentence_initial(text, cand.start):
            i += 1
            continue
        out.append(cand)
        i += n
    return out


def best_entry(entries):
    """Highest population wins; ties go to the smallest (country_code, name)."""
    if not entries:
        raise Unresolvable("no candidate entries")
    return min(entries, key=lambda e: (-e.population, e.country_code, e.name))


def resolve_toponym(candidate, gazetteer, article_url="", field="text"):
    entries = candidate.entries or gazetteer.lookup(candidate.surface)
    if not entries:
        raise Unresolvable(candidate.surface)
    e = best_entry(entries)
    return PlaceMention(
        candidate.surface, article_url, e.latitude, e.longitude, e.name, candidate.start, field
    )


def _mentions(text, url, field, gazetteer, stoplist):
    for cand in recognize_toponyms(text, gazetteer, stoplist):
        yield resolve_toponym(cand, gazetteer, url, field)


def geoparse_article(article, gazetteer, stoplist=None):
    """One mention per resolved place; body text first, then title."""
    if stoplist is None:
        stoplist = load_stoplist()
    seen, out = set(), []
    for field, text in (("text", article.text), ("title", article.title or "")):
        for m in _mentions(text, article.url, field, gazetteer, stoplist):
            key = (m.resolved_name, m.latitude, m.longitude)
            if key not in seen:
                seen.add(key)
                out.append(m)
    return out


def geoparse_corpus(articles, gazetteer, stoplist=None):
    if stoplist is None:
        stoplist = load_stoplist()
    out = []
    for article in articles:
        out.extend(geoparse_article(article, gazetteer, stoplist))
    return out


def write_mentions(mentions, path):
    with open(path, "w", encoding="utf-8", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(MENTION_COLUMNS)
        for m in mentions:
            w.writerow((m.article_url, m.surface, m.resolved_name, repr(m.latitude),
                        repr(m.longitude), m.char_offset, m.field))


def read_mentions(path):
    with open(path, encoding="utf-8", newline="") as fh:
        rows = list(csv.DictReader(fh))
    return [
        PlaceMention(r["surface"], r["url"], float(r["latitude"]), float(r["longitude"]),
                     r["resolved_name"], int(r["char_offset"]), r["field"])
        for r in rows
    ]
