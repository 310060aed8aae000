"""Map-reduce summarization of articles under a per-request token budget."""

from __future__ import annotations

import datetime as dt
import json
import logging
import re
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field
from importlib import resources
from pathlib import Path

from .ingest import EmptyDocument
from .llm import TOKEN_DIVISOR, CompletionRequest, estimate_tokens

logger = logging.getLogger(__name__)

DEFAULT_BUDGET = 3000
DEFAULT_OVERLAP = 100
CONTEXT_BUDGET = 4096
RESPONSE_RESERVE = 512
MAX_REDUCE_DEPTH = 5

_SENTENCE_END = re.compile(r"[.!?]+\s+")


class PromptTooLong(ValueError):
    pass


def load_template(name):
    return resources.files("adwatch").joinpath(f"data/prompts/{name}.txt").read_text("utf-8")


@dataclass(frozen=True)
class ChunkPlan:
    chunks: tuple
    budget: int
    overlap: int

    def __len__(self):
        return len(self.chunks)

    def texts(self, text):
        return [text[s:e] for s, e in self.chunks]

    def unique_spans(self):
        """Spans with overlaps removed; they tile the text exactly."""
        out, prev_end = [], 0
        for s, e in self.chunks:
            out.append((max(s, prev_end), e))
            prev_end = e
        return out


def sentence_spans(text):
    """``[start, end)`` spans, each sentence keeping its trailing whitespace."""
    spans, start = [], 0
    for m in _SENTENCE_END.finditer(text):
        spans.append((start, m.end()))
        start = m.end()
    if start < len(text):
        spans.append((start, len(text)))
    return spans


def _hard_split(text, start, end, max_bytes):
    pieces, s, size = [], start, 0
    for i in range(start, end):
        n = len(text[i].encode("utf-8"))
        if size + n > max_bytes and i > s:
            pieces.append((s, i))
            s, size = i, 0
        size += n
    pieces.append((s, end))
    return pieces


def chunk_text(text, budget=DEFAULT_BUDGET, overlap=DEFAULT_OVERLAP, divisor=TOKEN_DIVISOR):
    """Greedy sentence packing into chunks of at most ``budget`` tokens.

    Each chunk after the first starts with the longest run of whole trailing
    sentences of its predecessor that fits within ``overlap`` tokens.
    Sentences longer than the budget are cut at the budget boundary.
    """
    if not budget > overlap >= 0:
        raise ValueError("need budget > overlap >= 0")

    def est(s, e):
        return estimate_tokens(text[s:e], divisor)

    pieces = []
    for s, e in sentence_spans(text):
        if est(s, e) <= budget:
            pieces.append((s, e))
        else:
            pieces.extend(_hard_split(text, s, e, budget * divisor))

    chunks, i, n = [], 0, len(pieces)
    while i < n:
        start, j = pieces[i][0], i
        while j + 1 < n and est(start, pieces[j + 1][1]) <= budget:
            j += 1
        chunks.append((start, pieces[j][1]))
        if j == n - 1:
            break
        k = j + 1
        while k - 1 > i and est(pieces[k - 1][0], pieces[j][1]) <= overlap:
            k -= 1
        # the overlap must leave room for at least one new piece
        while k <= j and est(pieces[k][0], pieces[j + 1][1]) > budget:
            k += 1
        i = k
    return ChunkPlan(tuple(chunks), budget, overlap)


@dataclass
class ArticleSummary:
    url: str
    chunk_summaries: list
    summary: str
    model: str
    created_at: str = field(
        default_factory=lambda: dt.datetime.now(dt.timezone.utc).replace(microsecond=0).isoformat()
    )


@dataclass
class Summarizer:
    """Map-reduce summarizer bound to one completion provider."""

    llm: object
    budget: int = DEFAULT_BUDGET
    overlap: int = DEFAULT_OVERLAP
    context_budget: int = CONTEXT_BUDGET
    response_reserve: int = RESPONSE_RESERVE
    max_depth: int = MAX_REDUCE_DEPTH
    model: str = "gpt-4"
    temperature: float = 0.0
    max_workers: int = 1
    map_template: str = field(default_factory=lambda: load_template("map"))
    reduce_template: str = field(default_factory=lambda: load_template("reduce"))

    def __post_init__(self):
        for name in ("map_template", "reduce_template"):
            if getattr(self, name).count("{text}") != 1:
                raise ValueError(f"{name} must contain {{text}} exactly once")

    @property
    def prompt_limit(self):
        return self.context_budget - self.response_reserve

    def _call(self, template, text):
        prompt = template.replace("{text}", text)
        if estimate_tokens(prompt) > self.prompt_limit:
            raise PromptTooLong(f"prompt of {estimate_tokens(prompt)} tokens exceeds {self.prompt_limit}")
        request = CompletionRequest.from_prompt(
            prompt, model=self.model, temperature=self.temperature, max_tokens=self.response_reserve
        )
        return self.llm.complete(request).strip()

    def _map(self, texts, template):
        if self.max_workers > 1 and len(texts) > 1:
            with ThreadPoolExecutor(self.max_workers) as pool:
                return list(pool.map(lambda t: self._call(template, t), texts))
        return [self._call(template, t) for t in texts]

    def _truncate(self, text):
        limit = self.budget * TOKEN_DIVISOR
        return text.encode("utf-8")[:limit].decode("utf-8", errors="ignore")

    def reduce(self, summaries, depth=1):
        joined = "\n\n".join(summaries)
        if estimate_tokens(joined) <= self.budget:
            return self._call(self.reduce_template, joined)
        if depth >= self.max_depth:
            logger.warning("reduce depth cap hit; truncating %d tokens", estimate_tokens(joined))
            return self._call(self.reduce_template, self._truncate(joined))
        plan = chunk_text(joined, self.budget, 0)
        partials = self._map(plan.texts(joined), self.reduce_template)
        return self.reduce(partials, depth + 1)

    def summarize(self, article):
        text = article.text
        if not text or not text.strip():
            raise EmptyDocument(f"{article.url}: no text to summarize")
        plan = chunk_text(text, self.budget, self.overlap)
        chunk_summaries = self._map(plan.texts(text), self.map_template)
        summary = self.reduce(chunk_summaries)
        return ArticleSummary(article.url, chunk_summaries, summary, self.model)


def summarize_article(article, llm, budget=DEFAULT_BUDGET, overlap=DEFAULT_OVERLAP, **kwargs):
    return Summarizer(llm, budget=budget, overlap=overlap, **kwargs).summarize(article)


class SummaryStore:
    """Line-delimited summaries keyed by article URL (last record wins)."""

    def __init__(self, data_dir):
        self.path = Path(data_dir) / "summaries.jsonl"
        self._by_url = {}
        if self.path.exists():
            with open(self.path, encoding="utf-8") as fh:
                for line in fh:
                    rec = json.loads(line)
                    self._by_url[rec["url"]] = ArticleSummary(**rec)

    def __contains__(self, url):
        return url in self._by_url

    def __len__(self):
        return len(self._by_url)

    def get(self, url):
        return self._by_url[url]

    def add(self, summary):
        self.path.parent.mkdir(parents=True, exist_ok=True)
        with open(self.path, "a", encoding="utf-8") as fh:
            fh.write(json.dumps(asdict(summary), ensure_ascii=False, sort_keys=True) + "\n")
        self._by_url[summary.url] = summary

    def all(self):
        return list(self._by_url.values())
