import random
import threading
import time
from types import SimpleNamespace

import pytest
from hypothesis import given, settings, strategies as st

from adwatch.ingest import EmptyDocument
from adwatch.llm import estimate_tokens
from adwatch.summarize import (
    ArticleSummary, PromptTooLong, Summarizer, SummaryStore, chunk_text, load_template, summarize_article,
)


class CountingLLM:
    """Answers every prompt with a fixed short reply and remembers the prompts."""

    def __init__(self, reply="Short summary.", jitter=False):
        self.reply = reply
        self.prompts = []
        self.jitter = jitter
        self._lock = threading.Lock()

    @property
    def calls(self):
        return len(self.prompts)

    def complete(self, request):
        prompt = request.messages[-1].content
        if self.jitter:
            time.sleep(random.random() / 200)
        with self._lock:
            self.prompts.append(prompt)
        return self.reply(prompt) if callable(self.reply) else self.reply


def art(text, url="https://n.test/a"):
    return SimpleNamespace(url=url, text=text)


def sentence(i, size=300):
    body = (f"Sentence {i} says " + "x" * size)[:size - 2]
    return body + ". "


# -- chunk_text ------------------------------------------------------------------

def test_single_chunk_when_under_budget():
    text = "One. Two! Three?"
    plan = chunk_text(text, 100, 10)
    assert plan.chunks == ((0, len(text)),)


def test_empty_text_zero_chunks():
    assert len(chunk_text("", 100, 10)) == 0


def test_ten_sentences_trace():
    sents = [sentence(i) for i in range(10)]
    assert all(estimate_tokens(s) == 100 for s in sents)
    text = "".join(sents)
    plan = chunk_text(text, 350, 50)
    # 3 sentences fill 300 of 350 tokens; a whole 100-token sentence is wider than the overlap
    assert plan.chunks == ((0, 900), (900, 1800), (1800, 2700), (2700, 3000))
    assert "".join(text[s:e] for s, e in plan.unique_spans()) == text


def test_overlap_carries_whole_trailing_sentences():
    sents = [sentence(i, 90) for i in range(12)]  # 30 tokens each
    text = "".join(sents)
    plan = chunk_text(text, 100, 30)
    (s0, e0), (s1, e1) = plan.chunks[:2]
    assert e0 == 270 and s1 == 180  # one 30-token sentence repeated
    assert "".join(text[s:e] for s, e in plan.unique_spans()) == text


def test_oversized_sentence_hard_split():
    text = "y" * 1000 + ". tail."
    plan = chunk_text(text, 100, 10)
    assert all(estimate_tokens(t) <= 100 for t in plan.texts(text))
    assert "".join(text[s:e] for s, e in plan.unique_spans()) == text


def test_budget_must_exceed_overlap():
    with pytest.raises(ValueError):
        chunk_text("abc", 10, 10)


words = st.sampled_from(["alpha", "beta", "gamma", "delta", "epsilon", "zeta", "Ω", "é", "x" * 40])
seps = st.sampled_from([" ", " ", ". ", "! ", "? ", ".\n", ", "])
texts = st.lists(st.tuples(words, seps), max_size=200).map(lambda ps: "".join(w + s for w, s in ps))


@settings(max_examples=150)
@given(texts, st.integers(5, 120), st.integers(0, 60))
def test_chunk_invariants(text, budget, overlap):
    overlap = min(overlap, budget - 1)
    plan = chunk_text(text, budget, overlap)
    if not text:
        assert len(plan) == 0
        return
    assert plan.chunks[0][0] == 0 and plan.chunks[-1][1] == len(text)
    starts = [s for s, _ in plan.chunks]
    ends = [e for _, e in plan.chunks]
    assert starts == sorted(set(starts)) and ends == sorted(set(ends))
    assert all(s <= pe for s, pe in zip(starts[1:], ends))  # no gaps
    assert all(estimate_tokens(t) <= budget for t in plan.texts(text))
    assert "".join(text[s:e] for s, e in plan.unique_spans()) == text


# -- summarize -------------------------------------------------------------------

def test_one_chunk_article_two_calls():
    llm = CountingLLM()
    s = summarize_article(art("A short article. It has two sentences."), llm)
    assert llm.calls == 2 and s.summary == "Short summary."
    assert llm.prompts[0].startswith("Summarize the following news excerpt")
    assert llm.prompts[1].startswith("Combine the following partial summaries")


def test_four_chunk_article_five_calls():
    text = "".join(sentence(i) for i in range(10))
    llm = CountingLLM()
    s = summarize_article(art(text), llm, budget=350, overlap=50)
    assert len(chunk_text(text, 350, 50)) == 4
    assert llm.calls == 5 and len(s.chunk_summaries) == 4


def test_empty_article_no_calls():
    llm = CountingLLM()
    with pytest.raises(EmptyDocument):
        summarize_article(art(""), llm)
    assert llm.calls == 0


def test_recursive_reduce_when_summaries_are_long():
    long_reply = lambda p: ("word " * 200).strip() + "."  # noqa: E731  ~334 tokens each
    llm = CountingLLM(long_reply)
    text = "".join(sentence(i) for i in range(10))
    summ = Summarizer(llm, budget=350, overlap=50)
    summ.summarize(art(text))
    # 4 maps; joined summaries exceed the budget so a second reduce level runs
    assert llm.calls > 5
    assert all(estimate_tokens(p) <= summ.prompt_limit for p in llm.prompts)


def test_reduce_depth_capped():
    llm = CountingLLM(lambda p: "z " * 400)  # never shrinks
    summ = Summarizer(llm, budget=300, overlap=0, max_depth=3)
    summ.reduce(["a " * 400] * 4)
    assert llm.calls < 40


def test_prompt_budget_enforced():
    summ = Summarizer(CountingLLM(), budget=3000, context_budget=1000, response_reserve=512)
    with pytest.raises(PromptTooLong):
        summ._call(summ.map_template, "x" * 3000)


def test_max_tokens_is_response_reserve():
    seen = []

    class Spy(CountingLLM):
        def complete(self, request):
            seen.append(request.max_tokens)
            return super().complete(request)

    summarize_article(art("Some text here."), Spy())
    assert seen == [512, 512]


def test_concurrent_map_keeps_chunk_order():
    text = "".join(sentence(i) for i in range(10))
    llm = CountingLLM(lambda p: p.split("\n\n", 1)[1][:12], jitter=True)
    s = Summarizer(llm, budget=350, overlap=50, max_workers=4).summarize(art(text))
    assert s.chunk_summaries == ["Sentence 0 s", "Sentence 3 s", "Sentence 6 s", "Sentence 9 s"]


def test_deterministic():
    text = "".join(sentence(i) for i in range(10))
    echo = lambda p: p[-40:]  # noqa: E731
    a = Summarizer(CountingLLM(echo), budget=350, overlap=50).summarize(art(text))
    b = Summarizer(CountingLLM(echo), budget=350, overlap=50).summarize(art(text))
    assert (a.chunk_summaries, a.summary) == (b.chunk_summaries, b.summary)


def test_templates_shipped():
    assert load_template("map").startswith(
        "Summarize the following news excerpt about Alzheimer's disease in 3-5 sentences:")
    assert load_template("reduce").startswith("Combine the following partial summaries into one coherent summary:")


def test_summary_store_last_record_wins(tmp_path):
    store = SummaryStore(tmp_path)
    store.add(ArticleSummary("u", ["a"], "first", "m"))
    store.add(ArticleSummary("u", ["b"], "second", "m"))
    reopened = SummaryStore(tmp_path)
    assert len(reopened) == 1 and reopened.get("u").summary == "second"
