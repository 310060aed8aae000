"""Run configuration, pipeline stages and the agent tool library."""

from __future__ import annotations

import configparser
import json
import logging
import re
from collections import Counter
from dataclasses import asdict, dataclass, field
from importlib import resources
from pathlib import Path

from .agent import AgentConfig, ToolRegistry, ToolSpec, run_loop
from .geoparse import bundled_gazetteer, geoparse_corpus, load_gazetteer, load_stoplist, read_mentions, write_mentions
from .ingest import ArticleStore, FixtureTransport, HostThrottle, HttpTransport, NewsSource, crawl_source
from .llm import HttpBackend, ReplayBackend
from .summarize import Summarizer, SummaryStore
from .topics import (
    LdaConfig, fit, load_model, preprocess, save_model, write_doc_topic_table, write_topic_table,
)
from .trends import (
    emit_map_scatter, emit_monthly_bar, emit_streamgraph, keyword_trends, month_label, monthly_counts,
    parse_month, undated_count,
)

logger = logging.getLogger(__name__)

STAGES = ("ingest", "summarize", "geoparse", "lda", "plot")
TOOL_NAMES = (
    "search_and_save_news", "summarize_news", "extract_spatial_data",
    "extract_temporal_data", "visualize_results",
)
OUTPUT_NAMES = ("map", "monthly", "topics_count", "topics_weight")


class ConfigError(ValueError):
    pass


class MissingUpstream(RuntimeError):
    def __init__(self, artifact):
        super().__init__(f"missing upstream artifact: {artifact}")
        self.artifact = artifact


# ---------------------------------------------------------------------------
# configuration


@dataclass
class RunConfig:
    data_dir: Path
    output_dir: Path
    backend: str = "http"
    endpoint_url: str = "https://api.openai.com/v1/chat/completions"
    api_key_env: str = "OPENAI_API_KEY"
    replay_path: Path | None = None
    model: str = "gpt-4"
    context_budget: int = 4096
    response_reserve: int = 512
    chunk_budget: int = 3000
    chunk_overlap: int = 100
    sources: list = field(default_factory=list)
    lda: LdaConfig = field(default_factory=LdaConfig)
    top_n: int = 5
    window: tuple = ((2022, 6), (2023, 5))
    agent: AgentConfig = field(default_factory=AgentConfig)
    tools: tuple = TOOL_NAMES
    transport: str = "http"
    fixture_dir: Path | None = None
    gazetteer_path: Path | None = None

    def validate(self):
        if self.backend not in ("http", "replay"):
            raise ConfigError(f"unknown backend {self.backend!r}")
        if self.backend == "http" and not self.endpoint_url:
            raise ConfigError("http backend needs endpoint_url")
        if self.backend == "replay" and not self.replay_path:
            raise ConfigError("replay backend needs replay_path")
        if self.backend == "replay" and not Path(self.replay_path).is_file():
            raise ConfigError(f"replay file not found: {self.replay_path}")
        if self.transport not in ("http", "fixtures"):
            raise ConfigError(f"unknown transport {self.transport!r}")
        if self.transport == "fixtures" and not (self.fixture_dir and Path(self.fixture_dir).is_dir()):
            raise ConfigError("fixtures transport needs an existing fixture_dir")
        unknown = set(self.tools) - set(TOOL_NAMES)
        if unknown:
            raise ConfigError(f"unknown tools: {sorted(unknown)}")
        if parse_month(self.window[0]) > parse_month(self.window[1]):
            raise ConfigError("window start after end")
        if self.chunk_budget + 64 > self.context_budget - self.response_reserve:
            raise ConfigError("chunk_budget leaves no room for the prompt template")
        for d in (self.data_dir, self.output_dir):
            try:
                Path(d).mkdir(parents=True, exist_ok=True)
            except OSError as exc:
                raise ConfigError(f"cannot create {d}: {exc}") from exc
        return self


def default_config_path():
    return resources.files("adwatch").joinpath("data/default.ini")


def fixture_config_path():
    return resources.files("adwatch").joinpath("data/fixtures/offline.ini")


def _split(value):
    return [v for v in re.split(r"[\s,]+", value or "") if v]


def _path(base, value):
    if not value:
        return None
    p = Path(value).expanduser()
    return p if p.is_absolute() else (base / p)


def load_config(path=None, **overrides):
    """Parse a sectioned key-value config file into a :class:`RunConfig`.

    Relative input paths (fixtures, gazetteer, replay script, prompt) resolve
    against the config file's directory; relative data and output
    directories resolve against the working directory. Keyword
    overrides (``data_dir``, ``output_dir``, ``backend``, ``replay_path``,
    ``seed``) win over the file.
    """
    path = Path(path) if path is not None else Path(str(default_config_path()))
    cp = configparser.ConfigParser(interpolation=None)
    try:
        with open(path, encoding="utf-8") as fh:
            cp.read_file(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    base = path.resolve().parent
    run = cp["run"] if cp.has_section("run") else {}
    llm = cp["llm"] if cp.has_section("llm") else {}
    lda = cp["lda"] if cp.has_section("lda") else {}
    ag = cp["agent"] if cp.has_section("agent") else {}
    try:
        sources = [
            NewsSource(
                id=sec.split(":", 1)[1],
                display_name=cp[sec].get("display_name", sec.split(":", 1)[1]),
                index_urls=_split(cp[sec].get("index_urls")),
                host_allowlist=_split(cp[sec].get("host_allowlist")),
                rate_limit=cp[sec].getfloat("rate_limit", 1.0),
            )
            for sec in cp.sections() if sec.startswith("source:")
        ]
        template = None
        if ag.get("prompt_template"):
            template = _path(base, ag.get("prompt_template")).read_text("utf-8")
        context_budget = int(llm.get("context_budget", 4096))
        reserve = int(llm.get("response_reserve", 512))
        agent_kwargs = dict(
            max_steps=int(ag.get("max_steps", 15)),
            max_consecutive_parse_failures=int(ag.get("max_consecutive_parse_failures", 3)),
            token_budget=context_budget - reserve,
            model=llm.get("model", "gpt-4"),
        )
        if template is not None:
            agent_kwargs["prompt_template"] = template
        seed = overrides.pop("seed", None)
        cfg = RunConfig(
            data_dir=Path(run.get("data_dir", "adwatch-data")).expanduser(),
            output_dir=Path(run.get("output_dir", "adwatch-output")).expanduser(),
            backend=llm.get("backend", "http"),
            endpoint_url=llm.get("endpoint_url", RunConfig.endpoint_url),
            api_key_env=llm.get("api_key_env", "OPENAI_API_KEY"),
            replay_path=_path(base, llm.get("replay_path")),
            model=llm.get("model", "gpt-4"),
            context_budget=context_budget,
            response_reserve=reserve,
            chunk_budget=int(llm.get("chunk_budget", 3000)),
            chunk_overlap=int(llm.get("chunk_overlap", 100)),
            sources=sources,
            lda=LdaConfig(
                K=int(lda.get("K", 5)),
                alpha=float(lda.get("alpha", 0.1)),
                beta=float(lda.get("beta", 0.01)),
                sweeps=int(lda.get("sweeps", 500)),
                seed=int(seed if seed is not None else lda.get("seed", 42)),
            ),
            top_n=int(lda.get("top_n", 5)),
            window=(parse_month(run.get("window_start", "2022-06")),
                    parse_month(run.get("window_end", "2023-05"))),
            agent=AgentConfig(**agent_kwargs),
            tools=tuple(_split(ag.get("tools", " ".join(TOOL_NAMES)))),
            transport=run.get("transport", "http"),
            fixture_dir=_path(base, run.get("fixture_dir")),
            gazetteer_path=_path(base, run.get("gazetteer")),
        )
    except (ValueError, KeyError) as exc:
        raise ConfigError(f"{path}: {exc}") from exc
    for key, value in overrides.items():
        if value is None:
            continue
        if key in ("data_dir", "output_dir", "replay_path"):
            value = Path(value)
        if not hasattr(cfg, key):
            raise ConfigError(f"unknown override {key!r}")
        setattr(cfg, key, value)
    return cfg


# ---------------------------------------------------------------------------
# run context


@dataclass
class RunReport:
    articles_ingested: int = 0
    articles_stored: int = 0
    articles_summarized: int = 0
    mentions_found: int = 0
    undated_excluded: int = 0
    llm_calls: int = 0
    fetch_status: dict = field(default_factory=dict)
    outputs: list = field(default_factory=list)
    transcript_path: str | None = None
    terminated_reason: str | None = None
    final_answer: str | None = None
    stage: str | None = None

    def dump(self, path):
        Path(path).write_text(json.dumps(asdict(self), indent=2, sort_keys=True) + "\n", "utf-8")


class Run:
    """Shared state for one invocation: config, LLM backend, stores, report."""

    def __init__(self, config, llm=None, transport=None, throttle_factory=None):
        self.config = config.validate()
        self.data_dir = Path(config.data_dir)
        self.output_dir = Path(config.output_dir)
        self.llm = llm if llm is not None else self._make_llm()
        self.transport = transport if transport is not None else self._make_transport()
        self.throttle_factory = throttle_factory or (lambda src: HostThrottle(src.rate_limit))
        self.report = RunReport()

    def _make_llm(self):
        c = self.config
        if c.backend == "replay":
            return ReplayBackend.from_file(c.replay_path)
        return HttpBackend(c.endpoint_url, api_key_env=c.api_key_env)

    def _make_transport(self):
        if self.config.transport == "fixtures":
            return FixtureTransport(self.config.fixture_dir)
        return HttpTransport()

    # -- artifacts --------------------------------------------------------

    @property
    def store(self):
        return ArticleStore(self.data_dir)

    @property
    def mentions_path(self):
        return self.data_dir / "mentions.csv"

    @property
    def lda_dir(self):
        return self.data_dir / "lda"

    def articles(self, need=True):
        arts = self.store.articles()
        if need and not arts:
            raise MissingUpstream("article store")
        return arts

    def gazetteer(self):
        if self.config.gazetteer_path:
            return load_gazetteer(self.config.gazetteer_path)
        return bundled_gazetteer()

    def llm_calls(self):
        return getattr(self.llm, "calls", 0)

    def output(self, name):
        path = self.output_dir / name
        if str(path) not in self.report.outputs:
            self.report.outputs.append(str(path))
        return path

    # -- stages -----------------------------------------------------------

    def ingest(self, extra_urls=()):
        store = self.store
        before = len(store)
        records = []
        for src in self.config.sources:
            records.extend(crawl_source(src, store, self.transport,
                                        throttle=self.throttle_factory(src), extra_urls=extra_urls))
        with open(self.data_dir / "fetch_log.jsonl", "a", encoding="utf-8") as fh:
            for r in records:
                fh.write(json.dumps(asdict(r), sort_keys=True) + "\n")
        status = Counter(r.status for r in records)
        self.report.fetch_status = dict(sorted(status.items()))
        self.report.articles_ingested = len(store) - before
        self.report.articles_stored = len(store)
        return (
            f"Fetched {len(store) - before} new articles from {len(self.config.sources)} sources "
            f"({status.get('duplicate', 0)} duplicates, {status.get('http_error', 0)} http errors, "
            f"{status.get('parse_error', 0)} parse errors); the store now holds {len(store)} articles."
        )

    def summarizer(self):
        c = self.config
        return Summarizer(self.llm, budget=c.chunk_budget, overlap=c.chunk_overlap,
                          context_budget=c.context_budget, response_reserve=c.response_reserve,
                          model=c.model)

    def summarize(self):
        arts = self.articles()
        summaries = SummaryStore(self.data_dir)
        summarizer = self.summarizer()
        new = 0
        for a in arts:
            if a.url in summaries:
                continue
            summaries.add(summarizer.summarize(a))
            new += 1
        self.report.articles_summarized = len(summaries)
        return f"Summarized {new} articles; {len(summaries)} of {len(arts)} stored articles have summaries."

    def geoparse(self):
        arts = self.articles()
        mentions = geoparse_corpus(arts, self.gazetteer(), load_stoplist())
        write_mentions(mentions, self.mentions_path)
        self.report.mentions_found = len(mentions)
        places = Counter(m.resolved_name for m in mentions)
        top = ", ".join(f"{n} ({c})" for n, c in sorted(places.items(), key=lambda kv: (-kv[1], kv[0]))[:5])
        return (f"Found {len(mentions)} place mentions across {len(arts)} articles; "
                f"most mentioned: {top or 'none'}.")

    def temporal(self):
        arts = self.articles()
        counts = monthly_counts(arts, self.config.window)
        undated = undated_count(arts)
        payload = {
            "window": [month_label(self.config.window[0]), month_label(self.config.window[1])],
            "counts": {month_label(c.month): c.count for c in counts},
            "undated_excluded": undated,
        }
        (self.data_dir / "temporal.json").write_text(json.dumps(payload, indent=2) + "\n", "utf-8")
        self.report.undated_excluded = undated
        peak = max(counts, key=lambda c: c.count)
        return (f"Counted {sum(c.count for c in counts)} dated articles over {len(counts)} months "
                f"(peak {month_label(peak.month)} with {peak.count}); {undated} undated articles excluded.")

    def lda(self):
        summaries = SummaryStore(self.data_dir)
        if not len(summaries):
            raise MissingUpstream("summaries")
        arts = [a for a in self.articles() if a.url in summaries]
        corpus = preprocess([summaries.get(a.url).summary for a in arts],
                            [a.url for a in arts], [a.published_at for a in arts])
        model = fit(corpus, self.config.lda)
        self.lda_dir.mkdir(parents=True, exist_ok=True)
        save_model(model, corpus, self.lda_dir / "model.json")
        write_topic_table(model, self.lda_dir / "topics.csv", self.config.top_n)
        write_doc_topic_table(model, corpus, self.lda_dir / "doc_topics.csv")
        return f"Fitted LDA with K={model.K} on {len(corpus)} summaries ({model.V} terms)."

    def plot(self):
        model_path = self.lda_dir / "model.json"
        if not model_path.exists():
            raise MissingUpstream("lda model")
        if not self.mentions_path.exists():
            raise MissingUpstream("geoparse mentions")
        arts = self.articles()
        model, corpus = load_model(model_path)
        emit_map_scatter(read_mentions(self.mentions_path), self.output("map.svg"))
        self.output("map.csv")
        counts = monthly_counts(arts, self.config.window)
        emit_monthly_bar(counts, self.output("monthly.svg"))
        self.output("monthly.csv")
        self.report.undated_excluded = undated_count(arts)
        for kind in ("count", "weight"):
            series = keyword_trends(model, corpus, self.config.top_n, kind, self.config.window)
            title = "Keyword occurrences by topic" if kind == "count" else "Keyword weight by topic"
            emit_streamgraph(series, self.output(f"topics_{kind}.svg"), title=title)
            self.output(f"topics_{kind}.csv")
        # file names only: observations must not depend on where the run lives
        names = ", ".join(f"{n}.svg" for n in OUTPUT_NAMES)
        return f"Wrote {len(OUTPUT_NAMES)} figures with CSV sidecars: {names}."

    def visualize(self):
        return self.lda() + " " + self.plot()

    # -- agent ------------------------------------------------------------

    def registry(self):
        specs = {
            "search_and_save_news": (ToolSpec(
                "search_and_save_news",
                "Collect the latest Alzheimer's disease news from the configured sources and save it locally.",
                "a search phrase; any URLs in it are fetched as well"), self._tool_ingest),
            "summarize_news": (ToolSpec(
                "summarize_news", "Summarize every saved news article with map-reduce summarization.",
                "ignored"), lambda _: self.summarize()),
            "extract_spatial_data": (ToolSpec(
                "extract_spatial_data", "Find and geocode the places mentioned in the saved news.",
                "ignored"), lambda _: self.geoparse()),
            "extract_temporal_data": (ToolSpec(
                "extract_temporal_data", "Count the saved news by publication month.",
                "ignored"), lambda _: self.temporal()),
            "visualize_results": (ToolSpec(
                "visualize_results",
                "Run LDA topic modelling on the summaries and draw the map, monthly chart and topic streamgraphs.",
                "ignored"), lambda _: self.visualize()),
        }
        reg = ToolRegistry()
        for name in self.config.tools:
            reg.register(*specs[name])
        return reg

    def _tool_ingest(self, action_input):
        urls = re.findall(r"https?://\S+", action_input or "")
        return self.ingest(extra_urls=urls)

    def finish(self, stage):
        self.report.stage = stage
        self.report.llm_calls = self.llm_calls()
        path = self.output_dir / "report.json"
        self.report.dump(path)
        return self.report


def cmd_agent(config, question, llm=None, transport=None, throttle_factory=None):
    run = Run(config, llm, transport, throttle_factory)
    registry = run.registry()
    if not len(registry):
        raise ConfigError("no tools enabled")
    transcript = run_loop(config.agent, registry, run.llm, question)
    path = run.output_dir / "transcript.jsonl"
    transcript.dump(path)
    run.report.transcript_path = str(path)
    run.report.terminated_reason = transcript.terminated_reason
    run.report.final_answer = transcript.final_answer
    return run.finish("agent"), transcript


def cmd_stage(config, stage, llm=None, transport=None, throttle_factory=None):
    if stage not in STAGES:
        raise ConfigError(f"unknown stage {stage!r}")
    run = Run(config, llm, transport, throttle_factory)
    getattr(run, stage)()
    return run.finish(stage)
