"""Regenerate the offline fixture corpus under src/adwatch/data/fixtures.

Writes the HTML pages, routes.json, the mini gazetteer, the ground-truth
manifest, offline.ini, a golden extraction file for the tests and finally
replay.jsonl. The replay script is recorded by running the real agent
pipeline against a small deterministic stand-in for the LLM: extractive
map and reduce summaries and a fixed plan for the agent.

    python3 tools/build_fixtures.py
"""

from __future__ import annotations

import html
import json
import re
import sys
import tempfile
from collections import Counter
from pathlib import Path

HERE = Path(__file__).resolve().parent
ROOT = HERE.parent
sys.path.insert(0, str(HERE))
sys.path.insert(0, str(ROOT / "src"))

from fixture_articles import ARTICLES, MINI_GAZETTEER  # noqa: E402

FIX = ROOT / "src" / "adwatch" / "data" / "fixtures"
GOLDEN = ROOT / "tests" / "golden"

SOURCES = {
    "alz": dict(name="Alzheimer's Association", index="https://www.alz.org/news",
                hosts=["www.alz.org"]),
    "bbc": dict(name="BBC", index="https://www.bbc.com/news/topics/c4gj7kmlw2gt",
                hosts=["www.bbc.com", "www.bbc.co.uk"]),
    "nia": dict(name="National Institute on Aging", index="https://www.nia.nih.gov/news",
                hosts=["www.nia.nih.gov"]),
    "mayo": dict(name="Mayo Clinic",
                 index="https://newsnetwork.mayoclinic.org/category/neurosciences/",
                 hosts=["newsnetwork.mayoclinic.org"]),
}

WINDOW = [f"2022-{m:02d}" for m in range(6, 13)] + [f"2023-{m:02d}" for m in range(1, 6)]

CHROME_HEAD = """<!DOCTYPE html>
<html lang="en">
<head>
<meta charset="utf-8">
<title>{title} | {site}</title>
{meta}<link rel="stylesheet" href="/static/site.css">
<script>window.dataLayer = window.dataLayer || []; function gtag(){{dataLayer.push(arguments);}}</script>
<style>.cookie-banner {{ position: fixed; bottom: 0; }}</style>
</head>
<body>
<header class="site-header"><a href="/">{site}</a>
<nav><ul><li><a href="/">Home</a></li><li><a href="/news">News</a></li><li><a href="/about-us">About us</a></li><li><a href="/donate">Donate</a></li></ul></nav>
</header>
<aside class="cookie-banner">We use cookies to improve your experience. <button>Accept all</button></aside>
<main>
<article>
"""

CHROME_TAIL = """</article>
<aside class="related"><h2>Related stories</h2><ul><li><a href="/news">More news</a></li></ul></aside>
</main>
<footer><p>Copyright {site}. All rights reserved.</p><nav><a href="/privacy">Privacy</a> <a href="/terms">Terms</a></nav></footer>
<script src="/static/analytics.js"></script>
</body>
</html>
"""


def page_name(a):
    return f"pages/{a['id']}.html"


def render_article(a):
    site = SOURCES[a["source"]]["name"]
    meta = ""
    if a["method"] == "meta":
        meta = f'<meta property="article:published_time" content="{a["date"]}T09:00:00-05:00">\n'
    parts = [CHROME_HEAD.format(title=html.escape(a["title"]), site=html.escape(site), meta=meta)]
    parts.append(f"<h1>{html.escape(a['title'])}</h1>\n")
    if a["method"] == "time":
        parts.append(f'<div class="byline">By Health reporter <time datetime="{a["date"]}T06:12:00Z">'
                     f'{a["date"]}</time></div>\n')
    for p in a["paragraphs"]:
        parts.append(f"<p>{html.escape(p)}</p>\n")
    parts.append(CHROME_TAIL.format(site=html.escape(site)))
    return "".join(parts)


def expected_text(a):
    """What a reader sees as article text: heading, byline date, paragraphs."""
    paras = [a["title"]]
    if a["method"] == "time":
        paras.append(f"By Health reporter {a['date']}")
    paras.extend(a["paragraphs"])
    return "\n\n".join(paras)


VIDEO_PAGE = """<!DOCTYPE html>
<html><head><title>Video</title></head>
<body><nav><a href="/news">News</a></nav>
<script>loadPlayer({"id": "p0d1x2y3", "autoplay": false});</script>
<footer>BBC</footer></body></html>
"""


def render_index(source_id, arts):
    src = SOURCES[source_id]
    links = []
    for i, a in enumerate(arts):
        path = a["url"].split("/", 3)[3]
        links.append(f'<li><a href="/{path}">{html.escape(a["title"])}</a></li>')
        if i == 0:
            # the same story again, through a comments anchor and a tracking link
            links.append(f'<li><a href="{a["url"]}#comments">Comments</a></li>')
            links.append(f'<li><a href="{a["url"]}?utm_source=home&amp;utm_medium=web">Top story</a></li>')
    if source_id == "bbc":
        links.append('<li><a href="/news/av/health-63100000">Video: living with dementia</a></li>')
    ads = ('<div class="ad"><a href="https://ads.example-adnetwork.com/click?id=991">Sponsored</a></div>\n'
           '<div class="ad"><a href="https://www.shop-example.com/brain-supplements">Boost your memory</a></div>')
    return (f"<!DOCTYPE html>\n<html><head><title>{html.escape(src['name'])} news</title></head>\n<body>\n"
            f'<header><nav><a href="/">Home</a> <a href="/about-us">About us</a></nav></header>\n'
            f"<main><h1>Latest news</h1>\n<ul>\n" + "\n".join(links) + "\n</ul>\n" + ads +
            f"\n</main>\n<footer><a href=\"mailto:press@example.org\">Press</a></footer>\n</body></html>\n")


OFFLINE_INI = """# Offline fixture configuration: bundled pages, mini gazetteer and a
# recorded replay script, so a full agent run needs no network.

[run]
data_dir = ./adwatch-data
output_dir = ./adwatch-output
window_start = 2022-06
window_end = 2023-05
transport = fixtures
fixture_dir = .
gazetteer = mini_gazetteer.tsv

[llm]
backend = replay
replay_path = replay.jsonl
model = gpt-4
context_budget = 4096
response_reserve = 512
# small chunks so that every article goes through map and reduce
chunk_budget = 200
chunk_overlap = 30

[lda]
K = 5
alpha = 0.1
beta = 0.01
sweeps = 500
seed = 42
top_n = 5

[agent]
max_steps = 15
max_consecutive_parse_failures = 3
tools = search_and_save_news summarize_news extract_spatial_data extract_temporal_data visualize_results
"""


def source_sections():
    out = []
    for sid, s in SOURCES.items():
        out.append(f"\n[source:{sid}]\ndisplay_name = {s['name']}\nindex_urls = {s['index']}\n"
                   f"host_allowlist = {' '.join(s['hosts'])}\nrate_limit = 0\n")
    return "".join(out)


# ---------------------------------------------------------------------------
# deterministic stand-in LLM used only for recording

_SENT = re.compile(r"(?<=[.!?])\s+(?=[A-Z0-9\"'])")


def _sentences(text):
    return [s.strip() for s in _SENT.split(" ".join(text.split())) if s.strip()]


AGENT_PLAN = [
    ("I should start by collecting recent Alzheimer's disease news from the trusted sources.",
     "search_and_save_news", "Alzheimer's disease news"),
    ("The articles are saved. Next I will summarize them so they are easier to analyse.",
     "summarize_news", "all saved articles"),
    ("With summaries ready I can find which places the news talks about.",
     "extract_spatial_data", "saved articles"),
    ("Now I want to see how coverage changes over time.",
     "extract_temporal_data", "saved articles"),
    ("Finally I will find the main topics and draw the plots the user asked for.",
     "visualize_results", "summaries, places and monthly counts"),
]

FINAL = ("I collected recent Alzheimer's disease news, summarized each article, located the places "
         "it mentions and counted coverage by month. Topic modelling of the summaries highlights "
         "amyloid antibody treatments such as lecanemab and donanemab, blood tests and biomarkers "
         "for earlier diagnosis, and risk factors such as sleep, hearing loss and air pollution. "
         "The map, the monthly chart and the two topic streamgraphs are in the output folder.")


class StandIn:
    def __init__(self):
        self.calls = 0

    def complete(self, request):
        self.calls += 1
        prompt = request.messages[-1].content
        head, _, body = prompt.partition("\n\n")
        if head.startswith("Summarize the following news excerpt"):
            return " ".join(_sentences(body)[:3])
        if head.startswith("Combine the following partial summaries"):
            seen, out = set(), []
            for part in body.split("\n\n"):
                for s in _sentences(part)[:2]:
                    if s not in seen:
                        seen.add(s)
                        out.append(s)
            return " ".join(out[:6])
        step = prompt.count("\nObservation:")
        if step < len(AGENT_PLAN):
            thought, action, arg = AGENT_PLAN[step]
            return f"Thought: {thought}\nAction: {action}\nAction Input: {arg}"
        return f"Thought: I now have everything needed to answer.\nFinal Answer: {FINAL}"


# ---------------------------------------------------------------------------


def main():
    from adwatch.llm import RecordingBackend
    from adwatch.pipeline import cmd_agent, load_config

    pages = FIX / "pages"
    pages.mkdir(parents=True, exist_ok=True)
    for old in pages.glob("*.html"):
        old.unlink()
    routes = {}
    for a in ARTICLES:
        (FIX / page_name(a)).write_text(render_article(a), "utf-8")
        routes[a["url"]] = page_name(a)
    (pages / "bbc-video.html").write_text(VIDEO_PAGE, "utf-8")
    routes["https://www.bbc.com/news/av/health-63100000"] = "pages/bbc-video.html"
    for sid, s in SOURCES.items():
        name = f"pages/index-{sid}.html"
        (FIX / name).write_text(render_index(sid, [a for a in ARTICLES if a["source"] == sid]), "utf-8")
        routes[s["index"]] = name
    (FIX / "routes.json").write_text(json.dumps(routes, indent=2) + "\n", "utf-8")

    lines = ["name\talternates\tlat\tlon\tpopulation\tcountry"]
    for name, alts, lat, lon, pop, cc in MINI_GAZETTEER:
        lines.append(f"{name}\t{alts}\t{lat}\t{lon}\t{pop}\t{cc}")
    (FIX / "mini_gazetteer.tsv").write_text("\n".join(lines) + "\n", "utf-8")

    months = Counter(a["date"][:7] for a in ARTICLES if a["date"])
    manifest = {
        "articles": [
            {
                "id": a["id"], "source": a["source"], "url": a["url"], "page": page_name(a),
                "title": a["title"], "published": a["date"], "date_method": a["method"],
                "places": [{"surface": s, "name": n, "country": c} for s, n, c in a["places"]],
            }
            for a in ARTICLES
        ],
        "monthly_counts": {m: months.get(m, 0) for m in WINDOW},
        "undated": sum(1 for a in ARTICLES if not a["date"]),
        "non_article_pages": ["https://www.bbc.com/news/av/health-63100000"],
        "ambiguous": [
            {"surface": "Paris", "expected": ["Paris", "FR"]},
            {"surface": "Birmingham", "expected": ["Birmingham", "GB"]},
            {"surface": "Cambridge", "expected": ["Cambridge", "GB"]},
            {"surface": "Rochester", "expected": ["Rochester", "US"], "expected_latitude": 43.15478},
            {"surface": "Melbourne", "expected": ["Melbourne", "AU"]},
            {"surface": "Dublin", "expected": ["Dublin", "IE"]},
        ],
    }
    (FIX / "manifest.json").write_text(json.dumps(manifest, indent=2) + "\n", "utf-8")
    (FIX / "offline.ini").write_text(OFFLINE_INI + source_sections(), "utf-8")

    GOLDEN.mkdir(parents=True, exist_ok=True)
    gold = next(a for a in ARTICLES if a["id"] == "bbc-blood-test")
    (GOLDEN / "bbc-blood-test.txt").write_text(expected_text(gold) + "\n", "utf-8")

    # record the replay script with a placeholder file so config validation passes
    replay = FIX / "replay.jsonl"
    if not replay.exists():
        replay.write_text("", "utf-8")
    with tempfile.TemporaryDirectory() as tmp:
        cfg = load_config(FIX / "offline.ini", data_dir=Path(tmp) / "data", output_dir=Path(tmp) / "out")
        rec = RecordingBackend(StandIn())
        report, transcript = cmd_agent(cfg, "Can you help me to know something new about "
                                       "Alzheimer's Disease and maybe draw some plots for me?", llm=rec)
        rec.script().dump(replay)
        print(f"recorded {rec.inner.calls} calls; agent {transcript.terminated_reason} "
              f"after {len(transcript.steps)} steps; fetch {report.fetch_status}")


if __name__ == "__main__":
    main()
