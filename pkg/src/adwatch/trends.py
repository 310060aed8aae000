"""Temporal aggregation and SVG/CSV emitters for maps, monthly bars and streamgraphs."""

from __future__ import annotations

import csv
import math
from collections import Counter
from dataclasses import dataclass
from pathlib import Path
from xml.sax.saxutils import escape

import numpy as np
from scipy.interpolate import PchipInterpolator

from .topics import dominant_topics, top_words, topic_ranking

MAP_SIZE = (1000, 500)
CHART_SIZE = (900, 400)
PALETTE = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e",
           "#17becf", "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22")


# ---------------------------------------------------------------------------
# months


def parse_month(value):
    if isinstance(value, tuple):
        return value
    y, m = str(value).split("-")[:2]
    month = (int(y), int(m))
    if not 1 <= month[1] <= 12:
        raise ValueError(f"bad month {value!r}")
    return month


def month_label(month):
    return f"{month[0]:04d}-{month[1]:02d}"


def month_range(start, end):
    start, end = parse_month(start), parse_month(end)
    if start > end:
        raise ValueError("window start after end")
    out, (y, m) = [], start
    while (y, m) <= end:
        out.append((y, m))
        y, m = (y + 1, 1) if m == 12 else (y, m + 1)
    return out


def month_of(date):
    return (date.year, date.month)


@dataclass(frozen=True)
class MonthlyCount:
    month: tuple
    count: int


@dataclass(frozen=True)
class TrendSeries:
    topic: int
    keyword: str
    points: tuple
    kind: str
    rank: int = 0

    def values(self):
        return [v for _, v in self.points]


def monthly_counts(articles, window):
    """Dated articles per month over a contiguous, zero-filled window."""
    axis = month_range(*window)
    tally = Counter(month_of(a.published_at) for a in articles if a.published_at is not None)
    return [MonthlyCount(m, tally.get(m, 0)) for m in axis]


def undated_count(articles):
    return sum(1 for a in articles if a.published_at is None)


def keyword_trends(model, corpus, top_n=5, kind="count", window=None):
    """Per-month series for the top terms of every topic.

    ``count`` tallies the term inside documents whose dominant topic is the
    series' topic; ``weight`` is phi[k, term] times that month's share of
    documents dominated by topic k. Topics come in ranking order.
    """
    if kind not in ("count", "weight"):
        raise ValueError(f"unknown trend kind {kind!r}")
    dated = [d for d, date in enumerate(corpus.doc_dates) if date is not None]
    if window is None:
        months = sorted({month_of(corpus.doc_dates[d]) for d in dated})
        axis = month_range(months[0], months[-1]) if months else []
    else:
        axis = month_range(*window)
    pos = {m: i for i, m in enumerate(axis)}
    dom = dominant_topics(model)
    phi = model.phi()
    docs_in_month = np.zeros(len(axis))
    topic_docs = np.zeros((model.K, len(axis)))
    term_counts = {}
    for d in dated:
        i = pos.get(month_of(corpus.doc_dates[d]))
        if i is None:
            continue
        docs_in_month[i] += 1
        topic_docs[dom[d], i] += 1
        for w, c in Counter(corpus.documents[d]).items():
            key = (dom[d], w)
            term_counts.setdefault(key, np.zeros(len(axis)))[i] += c
    share = np.divide(topic_docs, docs_in_month, out=np.zeros_like(topic_docs),
                      where=docs_in_month > 0)
    out = []
    for rank, k in enumerate(topic_ranking(model)):
        for term, _ in top_words(model, k, top_n):
            w = corpus.term_index[term]
            if kind == "count":
                vals = term_counts.get((k, w), np.zeros(len(axis)))
                points = tuple((m, int(v)) for m, v in zip(axis, vals))
            else:
                points = tuple((m, float(phi[k, w] * s)) for m, s in zip(axis, share[k]))
            out.append(TrendSeries(k, term, points, kind, rank))
    return out


# ---------------------------------------------------------------------------
# svg helpers


def _f(x):
    s = f"{x:.3f}"
    return "0.000" if s == "-0.000" else s


def _svg_open(width, height):
    return [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        f'<rect x="0" y="0" width="{width}" height="{height}" fill="#ffffff"/>',
    ]


def _write(path, lines):
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    return path


def _write_csv(path, header, rows):
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        w.writerows(rows)
    return path


# ---------------------------------------------------------------------------
# map


def project(lat, lon, width=MAP_SIZE[0], height=MAP_SIZE[1]):
    """Equirectangular projection to SVG pixel coordinates."""
    return (lon + 180.0) / 360.0 * width, (90.0 - lat) / 180.0 * height


def place_counts(mentions):
    tally = Counter((m.resolved_name, m.latitude, m.longitude) for m in mentions)
    return sorted(((n, la, lo, c) for (n, la, lo), c in tally.items()),
                  key=lambda r: (-r[3], r[0], r[1], r[2]))


def circle_radius(count, base=3.0):
    return base * math.sqrt(count)


def emit_map_scatter(mentions, out_path, width=MAP_SIZE[0], height=MAP_SIZE[1]):
    """Map SVG plus ``name,lat,lon,count`` CSV sidecar (same stem)."""
    rows = place_counts(mentions)
    lines = _svg_open(width, height)
    lines.append('<g class="graticule" stroke="#cccccc" stroke-width="0.5">')
    for lon in range(-180, 181, 30):
        x, _ = project(0, lon, width, height)
        lines.append(f'<line x1="{_f(x)}" y1="0.000" x2="{_f(x)}" y2="{_f(height)}"/>')
    for lat in range(-90, 91, 30):
        _, y = project(lat, 0, width, height)
        lines.append(f'<line x1="0.000" y1="{_f(y)}" x2="{_f(width)}" y2="{_f(y)}"/>')
    lines.append("</g>")
    lines.append('<g class="places" fill="#d62728" fill-opacity="0.6" stroke="#7f0000">')
    for name, lat, lon, count in rows:
        x, y = project(lat, lon, width, height)
        lines.append(
            f'<circle cx="{_f(x)}" cy="{_f(y)}" r="{_f(circle_radius(count))}">'
            f"<title>{escape(name)} ({count})</title></circle>"
        )
    lines.append("</g>")
    lines.append("</svg>")
    svg = _write(out_path, lines)
    _write_csv(Path(out_path).with_suffix(".csv"), ("name", "lat", "lon", "count"),
               [(n, repr(la), repr(lo), c) for n, la, lo, c in rows])
    return svg


# ---------------------------------------------------------------------------
# monthly bars

_MARGIN = dict(left=60, right=20, top=20, bottom=60)


def bar_geometry(counts, width=CHART_SIZE[0], height=CHART_SIZE[1]):
    """``(x, y, w, h)`` per bar in pixels; heights proportional to counts."""
    plot_w = width - _MARGIN["left"] - _MARGIN["right"]
    plot_h = height - _MARGIN["top"] - _MARGIN["bottom"]
    n = max(len(counts), 1)
    slot = plot_w / n
    top = max((c.count for c in counts), default=0)
    scale = plot_h / top if top else 0.0
    base = _MARGIN["top"] + plot_h
    out = []
    for i, c in enumerate(counts):
        h = c.count * scale
        out.append((_MARGIN["left"] + i * slot + 0.1 * slot, base - h, 0.8 * slot, h))
    return out


def emit_monthly_bar(counts, out_path, width=CHART_SIZE[0], height=CHART_SIZE[1]):
    geom = bar_geometry(counts, width, height)
    plot_h = height - _MARGIN["top"] - _MARGIN["bottom"]
    base = _MARGIN["top"] + plot_h
    left, right = _MARGIN["left"], width - _MARGIN["right"]
    top = max((c.count for c in counts), default=0)
    lines = _svg_open(width, height)
    lines.append(f'<g class="axis" stroke="#333333" font-size="11" font-family="sans-serif">')
    lines.append(f'<line x1="{_f(left)}" y1="{_f(base)}" x2="{_f(right)}" y2="{_f(base)}"/>')
    lines.append(f'<line x1="{_f(left)}" y1="{_f(_MARGIN["top"])}" x2="{_f(left)}" y2="{_f(base)}"/>')
    for v in _nice_ticks(top):
        y = base - (v / top * plot_h if top else 0.0)
        lines.append(f'<text class="ytick" x="{_f(left - 6)}" y="{_f(y + 4)}" text-anchor="end" '
                     f'stroke="none">{v}</text>')
    for c, (x, _, w, _) in zip(counts, geom):
        cx = x + w / 2
        lines.append(f'<text class="xtick" x="{_f(cx)}" y="{_f(base + 16)}" text-anchor="end" '
                     f'transform="rotate(-45 {_f(cx)} {_f(base + 16)})" stroke="none">'
                     f"{month_label(c.month)}</text>")
    lines.append(f'<text x="{_f((left + right) / 2)}" y="{_f(height - 4)}" text-anchor="middle" '
                 f'stroke="none">Month</text>')
    lines.append("</g>")
    lines.append('<g class="bars" fill="#1f77b4">')
    for c, (x, y, w, h) in zip(counts, geom):
        lines.append(f'<rect x="{_f(x)}" y="{_f(y)}" width="{_f(w)}" height="{_f(h)}">'
                     f"<title>{month_label(c.month)}: {c.count}</title></rect>")
    lines.append("</g>")
    lines.append("</svg>")
    svg = _write(out_path, lines)
    _write_csv(Path(out_path).with_suffix(".csv"), ("month", "count"),
               [(month_label(c.month), c.count) for c in counts])
    return svg


def _nice_ticks(top):
    if top <= 0:
        return [0]
    step = max(1, math.ceil(top / 5))
    return list(range(0, top + 1, step))


# ---------------------------------------------------------------------------
# streamgraph


@dataclass(frozen=True)
class StreamLayout:
    xs: tuple
    lower: tuple  # per layer, per month, data units (baseline-relative)
    upper: tuple
    scale: float
    mid: float

    def to_y(self, value):
        return self.mid - value * self.scale


def stream_layout(series, width=CHART_SIZE[0], height=CHART_SIZE[1], legend_width=200):
    """Symmetric-baseline stacking: baseline = -total/2 at each month."""
    if not series:
        return StreamLayout((), (), (), 0.0, height / 2)
    n = len(series[0].points)
    if any(len(s.points) != n for s in series):
        raise ValueError("series do not share the month axis")
    values = np.array([s.values() for s in series], dtype=float)
    totals = values.sum(axis=0)
    left, right = _MARGIN["left"], width - _MARGIN["right"] - legend_width
    top, bottom = _MARGIN["top"], height - _MARGIN["bottom"]
    xs = np.linspace(left, right, n) if n > 1 else np.array([(left + right) / 2])
    peak = totals.max() if n else 0.0
    scale = (bottom - top) / peak if peak > 0 else 0.0
    lower = -totals / 2 + np.vstack([np.zeros(n), np.cumsum(values, axis=0)[:-1]])
    upper = lower + values
    return StreamLayout(tuple(xs), tuple(map(tuple, lower)), tuple(map(tuple, upper)),
                        scale, (top + bottom) / 2)


def _tangents(xs, ys):
    if len(xs) < 2:
        return [0.0] * len(xs)
    return list(PchipInterpolator(xs, ys).derivative()(xs))


def outline_segments(xs, ys):
    """Monotone cubic Hermite through the points, as Bezier control tuples."""
    ms = _tangents(xs, ys)
    segs = []
    for i in range(len(xs) - 1):
        dx = xs[i + 1] - xs[i]
        segs.append((
            (xs[i] + dx / 3, ys[i] + ms[i] * dx / 3),
            (xs[i + 1] - dx / 3, ys[i + 1] - ms[i + 1] * dx / 3),
            (xs[i + 1], ys[i + 1]),
        ))
    return segs


def layer_path(layout, j):
    xs = list(layout.xs)
    up = [layout.to_y(v) for v in layout.upper[j]]
    lo = [layout.to_y(v) for v in layout.lower[j]]
    if len(xs) == 1:
        xs = [xs[0] - 5, xs[0] + 5]
        up, lo = up * 2, lo * 2
    parts = [f"M{_f(xs[0])},{_f(up[0])}"]
    for c1, c2, p in outline_segments(xs, up):
        parts.append(f"C{_f(c1[0])},{_f(c1[1])} {_f(c2[0])},{_f(c2[1])} {_f(p[0])},{_f(p[1])}")
    parts.append(f"L{_f(xs[-1])},{_f(lo[-1])}")
    # lower edge fitted left to right, then walked backwards
    lower = outline_segments(xs, lo)
    for i in range(len(lower) - 1, -1, -1):
        c1, c2, _ = lower[i]
        p = (xs[i], lo[i])
        parts.append(f"C{_f(c2[0])},{_f(c2[1])} {_f(c1[0])},{_f(c1[1])} {_f(p[0])},{_f(p[1])}")
    parts.append("Z")
    return " ".join(parts)


def _shade(hex_color, idx, n):
    r, g, b = (int(hex_color[i:i + 2], 16) for i in (1, 3, 5))
    t = 0.55 * idx / max(n, 1)
    mix = lambda c: int(round(c + (255 - c) * t))  # noqa: E731
    return f"#{mix(r):02x}{mix(g):02x}{mix(b):02x}"


def emit_streamgraph(series, out_path, width=CHART_SIZE[0], height=CHART_SIZE[1], title=""):
    """Streamgraph SVG with a keyword legend grouped by topic, plus CSV sidecar."""
    layout = stream_layout(series, width, height)
    lines = _svg_open(width, height)
    if title:
        lines.append(f'<text x="{_f(width / 2)}" y="14" text-anchor="middle" font-size="13" '
                     f'font-family="sans-serif">{escape(title)}</text>')
    groups = {}
    for s in series:
        groups.setdefault((s.rank, s.topic), []).append(s)
    colors = {}
    for (rank, topic), members in groups.items():
        base = PALETTE[rank % len(PALETTE)]
        for i, s in enumerate(members):
            colors[(s.topic, s.keyword)] = _shade(base, i, len(members))
    lines.append('<g class="layers" stroke="#ffffff" stroke-width="0.4">')
    for j, s in enumerate(series):
        lines.append(f'<path class="layer" fill="{colors[(s.topic, s.keyword)]}" '
                     f'd="{layer_path(layout, j)}"><title>topic {s.topic}: '
                     f"{escape(s.keyword)}</title></path>")
    lines.append("</g>")
    axis_y = height - _MARGIN["bottom"] + 16
    lines.append('<g class="axis" font-size="10" font-family="sans-serif">')
    months = [m for m, _ in series[0].points] if series else []
    for x, m in zip(layout.xs, months):
        lines.append(f'<text class="xtick" x="{_f(x)}" y="{_f(axis_y)}" text-anchor="end" '
                     f'transform="rotate(-45 {_f(x)} {_f(axis_y)})">{month_label(m)}</text>')
    lines.append("</g>")
    lx = width - 200 + 10
    ly = _MARGIN["top"]
    lines.append('<g class="legend" font-size="10" font-family="sans-serif">')
    for (rank, topic), members in groups.items():
        lines.append(f'<text class="legend-topic" x="{_f(lx)}" y="{_f(ly + 9)}" '
                     f'font-weight="bold">Topic {topic}</text>')
        ly += 12
        for s in members:
            lines.append(f'<g class="legend-entry"><rect x="{_f(lx)}" y="{_f(ly)}" width="9" '
                         f'height="9" fill="{colors[(s.topic, s.keyword)]}"/>'
                         f'<text x="{_f(lx + 13)}" y="{_f(ly + 8)}">{escape(s.keyword)}</text></g>')
            ly += 11
        ly += 3
    lines.append("</g>")
    lines.append("</svg>")
    svg = _write(out_path, lines)
    fmt = (lambda v: str(int(v))) if series and series[0].kind == "count" else (lambda v: f"{v:.8f}")
    _write_csv(Path(out_path).with_suffix(".csv"), ("topic", "rank", "keyword", "month", "value"),
               [(s.topic, s.rank, s.keyword, month_label(m), fmt(v)) for s in series for m, v in s.points])
    return svg
