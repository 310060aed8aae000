import datetime as dt
from types import SimpleNamespace

import pytest
from hypothesis import given, settings, strategies as st

from adwatch.geoparse import (
    Candidate, Gazetteer, GazetteerEntry, MalformedGazetteer, PlaceMention, Unresolvable, best_entry,
    bundled_gazetteer, geoparse_article, geoparse_corpus, load_gazetteer, load_stoplist, read_mentions,
    recognize_toponyms, resolve_toponym, write_mentions,
)
from adwatch.ingest import ArticleStore, FixtureTransport, NewsSource, fetch_and_store

HEADER = "name\talternates\tlat\tlon\tpopulation\tcountry\n"


def write_tsv(tmp_path, rows):
    p = tmp_path / "g.tsv"
    p.write_text(HEADER + "".join("\t".join(map(str, r)) + "\n" for r in rows), "utf-8")
    return p


def entry(name, pop, cc, lat=0.0, lon=0.0, alts=()):
    return GazetteerEntry(name, tuple(alts), lat, lon, pop, cc)


@pytest.fixture
def small(tmp_path):
    return load_gazetteer(write_tsv(tmp_path, [
        ("New York City", "New York,NYC", 40.71427, -74.00597, 8804190, "US"),
        ("London", "", 51.50853, -0.12574, 8961989, "GB"),
        ("Paris", "", 48.85341, 2.3488, 2138551, "FR"),
    ]))


# -- loading ---------------------------------------------------------------------

def test_three_rows_and_alternate_lookup(small):
    assert len(small) == 3
    assert small.lookup("NYC")[0].name == "New York City"
    assert small.lookup("new york")[0].name == "New York City"


def test_header_only(tmp_path):
    g = load_gazetteer(write_tsv(tmp_path, []))
    assert len(g) == 0
    assert recognize_toponyms("London calling from Paris.", g, frozenset()) == []


@pytest.mark.parametrize("row,line", [
    (("Nowhere", "", 123, 0, 1, "XX"), 3),
    (("Nowhere", "", 0, 181, 1, "XX"), 3),
    (("Nowhere", "", 0, 0, -5, "XX"), 3),
    (("Nowhere", "", "north", 0, 1, "XX"), 3),
])
def test_malformed_rows_report_line(tmp_path, row, line):
    p = write_tsv(tmp_path, [("Ok", "", 1, 1, 1, "GB"), row])
    with pytest.raises(MalformedGazetteer) as err:
        load_gazetteer(p)
    assert err.value.line == line


def test_bundled_gazetteer_shape():
    g = bundled_gazetteer()
    assert 400 <= len(g) <= 1000
    for name in ("London", "Paris", "New York", "Texas", "Scotland", "Tokyo"):
        assert name in g


def test_stoplist_shipped():
    stop = load_stoplist()
    assert {"may", "march", "of"} <= stop


# -- recognition -----------------------------------------------------------------

def test_new_york_offset(small):
    text = "The trial ran in New York last fall."
    got = recognize_toponyms(text, small)
    assert [(c.surface, c.start) for c in got] == [("New York", 17)]


def test_no_places(small):
    assert recognize_toponyms("No places here.", small) == []


def test_two_in_order(small):
    got = recognize_toponyms("London and Paris announced new funding.", small)
    assert [(c.surface, c.start) for c in got] == [("London", 0), ("Paris", 11)]


def test_longest_match_wins():
    g = Gazetteer([entry("York", 200_000, "GB"), entry("New York", 8_000_000, "US")])
    assert [c.surface for c in recognize_toponyms("Visitors to New York were counted.", g, frozenset())] == ["New York"]


def test_internal_of_the():
    g = Gazetteer([entry("Isle of Man", 85_000, "IM"), entry("Man", 1, "XX")])
    got = recognize_toponyms("He moved to the Isle of Man in 2020.", g, frozenset())
    assert [c.surface for c in got] == ["Isle of Man"]


def test_sentence_initial_stopword_excluded():
    g = Gazetteer([entry("Reading", 318_000, "GB")])
    stop = frozenset({"reading"})
    assert recognize_toponyms("Reading aloud helps memory.", g, stop) == []
    got = recognize_toponyms("A clinic in Reading opened.", g, stop)
    assert [c.surface for c in got] == ["Reading"]


def test_honorific_is_not_a_sentence_end():
    g = Gazetteer([entry("Victoria", 92_000, "CA")])
    got = recognize_toponyms("said dietitian Dr. Victoria Alvarez.", g, frozenset({"victoria"}))
    assert [c.surface for c in got] == ["Victoria"]


def test_lowercase_is_ignored(small):
    assert recognize_toponyms("a london fog", small) == []


caps = st.sampled_from(["London", "Paris", "New", "York", "The", "Of", "Big", "Apple", "NYC"])
small_words = st.sampled_from(["of", "the", "and", "in", "x", ".", ",", "\n"])


@settings(max_examples=200)
@given(st.lists(st.one_of(caps, small_words), max_size=30))
def test_offsets_are_sound(words):
    g = Gazetteer([entry("London", 1, "GB"), entry("Paris", 2, "FR"),
                   entry("New York City", 3, "US", alts=("New York", "NYC"))])
    text = " ".join(words)
    for c in recognize_toponyms(text, g, load_stoplist()):
        assert text[c.start:c.start + len(c.surface)] == c.surface
        assert c.entries


# -- resolution ------------------------------------------------------------------

def test_paris_highest_population():
    fr, us = entry("Paris", 2_100_000, "FR", 48.85, 2.35), entry("Paris", 25_000, "US", 33.66, -95.56)
    g = Gazetteer([us, fr])
    m = resolve_toponym(Candidate("Paris", 0, g.lookup("Paris")), g)
    assert (m.resolved_name, m.latitude, m.longitude) == ("Paris", 48.85, 2.35)


def test_singleton():
    e = entry("Oslo", 700_000, "NO", 59.9, 10.7)
    g = Gazetteer([e])
    assert resolve_toponym(Candidate("Oslo", 3, (e,)), g, "u").latitude == 59.9


def test_tie_break_country_code():
    gb, us = entry("Springfield", 100, "GB", 1, 1), entry("Springfield", 100, "US", 2, 2)
    assert best_entry([us, gb]) is gb


def test_unresolvable():
    with pytest.raises(Unresolvable):
        resolve_toponym(Candidate("Atlantis", 0, ()), Gazetteer([]))


@given(st.lists(st.tuples(st.integers(0, 5), st.sampled_from(["GB", "US", "FR"]),
                          st.sampled_from(["A", "B"])), min_size=1, max_size=6))
def test_resolution_pure_and_order_free(specs):
    entries = [entry(n, p, cc, lat=i % 90, lon=i % 180) for i, (p, cc, n) in enumerate(specs)]
    a, b = best_entry(entries), best_entry(list(reversed(entries)))
    assert (a.population, a.country_code, a.name) == (b.population, b.country_code, b.name)
    assert a.population == max(e.population for e in entries)


# -- corpus ----------------------------------------------------------------------

def art(text, url="https://n.test/a", title=""):
    return SimpleNamespace(text=text, url=url, title=title)


def test_empty_corpus(small):
    assert geoparse_corpus([], small) == []


def test_dedup_within_article(small):
    got = geoparse_article(art("London is big. London is old. We love London."), small)
    assert len(got) == 1 and got[0].char_offset == 0


def test_title_is_searched(small):
    got = geoparse_article(art("No place names in the body.", title="Report from Paris"), small)
    assert [(m.resolved_name, m.field) for m in got] == [("Paris", "title")]


FIVE_ARTICLES = ["alz-facts-2022", "bbc-lecanemab-trial", "nia-sleep", "nia-funding", "nia-caregiver-tips"]


def test_five_fixture_articles_seven_pairs(tmp_path, fixture_dir, manifest):
    by_id = {a["id"]: a for a in manifest["articles"]}
    store = ArticleStore(tmp_path)
    for aid in FIVE_ARTICLES:
        a = by_id[aid]
        src = NewsSource(a["source"], a["source"], [], [a["url"].split("/")[2]], rate_limit=0)
        fetch_and_store(src, [a["url"]], store, FixtureTransport(fixture_dir),
                        now=lambda: dt.datetime(2024, 1, 1))
    g = load_gazetteer(fixture_dir / "mini_gazetteer.tsv")
    got = {(m.article_url, m.surface) for m in geoparse_corpus(store.articles(), g)}
    expected = {(by_id[i]["url"], p["surface"]) for i in FIVE_ARTICLES for p in by_id[i]["places"]}
    assert len(expected) == 7
    assert got == expected


def test_mentions_csv_round_trip(tmp_path, small):
    mentions = geoparse_article(art("From London to New York."), small)
    p = tmp_path / "m.csv"
    write_mentions(mentions, p)
    assert p.read_text().splitlines()[0] == "url,surface,resolved_name,latitude,longitude,char_offset,field"
    assert read_mentions(p) == mentions
    coords = small.coordinates()
    assert all((m.latitude, m.longitude) in coords for m in read_mentions(p))
    assert isinstance(mentions[0], PlaceMention)
