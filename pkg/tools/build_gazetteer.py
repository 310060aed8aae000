"""Regenerate src/adwatch/data/gazetteer.tsv from GeoNames data.

Usage: python tools/build_gazetteer.py /path/to/geonamescache/data

The data directory comes from the ``geonamescache`` wheel (cities15000.json,
countries.json). US states and UK nations carry approximate centroids.
"""

import json
import re
import sys
from pathlib import Path

OUT = Path(__file__).resolve().parents[1] / "src/adwatch/data/gazetteer.tsv"
N_LARGEST = 120
ALT_RE = re.compile(r"^[A-Z][a-z]+(?:[ -][A-Z][a-z]+){0,3}$")
MAX_ALTS = 6

US_STATES = """Alabama 32.8 -86.8 5024279|Alaska 64.0 -152.0 733391|Arizona 34.3 -111.7 7151502
Arkansas 34.9 -92.4 3011524|California 37.2 -119.4 39538223|Colorado 39.0 -105.5 5773714
Connecticut 41.6 -72.7 3605944|Delaware 39.0 -75.5 989948|Florida 28.6 -82.4 21538187
Georgia 32.7 -83.4 10711908|Hawaii 20.8 -156.3 1455271|Idaho 44.4 -114.6 1839106
Illinois 40.0 -89.2 12812508|Indiana 39.9 -86.3 6785528|Iowa 42.1 -93.5 3190369
Kansas 38.5 -98.4 2937880|Kentucky 37.5 -85.3 4505836|Louisiana 31.1 -92.0 4657757
Maine 45.4 -69.2 1362359|Maryland 39.0 -76.8 6177224|Massachusetts 42.3 -71.8 7029917
Michigan 44.3 -85.4 10077331|Minnesota 46.3 -94.3 5706494|Mississippi 32.7 -89.7 2961279
Missouri 38.4 -92.5 6154913|Montana 47.0 -109.6 1084225|Nebraska 41.5 -99.8 1961504
Nevada 39.3 -116.6 3104614|New Hampshire 43.7 -71.6 1377529|New Jersey 40.2 -74.7 9288994
New Mexico 34.4 -106.1 2117522|New York State 42.9 -75.5 20201249|North Carolina 35.6 -79.4 10439388
North Dakota 47.5 -100.5 779094|Ohio 40.3 -82.8 11799448|Oklahoma 35.6 -97.5 3959353
Oregon 43.9 -120.6 4237256|Pennsylvania 40.9 -77.8 13002700|Rhode Island 41.7 -71.5 1097379
South Carolina 33.9 -80.9 5118425|South Dakota 44.4 -100.2 886667|Tennessee 35.9 -86.4 6910840
Texas 31.5 -99.3 29145505|Utah 39.3 -111.7 3271616|Vermont 44.1 -72.7 643077
Virginia 37.5 -78.9 8631393|Washington State 47.4 -120.5 7705281|West Virginia 38.6 -80.6 1793716
Wisconsin 44.6 -89.9 5893718|Wyoming 43.0 -107.6 576851"""

UK_NATIONS = [
    ("England", "", 52.36, -1.17, 56536000),
    ("Scotland", "", 56.49, -4.20, 5463300),
    ("Wales", "", 52.13, -3.78, 3107500),
    ("Northern Ireland", "", 54.79, -6.49, 1903100),
]

COUNTRY_ALTS = {
    "US": "United States of America,USA,US,America",
    "GB": "UK,Britain,Great Britain",
    "KR": "South Korea",
    "KP": "North Korea",
    "RU": "Russia",
    "CZ": "Czech Republic",
    "NL": "Holland",
}


def main(data_dir):
    data_dir = Path(data_dir)
    cities = json.loads((data_dir / "cities15000.json").read_text())
    countries = json.loads((data_dir / "countries.json").read_text())
    by_name = {}
    for c in cities.values():
        by_name.setdefault((c["name"], c["countrycode"]), []).append(c)

    chosen = {}
    for c in sorted(cities.values(), key=lambda c: -c["population"])[:N_LARGEST]:
        chosen[c["geonameid"]] = c
    for c in cities.values():
        if (c["countrycode"] == "GB" and c["population"] >= 150000) or (
            c["countrycode"] == "US" and c["population"] >= 400000
        ):
            chosen[c["geonameid"]] = c
    capitals = {}
    for iso, ct in countries.items():
        hits = by_name.get((ct["capital"], iso))
        if hits:
            cap = max(hits, key=lambda c: c["population"])
            chosen[cap["geonameid"]] = cap
            capitals[iso] = cap

    rows = []
    for c in sorted(chosen.values(), key=lambda c: (c["countrycode"], c["name"])):
        alts = sorted({a for a in c.get("alternatenames", []) if ALT_RE.match(a) and a != c["name"]},
                      key=lambda a: (len(a), a))[:MAX_ALTS]
        rows.append((c["name"], ",".join(alts), c["latitude"], c["longitude"], c["population"],
                     c["countrycode"]))
    for iso, ct in sorted(countries.items()):
        cap = capitals.get(iso)
        if cap is None or not ct["population"]:
            continue
        rows.append((ct["name"], COUNTRY_ALTS.get(iso, ""), cap["latitude"], cap["longitude"],
                     ct["population"], iso))
    for item in US_STATES.replace("\n", "|").split("|"):
        *name, lat, lon, pop = item.split()
        name = " ".join(name)
        alt = "State of " + name.replace(" State", "") if name.endswith("State") else ""
        rows.append((name, alt, float(lat), float(lon), int(pop), "US"))
    for name, alt, lat, lon, pop in UK_NATIONS:
        rows.append((name, alt, lat, lon, pop, "GB"))

    with open(OUT, "w", encoding="utf-8") as fh:
        fh.write("name\talternates\tlat\tlon\tpopulation\tcountry\n")
        for r in rows:
            fh.write("\t".join(str(x) for x in r) + "\n")
    print(f"wrote {len(rows)} entries to {OUT}")


if __name__ == "__main__":
    main(sys.argv[1])
