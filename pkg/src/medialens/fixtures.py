"""Synthetic corpus generation.

A fixture spec declares article groups: each group expands into ``count``
articles in one outlet, every article carrying one engineered sentence per
(entity, label) pair. Sentences are built so the deterministic annotator
reproduces the declared label exactly, which makes every downstream
aggregate count plain arithmetic over the group declarations.

The built-in ``scenario`` spec produces a corpus whose headline quantities
are fixed: "White House" aggregates to 89 positive / 146 negative articles
overall, "United States" under Breitbart to 114 positive / 158 negative,
and the Breitbart hive around "White House" has twenty candidates with a
known category for every cell.
"""

from __future__ import annotations

import json
import random
from datetime import datetime, timedelta, timezone
from pathlib import Path

from .errors import InputError

SCENARIO_OUTLETS = [
    "ABC News",
    "Breitbart",
    "CNN",
    "Fox News",
    "New York Times",
    "Washington Post",
]

_TEMPLATES = {
    "positive": "{alias} delivered a superb result.",
    "negative": "{alias} faced a dire crisis.",
    "neutral": "{alias} met with officials on Tuesday.",
}
_FILLER = "Reporters filed the story after the briefing."

_SCENARIO_ENTITIES = [
    ("White_House", "White House", ["White House"]),
    ("United_States", "United States", ["United States"]),
    ("Coronavirus", "Coronavirus", ["Coronavirus"]),
    ("China", "China", ["China"]),
    ("Donald_Trump", "Donald Trump", ["Donald Trump", "Trump"]),
    ("Economy", "Economy", ["Economy"]),
    ("Russia", "Russia", ["Russia"]),
    ("Congress", "Congress", ["Congress"]),
    ("Senate", "Senate", ["Senate"]),
    ("Brazil", "Brazil", ["Brazil"]),
    ("California", "California", ["California"]),
    ("Europe", "Europe", ["Europe"]),
    ("Florida", "Florida", ["Florida"]),
    ("India", "India", ["India"]),
    ("Japan", "Japan", ["Japan"]),
    ("Mexico", "Mexico", ["Mexico"]),
    ("Pentagon", "Pentagon", ["Pentagon"]),
    ("Silicon_Valley", "Silicon Valley", ["Silicon Valley"]),
    ("Supreme_Court", "Supreme Court", ["Supreme Court"]),
    ("Texas", "Texas", ["Texas"]),
    ("Wall_Street", "Wall Street", ["Wall Street"]),
    ("Canada", "Canada", ["Canada"]),
    ("Germany", "Germany", ["Germany"]),
    ("Hollywood", "Hollywood", ["Hollywood"]),
    ("NASA", "NASA", ["NASA"]),
]

# Twelve low-coverage hive candidates: one positive and one negative joint
# article each keeps their hive-local scores below any midpoint threshold,
# so they classify neutral and pad the candidate list out to twenty.
_MINOR_CANDIDATES = [
    "Brazil",
    "California",
    "Europe",
    "Florida",
    "India",
    "Japan",
    "Mexico",
    "Pentagon",
    "Silicon_Valley",
    "Supreme_Court",
    "Texas",
    "Wall_Street",
]

# Breitbart articles mentioning both the hive center and one candidate.
# (candidate, label toward candidate, article count); every one of these
# articles is labeled negative toward White_House.
_JOINT = [
    ("Coronavirus", "positive", 7),
    ("Coronavirus", "negative", 6),
    ("United_States", "positive", 6),
    ("United_States", "negative", 5),
    ("United_States", "neutral", 1),
    ("China", "positive", 1),
    ("China", "negative", 8),
    ("Donald_Trump", "positive", 7),
    ("Donald_Trump", "negative", 1),
    ("Economy", "positive", 6),
    ("Economy", "negative", 1),
    ("Russia", "negative", 7),
    ("Congress", "positive", 1),
    ("Congress", "negative", 1),
    ("Congress", "neutral", 1),
    ("Senate", "positive", 1),
    ("Senate", "neutral", 1),
] + [
    (candidate, label, 1)
    for candidate in _MINOR_CANDIDATES
    for label in ("positive", "negative")
]


def scenario_spec() -> dict:
    """The count-matching fixture spec."""
    groups = [
        {
            "outlet": "Breitbart",
            "count": count,
            "mentions": [["White_House", "negative"], [candidate, label]],
        }
        for candidate, label, count in _JOINT
    ]
    # remaining United States coverage, Breitbart only
    groups.append({"outlet": "Breitbart", "count": 108, "mentions": [["United_States", "positive"]]})
    groups.append({"outlet": "Breitbart", "count": 153, "mentions": [["United_States", "negative"]]})
    # remaining White House coverage across the outlet set
    groups.append({"outlet": "Breitbart", "count": 29, "mentions": [["White_House", "positive"]]})
    groups.append({"outlet": "Breitbart", "count": 1, "mentions": [["White_House", "negative"]]})
    for outlet in SCENARIO_OUTLETS:
        if outlet == "Breitbart":
            continue
        groups.append({"outlet": outlet, "count": 12, "mentions": [["White_House", "positive"]]})
        groups.append({"outlet": outlet, "count": 12, "mentions": [["White_House", "negative"]]})
    # low-count background topics so the scatter has a neutral cluster
    groups.append({"outlet": "CNN", "count": 3, "mentions": [["Canada", "neutral"]]})
    groups.append({"outlet": "ABC News", "count": 2, "mentions": [["Germany", "neutral"]]})
    groups.append({"outlet": "Washington Post", "count": 2, "mentions": [["Hollywood", "positive"]]})
    groups.append({"outlet": "Washington Post", "count": 2, "mentions": [["Hollywood", "negative"]]})
    groups.append({"outlet": "Fox News", "count": 1, "mentions": [["NASA", "positive"]]})
    groups.append({"outlet": "Fox News", "count": 1, "mentions": [["NASA", "negative"]]})
    groups.append({"outlet": "Fox News", "count": 1, "mentions": [["NASA", "neutral"]]})
    return {
        "seed": 20,
        "outlets": list(SCENARIO_OUTLETS),
        "entities": [
            {"id": eid, "name": name, "aliases": list(aliases)}
            for eid, name, aliases in _SCENARIO_ENTITIES
        ],
        "lexicon": {"superb": 2, "dire": -2},
        "groups": groups,
    }


def load_fixture_spec(spec: str | Path) -> dict:
    """``scenario`` selects the built-in spec; anything else is a JSON file."""
    if str(spec) == "scenario":
        return scenario_spec()
    return json.loads(Path(spec).read_text(encoding="utf-8"))


def _validate_spec(spec: dict) -> None:
    for key in ("outlets", "entities", "lexicon", "groups"):
        if key not in spec:
            raise InputError(f"fixture spec missing {key!r}")
    entity_ids = {e["id"] for e in spec["entities"]}
    outlets = set(spec["outlets"])
    for group in spec["groups"]:
        if group["outlet"] not in outlets:
            raise InputError(f"group outlet not configured: {group['outlet']!r}")
        for entity, label in group["mentions"]:
            if entity not in entity_ids:
                raise InputError(f"group references unknown entity: {entity!r}")
            if label not in _TEMPLATES:
                raise InputError(f"unknown label in group: {label!r}")


def generate_fixture(spec: dict, out_dir: str | Path) -> dict:
    """Expand a fixture spec into corpus + config files under ``out_dir``.

    Writes corpus.jsonl, gazetteer.json, lexicon.json, outlets.json and a
    manifest.json echoing the fixture declaration. Article order is
    shuffled (seeded) so nothing downstream can rely on generation order.
    """
    _validate_spec(spec)
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    rng = random.Random(spec.get("seed", 0))
    names = {e["id"]: e["name"] for e in spec["entities"]}
    aliases = {e["id"]: e["aliases"] for e in spec["entities"]}

    articles = []
    seq = 0
    base = datetime(2020, 2, 1, tzinfo=timezone.utc)
    for group in spec["groups"]:
        for _ in range(group["count"]):
            sentences = [
                _TEMPLATES[label].format(alias=aliases[entity][0])
                for entity, label in group["mentions"]
            ]
            lead = names[group["mentions"][0][0]]
            articles.append(
                {
                    "id": f"a{seq:05d}",
                    "outlet": group["outlet"],
                    "title": f"{lead} update {seq}",
                    "paragraphs": [" ".join(sentences), _FILLER],
                    "published_at": (base + timedelta(hours=seq)).strftime(
                        "%Y-%m-%dT%H:%M:%SZ"
                    ),
                    "url": f"https://news.example/{seq}",
                }
            )
            seq += 1

    rng.shuffle(articles)
    with (out / "corpus.jsonl").open("w", encoding="utf-8") as fh:
        for art in articles:
            fh.write(json.dumps(art, sort_keys=True, ensure_ascii=False) + "\n")

    gazetteer = {
        e["id"]: {"name": e["name"], "aliases": e["aliases"]} for e in spec["entities"]
    }
    (out / "gazetteer.json").write_text(
        json.dumps(gazetteer, indent=2, sort_keys=True, ensure_ascii=False) + "\n",
        encoding="utf-8",
    )
    (out / "lexicon.json").write_text(
        json.dumps(spec["lexicon"], indent=2, sort_keys=True) + "\n", encoding="utf-8"
    )
    (out / "outlets.json").write_text(
        json.dumps(spec["outlets"], indent=2, ensure_ascii=False) + "\n", encoding="utf-8"
    )
    (out / "manifest.json").write_text(
        json.dumps(spec, indent=2, sort_keys=True, ensure_ascii=False) + "\n",
        encoding="utf-8",
    )
    return {"articles": len(articles), "out": str(out)}
