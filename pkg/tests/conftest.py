from __future__ import annotations

import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from medialens import fixtures
from medialens.annotate import Gazetteer, Lexicon, annotate_corpus
from medialens.corpus import ingest


# A prescribed 20-candidate belief hive for the scenario corpus. It differs
# from the data hive on Coronavirus, United_States, Economy and the center:
# exactly four conflicts.
SCENARIO_BELIEFS = {
    "Coronavirus": "negative",
    "United_States": "negative",
    "China": "negative",
    "Donald_Trump": "positive",
    "Economy": "neutral",
    "Russia": "negative",
    "Congress": "neutral",
    "Senate": "neutral",
    "Brazil": "neutral",
    "California": "neutral",
    "Europe": "neutral",
    "Florida": "neutral",
    "India": "neutral",
    "Japan": "neutral",
    "Mexico": "neutral",
    "Pentagon": "neutral",
    "Silicon_Valley": "neutral",
    "Supreme_Court": "neutral",
    "Texas": "neutral",
    "Wall_Street": "neutral",
}
SCENARIO_CENTER_BELIEF = "negative"


@pytest.fixture(scope="session")
def scenario_dir(tmp_path_factory):
    out = tmp_path_factory.mktemp("scenario")
    fixtures.generate_fixture(fixtures.scenario_spec(), out)
    return out


@pytest.fixture(scope="session")
def scenario_ann(scenario_dir):
    result = ingest(scenario_dir / "corpus.jsonl", fixtures.SCENARIO_OUTLETS)
    assert not result.rejected
    return annotate_corpus(
        result.snapshot,
        Gazetteer.from_file(scenario_dir / "gazetteer.json"),
        Lexicon.from_file(scenario_dir / "lexicon.json"),
    )
