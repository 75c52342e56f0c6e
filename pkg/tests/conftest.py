from __future__ import annotations

import json
from importlib import resources
from pathlib import Path

import pytest

from topicminer.curate import CurationSession
from topicminer.rank import RankedList, read_ranked_report
from topicminer.textprep import StopList

DATA = Path(__file__).parent / "data"

# The documented demo curation: three junk phrases blocked, two
# near-duplicates merged into "data set", ten topics accepted in order.
TOP10_STEMS = [
    "support vector machin",
    "neural network",
    "data set",
    "object function",
    "markov random field",
    "featur space",
    "gener model",
    "linear matrix inequ",
    "gaussian mixtur model",
    "princip compon analysi",
]
TOP10_DISPLAY = [
    "support vector machine",
    "neural network",
    "data set",
    "objective function",
    "Markov random field",
    "feature space",
    "generative model",
    "linear matrix inequality",
    "Gaussian mixture model",
    "principal component analysis",
]
DEMO_BLOCKS = {"propos method", "experiment result show", "comput vision"}
DEMO_MERGES = {"train data": "data set", "real data": "data set"}


def load_demo_fixture() -> RankedList:
    ref = resources.files("topicminer.data").joinpath("fixture_topics.json")
    with resources.as_file(ref) as path:
        _, rows = read_ranked_report(path)
    return rows


def run_demo_session(session: CurationSession) -> CurationSession:
    """Drive the scripted demo decisions through the candidate queue."""
    while True:
        phrase = session.next_candidate()
        if phrase is None:
            break
        if phrase in DEMO_BLOCKS:
            session.decide(phrase, "block")
        elif phrase in DEMO_MERGES:
            session.decide(phrase, "merge", target=DEMO_MERGES[phrase])
        else:
            session.decide(phrase, "accept")
    return session


@pytest.fixture
def small_stops() -> StopList:
    return StopList(frozenset("a an and of the we for from in is to this with by on".split()))


@pytest.fixture
def demo_window() -> RankedList:
    return load_demo_fixture()


@pytest.fixture
def abstracts_file(tmp_path: Path):
    """Write abstracts to a JSONL file and return its path."""

    def _write(rows: list[dict], name: str = "abstracts.jsonl") -> Path:
        path = tmp_path / name
        path.write_text("\n".join(json.dumps(r) for r in rows) + "\n", encoding="utf-8")
        return path

    return _write
