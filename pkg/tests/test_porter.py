from __future__ import annotations

from pathlib import Path

import pytest
from hypothesis import given
from hypothesis import strategies as st

from topicminer.porter import stem

DATA = Path(__file__).parent / "data"


def test_plural_collapses():
    assert stem("papers") == "paper"
    assert stem("paper") == "paper"


def test_short_words_unchanged():
    assert stem("a") == "a"
    assert stem("is") == "is"
    assert stem("ml") == "ml"


@pytest.mark.parametrize(
    "word,expected",
    [
        ("caresses", "caress"),
        ("ponies", "poni"),
        ("ties", "ti"),
        ("cats", "cat"),
        ("relational", "relat"),
        ("agreed", "agre"),
        ("feed", "feed"),
        ("plastered", "plaster"),
        ("motoring", "motor"),
        ("sing", "sing"),
        ("conflated", "conflat"),
        ("hopping", "hop"),
        ("falling", "fall"),
        ("hissing", "hiss"),
        ("filing", "file"),
        ("happy", "happi"),
        ("sky", "sky"),
        ("generalizations", "gener"),
        ("oscillators", "oscil"),
        ("machine", "machin"),
        ("objective", "object"),
        ("analysis", "analysi"),
    ],
)
def test_known_stems(word, expected):
    assert stem(word) == expected


def test_reference_vocabulary_zero_diffs():
    """Full agreement with the frozen reference vocabulary/output pair."""
    words = (DATA / "porter_vocabulary.txt").read_text().split()
    expected = (DATA / "porter_expected.txt").read_text().split()
    assert len(words) == len(expected)
    mismatches = [
        (w, e, stem(w)) for w, e in zip(words, expected) if stem(w) != e
    ]
    assert mismatches == []


@given(st.text(alphabet="abcdefghijklmnopqrstuvwxyz", min_size=1, max_size=30))
def test_never_lengthens(word):
    assert len(stem(word)) <= len(word)


@given(st.text(alphabet="abcdefghijklmnopqrstuvwxyz", min_size=1, max_size=30))
def test_deterministic(word):
    assert stem(word) == stem(word)
