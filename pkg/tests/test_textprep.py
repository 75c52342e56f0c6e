from __future__ import annotations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from topicminer.textprep import (
    DELIMITERS,
    PreparedText,
    StopList,
    StopListError,
    is_stopword,
    preprocess,
    tokenize,
)


def test_tokenize_splits_segments_at_punctuation():
    assert tokenize("Deep learning, deep networks.") == [
        ["deep", "learning"],
        ["deep", "networks"],
    ]


def test_tokenize_empty():
    assert tokenize("") == []


def test_tokenize_keeps_internal_hyphens():
    assert tokenize("state-of-the-art") == [["state-of-the-art"]]


def test_tokenize_trims_stray_hyphens():
    assert tokenize("pre- and post-processing - done") == [
        ["pre", "and", "post-processing", "done"]
    ]


def test_tokenize_all_delimiters_break_segments():
    for ch in sorted(DELIMITERS):
        assert tokenize(f"alpha{ch}beta") == [["alpha"], ["beta"]], repr(ch)


def test_tokenize_non_delimiters_split_tokens_only():
    # apostrophes and slashes separate tokens without ending the segment
    assert tokenize("don't stop/go") == [["don", "t", "stop", "go"]]


def test_tokenize_drops_pure_numbers_keeps_mixed():
    assert tokenize("the c4 model beats 42 baselines") == [
        ["the", "c4", "model", "beats", "baselines"]
    ]


def test_tokenize_folds_accents():
    assert tokenize("naïve Bayes by Sánchez") == [["naive", "bayes", "by", "sanchez"]]


def test_stoplist_from_file(tmp_path):
    path = tmp_path / "stops.txt"
    path.write_text("# comment\nand\nOF\n\nthe  # trailing\n")
    stops = StopList.from_file(path)
    assert stops.words == frozenset({"and", "of", "the"})


def test_stoplist_rejects_empty(tmp_path):
    path = tmp_path / "empty.txt"
    path.write_text("# nothing here\n")
    with pytest.raises(StopListError):
        StopList.from_file(path)


def test_default_stoplist_membership():
    stops = StopList.default()
    assert is_stopword("and", stops)
    assert is_stopword("of", stops)
    assert not is_stopword("markov", stops)


def test_preprocess_flags_on_unstemmed_form(small_stops):
    # "was" stems to "wa"; the flag must be computed before stemming
    stops = StopList(frozenset({"was"}))
    prepared = preprocess("Was trained.", stops)
    (seg,) = prepared.segments
    assert [(t.stem, t.stop) for t in seg] == [("wa", True), ("train", False)]


def test_preprocess_example(small_stops):
    prepared = preprocess("We propose a method.", small_stops)
    (seg,) = prepared.segments
    assert [(t.stem, t.stop) for t in seg] == [
        ("we", True),
        ("propos", False),
        ("a", True),
        ("method", False),
    ]


def test_preprocess_blocklist_phrase(small_stops):
    prepared = preprocess("Experimental results show", small_stops)
    (seg,) = prepared.segments
    assert [t.stem for t in seg] == ["experiment", "result", "show"]
    assert not any(t.stop for t in seg)


def test_preprocess_empty(small_stops):
    assert preprocess("", small_stops) == PreparedText(segments=())


def test_preprocess_keeps_surfaces(small_stops):
    prepared = preprocess("Training networks.", small_stops)
    (seg,) = prepared.segments
    assert [(t.surface, t.stem) for t in seg] == [
        ("training", "train"),
        ("networks", "network"),
    ]


_text = st.text(
    alphabet=st.sampled_from(list("abcdef .,;:!?()[]\"\n-'0123456789")), max_size=80
)


@given(_text)
def test_preprocess_deterministic(text):
    stops = StopList(frozenset({"a", "of"}))
    assert preprocess(text, stops) == preprocess(text, stops)


@given(_text)
def test_token_invariants(text):
    for seg in tokenize(text):
        assert seg  # empty segments vanish
        for tok in seg:
            assert tok == tok.lower()
            assert tok.strip("-") == tok
            assert any(ch.isalpha() for ch in tok)
            assert all(ch.isalnum() or ch == "-" for ch in tok)
