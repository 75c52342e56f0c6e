"""Corpus analytics: weighted key-phrase extraction and curation.

Pipeline: ingest publication abstracts with per-source weights, extract
key phrases (stop-word n-grams or RAKE), aggregate weighted counts
across sources into a ranked list, then curate the top window into a
distinct top-K topic list.
"""

from .corpus import (
    AbstractRecord,
    Corpus,
    CorpusStats,
    Registry,
    SourceRecord,
    corpus_stats,
    default_registry,
    ingest_abstracts,
    load_registry,
)
from .curate import CurationSession, RuleSet, apply_rules, load_rules
from .extract import (
    WordStats,
    build_cooccurrence,
    extract_abstract,
    extract_ngrams_method1,
    extract_rake,
    generate_subngrams,
    split_candidates,
)
from .porter import stem
from .rank import WeightedCountTable, accumulate, export_plot_data
from .textprep import PreparedText, StopList, is_stopword, preprocess, tokenize

__version__ = "0.1.0"

__all__ = [
    "AbstractRecord",
    "Corpus",
    "CorpusStats",
    "CurationSession",
    "PreparedText",
    "Registry",
    "RuleSet",
    "SourceRecord",
    "StopList",
    "WeightedCountTable",
    "WordStats",
    "accumulate",
    "apply_rules",
    "build_cooccurrence",
    "corpus_stats",
    "default_registry",
    "export_plot_data",
    "extract_abstract",
    "extract_ngrams_method1",
    "extract_rake",
    "generate_subngrams",
    "ingest_abstracts",
    "is_stopword",
    "load_registry",
    "load_rules",
    "preprocess",
    "split_candidates",
    "stem",
    "tokenize",
]
