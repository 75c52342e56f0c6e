"""Key-phrase extraction from prepared abstracts.

Two methods are implemented:

1. stop-word n-grams: drop stop words inside each punctuation-bounded
   segment, close the gaps, and emit every bigram and trigram of what
   remains.  N-grams may span removed stop words but never punctuation.
2. RAKE: segments are further split at stop words into candidate parts;
   parts yield all 1..max_n-grams; a word co-occurrence table scores
   each word by degree/frequency, and a phrase scores the sum of its
   word scores.

The co-occurrence units are configurable: ``paper_literal`` builds the
table from the generated n-grams themselves, ``classic`` from the whole
candidate parts as in the original RAKE formulation.  The two give
different scores, so the mode is stamped into every output file.
"""

from __future__ import annotations

import json
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import partial
from pathlib import Path
from typing import Iterable, Iterator, Sequence

from .corpus import AbstractRecord
from .errors import DataError
from .textprep import PreparedText, StopList, preprocess

MODES = ("paper_literal", "classic")
METHODS = ("ngram", "rake")


@dataclass(frozen=True)
class CandidatePart:
    """Maximal run of non-stop tokens between delimiters and stop words."""

    stems: tuple[str, ...]
    surfaces: tuple[str, ...]

    def __len__(self) -> int:
        return len(self.stems)


@dataclass(frozen=True)
class WordStats:
    """RAKE word statistics over the co-occurrence units."""

    word: str
    freq: int
    deg: int

    @property
    def score(self) -> float:
        return self.deg / self.freq


@dataclass(frozen=True)
class ScoredPhrase:
    phrase: str
    score: float


@dataclass
class PhraseHit:
    """Per-abstract occurrence data for one extracted phrase."""

    count: int = 0
    score: float | None = None
    surfaces: Counter = field(default_factory=Counter)


@dataclass
class AbstractExtraction:
    abstract_id: str
    source_id: str
    phrases: dict[str, PhraseHit]


def _gap_closed_segments(prepared: PreparedText) -> Iterator[list[tuple[str, str]]]:
    """Per segment: (stem, surface) pairs with stop words removed."""
    for seg in prepared.segments:
        yield [(tok.stem, tok.surface) for tok in seg if not tok.stop]


def extract_ngrams_method1(prepared: PreparedText) -> Counter:
    """Multiset of bigrams and trigrams after stop-word removal.

    Each stop-filtered segment of T tokens emits max(0, T-1) bigrams
    and max(0, T-2) trigrams.
    """
    phrases: Counter = Counter()
    for pairs in _gap_closed_segments(prepared):
        stems = [stem for stem, _ in pairs]
        for n in (2, 3):
            for i in range(len(stems) - n + 1):
                phrases[" ".join(stems[i : i + n])] += 1
    return phrases


def split_candidates(prepared: PreparedText) -> list[CandidatePart]:
    """RAKE candidate parts: non-stop runs within each segment."""
    parts: list[CandidatePart] = []
    for seg in prepared.segments:
        run: list = []
        for tok in seg:
            if tok.stop:
                if run:
                    parts.append(
                        CandidatePart(
                            stems=tuple(t.stem for t in run),
                            surfaces=tuple(t.surface for t in run),
                        )
                    )
                    run = []
            else:
                run.append(tok)
        if run:
            parts.append(
                CandidatePart(
                    stems=tuple(t.stem for t in run),
                    surfaces=tuple(t.surface for t in run),
                )
            )
    return parts


def generate_subngrams(tokens: Sequence[str], max_n: int = 4) -> list[tuple[str, ...]]:
    """All contiguous n-grams of a part for 1 <= n <= min(max_n, len)."""
    if max_n < 1:
        raise ValueError("max_n must be >= 1")
    length = len(tokens)
    grams = []
    for n in range(1, min(max_n, length) + 1):
        for i in range(length - n + 1):
            grams.append(tuple(tokens[i : i + n]))
    return grams


def build_cooccurrence(
    parts: Sequence[CandidatePart], mode: str = "paper_literal", max_n: int = 4
) -> dict[str, WordStats]:
    """Word frequency/degree over the co-occurrence units.

    paper_literal units are the generated n-grams (each generation
    counted once); classic units are the whole candidate parts.
    """
    if mode not in MODES:
        raise ValueError(f"unknown mode {mode!r}")
    if mode == "paper_literal":
        units: Iterable[Sequence[str]] = (
            gram for part in parts for gram in generate_subngrams(part.stems, max_n)
        )
    else:
        units = (part.stems for part in parts)

    freq: Counter = Counter()
    deg: Counter = Counter()
    for unit in units:
        size = len(unit)
        for word in unit:
            freq[word] += 1
            deg[word] += size
    return {w: WordStats(word=w, freq=freq[w], deg=deg[w]) for w in freq}


def extract_rake(
    prepared: PreparedText, max_n: int = 4, mode: str = "paper_literal"
) -> list[ScoredPhrase]:
    """Deduplicated candidate n-grams scored by summed word scores.

    Sorted by score descending, ties broken lexicographically.
    """
    parts = split_candidates(prepared)
    stats = build_cooccurrence(parts, mode=mode, max_n=max_n)
    seen: dict[str, float] = {}
    for part in parts:
        for gram in generate_subngrams(part.stems, max_n):
            phrase = " ".join(gram)
            if phrase not in seen:
                seen[phrase] = sum(stats[w].score for w in gram)
    return [
        ScoredPhrase(phrase=p, score=s)
        for p, s in sorted(seen.items(), key=lambda kv: (-kv[1], kv[0]))
    ]


def extract_abstract(
    record: AbstractRecord,
    stops: StopList,
    method: str = "rake",
    mode: str = "paper_literal",
    max_n: int = 4,
    top_t: int | None = None,
) -> AbstractExtraction:
    """Run one extraction method over a single abstract."""
    if method not in METHODS:
        raise ValueError(f"unknown method {method!r}")
    prepared = preprocess(record.text, stops)
    hits: dict[str, PhraseHit] = {}

    if method == "ngram":
        for pairs in _gap_closed_segments(prepared):
            for n in (2, 3):
                for i in range(len(pairs) - n + 1):
                    window = pairs[i : i + n]
                    phrase = " ".join(stem for stem, _ in window)
                    hit = hits.setdefault(phrase, PhraseHit())
                    hit.count += 1
                    hit.surfaces[" ".join(surface for _, surface in window)] += 1
    else:
        parts = split_candidates(prepared)
        stats = build_cooccurrence(parts, mode=mode, max_n=max_n)
        for part in parts:
            length = len(part)
            for n in range(1, min(max_n, length) + 1):
                for i in range(length - n + 1):
                    gram = part.stems[i : i + n]
                    phrase = " ".join(gram)
                    hit = hits.setdefault(phrase, PhraseHit())
                    if hit.count == 0:
                        hit.score = sum(stats[w].score for w in gram)
                    hit.count += 1
                    hit.surfaces[" ".join(part.surfaces[i : i + n])] += 1
        if top_t is not None and top_t >= 0 and len(hits) > top_t:
            keep = sorted(hits.items(), key=lambda kv: (-(kv[1].score or 0.0), kv[0]))[:top_t]
            hits = dict(keep)

    return AbstractExtraction(
        abstract_id=record.abstract_id, source_id=record.source_id, phrases=hits
    )


def extract_corpus(
    records: Sequence[AbstractRecord],
    stops: StopList,
    method: str = "rake",
    mode: str = "paper_literal",
    max_n: int = 4,
    top_t: int | None = None,
    jobs: int = 1,
) -> list[AbstractExtraction]:
    """Extract every abstract; results are independent of parallelism.

    Workers are pure per-abstract functions and results are collected in
    input order, so output is byte-identical for any jobs setting.
    """
    worker = partial(
        extract_abstract, stops=stops, method=method, mode=mode, max_n=max_n, top_t=top_t
    )
    if jobs <= 1 or len(records) < 2:
        return [worker(rec) for rec in records]
    chunk = max(1, len(records) // (jobs * 4))
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(worker, records, chunksize=chunk))


def write_extractions(
    path: str | Path, extractions: Iterable[AbstractExtraction], config: dict
) -> int:
    """Spool per-abstract results to a JSONL file; returns rows written.

    The first line is a config/provenance record so downstream steps can
    refuse mismatched inputs.
    """
    count = 0
    with Path(path).open("w", encoding="utf-8") as fh:
        fh.write(json.dumps({"_config": config}, sort_keys=True) + "\n")
        for ex in extractions:
            for phrase in sorted(ex.phrases):
                hit = ex.phrases[phrase]
                row = {
                    "abstract_id": ex.abstract_id,
                    "source_id": ex.source_id,
                    "phrase": phrase,
                    "count": hit.count,
                    "score": hit.score,
                    "surfaces": dict(sorted(hit.surfaces.items())),
                }
                fh.write(json.dumps(row, sort_keys=True) + "\n")
                count += 1
    return count


def read_extractions(path: str | Path) -> tuple[dict, list[AbstractExtraction]]:
    """Read a spooled extraction file back into per-abstract results."""
    path = Path(path)
    if not path.exists():
        raise DataError(f"extraction file not found: {path}")
    config: dict = {}
    by_abstract: dict[str, AbstractExtraction] = {}
    with path.open(encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.strip()
            if not line:
                continue
            try:
                row = json.loads(line)
            except json.JSONDecodeError as exc:
                raise DataError(f"{path}:{lineno}: invalid JSON ({exc.msg})") from exc
            if "_config" in row:
                config = row["_config"]
                continue
            try:
                ex = by_abstract.setdefault(
                    row["abstract_id"],
                    AbstractExtraction(
                        abstract_id=row["abstract_id"],
                        source_id=row["source_id"],
                        phrases={},
                    ),
                )
                ex.phrases[row["phrase"]] = PhraseHit(
                    count=int(row["count"]),
                    score=row.get("score"),
                    surfaces=Counter(row.get("surfaces", {})),
                )
            except (KeyError, TypeError, ValueError) as exc:
                raise DataError(f"{path}:{lineno}: malformed row ({exc})") from exc
    return config, list(by_abstract.values())
