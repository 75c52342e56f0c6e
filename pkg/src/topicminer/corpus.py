"""Source registry and abstract ingestion.

A *registry* lists the journals and conferences a corpus draws from,
together with the per-source weight used for ranking: the impact factor
for journals, the average citation count for conferences.  Abstracts
arrive as newline-delimited JSON records and are validated against the
registry; bad rows are reported and skipped rather than aborting the
run, since real corpora are dirty and a single source has little impact
on the aggregate.
"""

from __future__ import annotations

import csv
import json
from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import Iterable, Iterator

from .errors import DataError

SOURCE_KINDS = ("journal", "conference")


class RegistryError(DataError):
    pass


class IngestError(DataError):
    pass


@dataclass(frozen=True)
class SourceRecord:
    """One journal or conference with its ranking weight."""

    source_id: str
    name: str
    kind: str  # "journal" or "conference"
    weight: float
    expected_abstracts: int | None = None

    def __post_init__(self) -> None:
        if self.kind not in SOURCE_KINDS:
            raise RegistryError(f"{self.source_id}: unknown kind {self.kind!r}")
        if self.weight < 0:
            raise RegistryError(f"{self.source_id}: negative weight {self.weight}")
        if self.expected_abstracts is not None and self.expected_abstracts < 0:
            raise RegistryError(f"{self.source_id}: negative abstract count")


@dataclass(frozen=True)
class Registry:
    sources: tuple[SourceRecord, ...]

    def __post_init__(self) -> None:
        seen = set()
        for rec in self.sources:
            if rec.source_id in seen:
                raise RegistryError(f"duplicate source_id {rec.source_id!r}")
            seen.add(rec.source_id)

    def __len__(self) -> int:
        return len(self.sources)

    def __contains__(self, source_id: str) -> bool:
        return source_id in self.by_id

    @property
    def by_id(self) -> dict[str, SourceRecord]:
        return {rec.source_id: rec for rec in self.sources}

    def weight(self, source_id: str) -> float:
        return self.by_id[source_id].weight

    def count_kind(self, kind: str) -> int:
        return sum(1 for rec in self.sources if rec.kind == kind)


@dataclass(frozen=True)
class AbstractRecord:
    abstract_id: str
    source_id: str
    year: int
    text: str


@dataclass(frozen=True)
class Corpus:
    """Immutable, validated collection of abstracts."""

    registry: Registry
    records: tuple[AbstractRecord, ...]

    def __len__(self) -> int:
        return len(self.records)


@dataclass(frozen=True)
class RejectedRow:
    abstract_id: str | None
    reason: str


@dataclass(frozen=True)
class IngestReport:
    corpus: Corpus
    rejected: tuple[RejectedRow, ...]


@dataclass(frozen=True)
class SourceShare:
    source_id: str
    count: int
    share: float  # fraction of total


@dataclass(frozen=True)
class CorpusStats:
    total_abstracts: int
    per_source: tuple[SourceShare, ...]
    mean_per_source: float
    mean_share: float


def load_registry(path: str | Path) -> Registry:
    """Read a registry CSV: source_id,name,kind,weight,expected_abstracts."""
    path = Path(path)
    if not path.exists():
        raise RegistryError(f"registry file not found: {path}")
    sources = []
    with path.open(newline="", encoding="utf-8") as fh:
        reader = csv.DictReader(fh)
        expected_cols = {"source_id", "name", "kind", "weight", "expected_abstracts"}
        if reader.fieldnames is None or not expected_cols.issubset(reader.fieldnames):
            raise RegistryError(f"{path}: missing registry header {sorted(expected_cols)}")
        for lineno, row in enumerate(reader, start=2):
            try:
                expected = row["expected_abstracts"].strip()
                sources.append(
                    SourceRecord(
                        source_id=row["source_id"].strip(),
                        name=row["name"].strip(),
                        kind=row["kind"].strip(),
                        weight=float(row["weight"]),
                        expected_abstracts=int(expected) if expected else None,
                    )
                )
            except RegistryError:
                raise
            except (KeyError, TypeError, ValueError, AttributeError) as exc:
                raise RegistryError(f"{path}:{lineno}: malformed row ({exc})") from exc
    if not sources:
        raise RegistryError(f"{path}: empty registry")
    return Registry(sources=tuple(sources))


def default_registry() -> Registry:
    """The bundled 39-source registry (31 journals + 8 conferences)."""
    ref = resources.files("topicminer.data").joinpath("registry.csv")
    with resources.as_file(ref) as path:
        return load_registry(path)


def iter_abstract_rows(path: str | Path) -> Iterator[dict]:
    """Yield raw abstract rows from a JSONL file, one object per line."""
    path = Path(path)
    if not path.exists():
        raise IngestError(f"abstracts file not found: {path}")
    with path.open(encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.strip()
            if not line:
                continue
            try:
                row = json.loads(line)
            except json.JSONDecodeError as exc:
                yield {"_parse_error": f"{path}:{lineno}: invalid JSON ({exc.msg})"}
                continue
            if not isinstance(row, dict):
                yield {"_parse_error": f"{path}:{lineno}: row is not an object"}
                continue
            yield row


def ingest_abstracts(rows: Iterable[dict | AbstractRecord], registry: Registry) -> IngestReport:
    """Validate rows against the registry; keep good ones, report the rest.

    Row order is preserved for reproducibility, but nothing downstream
    may depend on it.
    """
    by_id = registry.by_id
    seen: set[str] = set()
    records: list[AbstractRecord] = []
    rejected: list[RejectedRow] = []

    for row in rows:
        if isinstance(row, AbstractRecord):
            rec = row
        else:
            if "_parse_error" in row:
                rejected.append(RejectedRow(None, row["_parse_error"]))
                continue
            try:
                rec = AbstractRecord(
                    abstract_id=str(row["abstract_id"]),
                    source_id=str(row["source_id"]),
                    year=int(row["year"]),
                    text=str(row["text"]),
                )
            except (KeyError, TypeError, ValueError) as exc:
                rejected.append(RejectedRow(row.get("abstract_id"), f"malformed row ({exc})"))
                continue
        if rec.source_id not in by_id:
            rejected.append(RejectedRow(rec.abstract_id, f"unknown source_id {rec.source_id!r}"))
            continue
        if rec.abstract_id in seen:
            rejected.append(RejectedRow(rec.abstract_id, f"duplicate abstract_id {rec.abstract_id!r}"))
            continue
        if not rec.text.strip():
            rejected.append(RejectedRow(rec.abstract_id, "empty text"))
            continue
        seen.add(rec.abstract_id)
        records.append(rec)

    return IngestReport(
        corpus=Corpus(registry=registry, records=tuple(records)),
        rejected=tuple(rejected),
    )


def _stats_from_counts(counts: dict[str, int], registry: Registry) -> CorpusStats:
    total = sum(counts.values())
    if total == 0:
        raise IngestError("corpus is empty")
    per_source = tuple(
        SourceShare(rec.source_id, counts.get(rec.source_id, 0), counts.get(rec.source_id, 0) / total)
        for rec in registry.sources
    )
    return CorpusStats(
        total_abstracts=total,
        per_source=per_source,
        mean_per_source=total / len(registry),
        mean_share=1.0 / len(registry),
    )


def corpus_stats(corpus: Corpus) -> CorpusStats:
    """Counts, shares and per-source means over an ingested corpus."""
    counts: dict[str, int] = {}
    for rec in corpus.records:
        counts[rec.source_id] = counts.get(rec.source_id, 0) + 1
    return _stats_from_counts(counts, corpus.registry)


def expected_stats(registry: Registry) -> CorpusStats:
    """Stats computed from the registry's expected abstract counts."""
    counts = {
        rec.source_id: rec.expected_abstracts
        for rec in registry.sources
        if rec.expected_abstracts is not None
    }
    return _stats_from_counts(counts, registry)


def format_stats_table(stats: CorpusStats, registry: Registry) -> str:
    """Human-readable stats table; shares shown as percentages (2 dp)."""
    by_id = registry.by_id
    lines = [
        f"sources: {len(registry)} "
        f"({registry.count_kind('journal')} journals + {registry.count_kind('conference')} conferences)",
        f"total abstracts: {stats.total_abstracts:,}",
        f"mean per source: {round(stats.mean_per_source):,} ({stats.mean_share * 100:.2f}%)",
        "",
        f"{'source':<12} {'kind':<10} {'weight':>8} {'abstracts':>10} {'share':>7}",
    ]
    for share in sorted(stats.per_source, key=lambda s: (-s.count, s.source_id)):
        rec = by_id[share.source_id]
        lines.append(
            f"{rec.source_id:<12} {rec.kind:<10} {rec.weight:>8.4g} "
            f"{share.count:>10,} {share.share * 100:>6.2f}%"
        )
    return "\n".join(lines)


def stats_report(stats: CorpusStats, registry: Registry) -> dict:
    """Machine-readable stats payload."""
    return {
        "total_abstracts": stats.total_abstracts,
        "n_sources": len(registry),
        "n_journals": registry.count_kind("journal"),
        "n_conferences": registry.count_kind("conference"),
        "mean_per_source": stats.mean_per_source,
        "mean_share_pct": stats.mean_share * 100,
        "per_source": [
            {"source_id": s.source_id, "count": s.count, "share_pct": s.share * 100}
            for s in stats.per_source
        ],
    }
