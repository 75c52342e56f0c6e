"""Cross-source aggregation and weighted ranking of extracted phrases.

Per-source raw counts default to presence counting (number of abstracts
whose extraction contains the phrase); occurrence counting is available
behind ``count_mode`` and is stamped into every output.  Weighted totals
are computed in double precision with per-source products accumulated in
sorted source order, so results are bit-reproducible regardless of input
order or parallelism.
"""

from __future__ import annotations

import json
from collections import Counter, defaultdict
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable

from .corpus import Registry
from .errors import DataError
from .extract import AbstractExtraction

COUNT_MODES = ("presence", "occurrence")


class RankError(DataError):
    pass


@dataclass
class RawCounts:
    """Mergeable per-source phrase counts; weighting happens at finalize."""

    count_mode: str = "presence"
    counts: dict = field(default_factory=lambda: defaultdict(Counter))  # phrase -> source -> n
    surfaces: dict = field(default_factory=lambda: defaultdict(Counter))  # phrase -> surface -> n

    def add(self, extraction: AbstractExtraction) -> None:
        for phrase, hit in extraction.phrases.items():
            n = 1 if self.count_mode == "presence" else hit.count
            self.counts[phrase][extraction.source_id] += n
            self.surfaces[phrase].update(hit.surfaces)

    def merge(self, other: "RawCounts") -> None:
        if other.count_mode != self.count_mode:
            raise RankError("cannot merge tables with different count modes")
        for phrase, per_source in other.counts.items():
            self.counts[phrase].update(per_source)
        for phrase, surf in other.surfaces.items():
            self.surfaces[phrase].update(surf)


@dataclass(frozen=True)
class PhraseRow:
    phrase: str
    display_form: str
    per_source: dict[str, int]
    weighted_total: float


@dataclass(frozen=True)
class WeightedCountTable:
    count_mode: str
    rows: dict[str, PhraseRow]


@dataclass(frozen=True)
class RankedRow:
    rank: int
    phrase: str
    display_form: str
    weighted_total: float
    per_source: dict[str, int]


RankedList = list[RankedRow]


@dataclass(frozen=True)
class PlotRow:
    rank: int
    display_form: str
    weighted_total: float
    band: str  # "top" or "grey"


def display_form(surfaces: Counter, fallback: str) -> str:
    """Most frequent unstemmed surface form; ties break lexicographically."""
    if not surfaces:
        return fallback
    return min(surfaces.items(), key=lambda kv: (-kv[1], kv[0]))[0]


def weighted_total(per_source: dict[str, int], registry: Registry) -> float:
    """Sum of weight * count in sorted source order (reproducible)."""
    total = 0.0
    for source_id in sorted(per_source):
        if source_id not in registry:
            raise RankError(f"unknown source_id {source_id!r}")
        total += registry.weight(source_id) * per_source[source_id]
    return total


def accumulate(
    extractions: Iterable[AbstractExtraction],
    registry: Registry,
    count_mode: str = "presence",
) -> WeightedCountTable:
    """Aggregate per-abstract extractions into a weighted count table."""
    if count_mode not in COUNT_MODES:
        raise RankError(f"unknown count_mode {count_mode!r}")
    raw = RawCounts(count_mode=count_mode)
    for ex in extractions:
        if ex.source_id not in registry:
            raise RankError(f"unknown source_id {ex.source_id!r} (abstract {ex.abstract_id})")
        raw.add(ex)
    return finalize(raw, registry)


def finalize(raw: RawCounts, registry: Registry) -> WeightedCountTable:
    rows = {}
    for phrase in raw.counts:
        per_source = dict(sorted(raw.counts[phrase].items()))
        rows[phrase] = PhraseRow(
            phrase=phrase,
            display_form=display_form(raw.surfaces.get(phrase, Counter()), phrase),
            per_source=per_source,
            weighted_total=weighted_total(per_source, registry),
        )
    return WeightedCountTable(count_mode=raw.count_mode, rows=rows)


def rank(table: WeightedCountTable, top_k: int | None = None) -> RankedList:
    """Total order: weighted total descending, then phrase ascending."""
    if top_k is not None and top_k < 1:
        raise ValueError("top_k must be >= 1")
    ordered = sorted(table.rows.values(), key=lambda r: (-r.weighted_total, r.phrase))
    if top_k is not None:
        ordered = ordered[:top_k]
    return [
        RankedRow(
            rank=i,
            phrase=row.phrase,
            display_form=row.display_form,
            weighted_total=row.weighted_total,
            per_source=row.per_source,
        )
        for i, row in enumerate(ordered, start=1)
    ]


def export_plot_data(ranked: RankedList, highlight_k: int = 10, upto: int = 20) -> list[PlotRow]:
    """Bar-chart table: ranks 1..upto, top band for rank <= highlight_k."""
    return [
        PlotRow(
            rank=row.rank,
            display_form=row.display_form,
            weighted_total=row.weighted_total,
            band="top" if row.rank <= highlight_k else "grey",
        )
        for row in ranked[:upto]
    ]


def _config_header(config: dict) -> str:
    return "".join(f"# {key}={config[key]}\n" for key in sorted(config))


def write_ranked_csv(path: str | Path, ranked: RankedList, config: dict) -> None:
    with Path(path).open("w", encoding="utf-8") as fh:
        fh.write(_config_header(config))
        fh.write("rank,phrase,display_form,weighted_total\n")
        for row in ranked:
            fh.write(f'{row.rank},"{row.phrase}","{row.display_form}",{row.weighted_total!r}\n')


def write_plot_csv(path: str | Path, plot: list[PlotRow], config: dict) -> None:
    with Path(path).open("w", encoding="utf-8") as fh:
        fh.write(_config_header(config))
        fh.write("rank,display_form,weighted_total,band\n")
        for row in plot:
            fh.write(f'{row.rank},"{row.display_form}",{row.weighted_total!r},{row.band}\n')


def write_ranked_report(path: str | Path, ranked: RankedList, config: dict) -> None:
    """Machine-readable ranked list with per-source counts."""
    payload = {
        "config": config,
        "rows": [
            {
                "rank": row.rank,
                "phrase": row.phrase,
                "display_form": row.display_form,
                "weighted_total": row.weighted_total,
                "per_source": row.per_source,
            }
            for row in ranked
        ],
    }
    Path(path).write_text(json.dumps(payload, sort_keys=True, indent=2) + "\n", encoding="utf-8")


def read_ranked_report(path: str | Path) -> tuple[dict, RankedList]:
    path = Path(path)
    if not path.exists():
        raise RankError(f"ranked report not found: {path}")
    try:
        payload = json.loads(path.read_text(encoding="utf-8"))
        rows = [
            RankedRow(
                rank=int(row["rank"]),
                phrase=row["phrase"],
                display_form=row.get("display_form", row["phrase"]),
                weighted_total=float(row["weighted_total"]),
                per_source={k: int(v) for k, v in row.get("per_source", {}).items()},
            )
            for row in payload["rows"]
        ]
    except (json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
        raise RankError(f"{path}: malformed ranked report ({exc})") from exc
    return payload.get("config", {}), rows
