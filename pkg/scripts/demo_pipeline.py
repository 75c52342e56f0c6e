"""End-to-end demo on a synthetic corpus: ingest -> extract -> rank -> clean.

Builds a two-source corpus with planted topics, runs both extraction
methods, ranks with source weighting, applies a small rules file, and
prints the resulting tables.  Artifacts land in ./demo_out/.

    python scripts/demo_pipeline.py [--seed N]
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from pathlib import Path

ROOT = Path(__file__).resolve().parents[1]
sys.path.insert(0, str(ROOT / "src"))

from topicminer.corpus import Registry, SourceRecord, ingest_abstracts  # noqa: E402
from topicminer.curate import RuleSet, apply_rules  # noqa: E402
from topicminer.extract import extract_corpus, write_extractions  # noqa: E402
from topicminer.rank import accumulate, export_plot_data, rank, write_ranked_report  # noqa: E402
from topicminer.textprep import StopList  # noqa: E402

TOPICS = [
    "support vector machine",
    "neural network",
    "objective function",
    "feature space",
    "gaussian mixture model",
    "principal component analysis",
]
FILLER = [
    "the proposed method improves results",
    "we report experimental results",
    "training data and test data",
    "a new approach for large problems",
]


def synth_corpus(seed: int, n_abstracts: int = 120) -> list[dict]:
    rng = random.Random(seed)
    rows = []
    for i in range(n_abstracts):
        source = "alpha" if rng.random() < 0.6 else "beta"
        sentences = []
        for _ in range(rng.randrange(2, 5)):
            if rng.random() < 0.7:
                sentences.append(f"We study the {rng.choice(TOPICS)} in detail")
            else:
                sentences.append(rng.choice(FILLER))
        rows.append(
            {
                "abstract_id": f"{source}-{i:04d}",
                "source_id": source,
                "year": rng.randrange(2007, 2017),
                "text": ". ".join(sentences) + ".",
            }
        )
    return rows


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--seed", type=int, default=7)
    parser.add_argument("--out", type=Path, default=ROOT / "demo_out")
    args = parser.parse_args()

    args.out.mkdir(exist_ok=True)
    registry = Registry(
        sources=(
            SourceRecord("alpha", "Journal Alpha", "journal", 2.5, None),
            SourceRecord("beta", "Conference Beta", "conference", 0.8, None),
        )
    )
    rows = synth_corpus(args.seed)
    (args.out / "abstracts.jsonl").write_text(
        "\n".join(json.dumps(r) for r in rows) + "\n", encoding="utf-8"
    )
    corpus = ingest_abstracts(rows, registry).corpus
    stops = StopList.default()

    for method, mode in (("rake", "paper_literal"), ("rake", "classic"), ("ngram", "paper_literal")):
        tag = f"{method}-{mode}" if method == "rake" else method
        extractions = extract_corpus(corpus.records, stops, method=method, mode=mode)
        config = {"method": method, "mode": mode, "max_n": 4, "count_mode": "presence"}
        write_extractions(args.out / f"extracted-{tag}.jsonl", extractions, config)
        ranked = rank(accumulate(extractions, registry), top_k=200)
        write_ranked_report(args.out / f"ranked-{tag}.json", ranked, config)
        print(f"\n== {tag}: top 8 of {len(ranked)} phrases ==")
        for row in ranked[:8]:
            print(f"  {row.rank:>3} {row.display_form:<40} {row.weighted_total:8.2f}")

    extractions = extract_corpus(corpus.records, stops, method="rake")
    ranked = rank(accumulate(extractions, registry))
    rules = RuleSet(
        blocklist=frozenset({"propos method", "experiment result"}),
        merge_groups={"train data": frozenset({"test data"})},
    )
    cleaned = apply_rules(ranked[:500], rules)
    print("\n== cleaned window: top 10 with bands ==")
    for row in export_plot_data(cleaned, highlight_k=5, upto=10):
        marker = "#" if row.band == "top" else " "
        print(f" {marker} {row.rank:>3} {row.display_form:<40} {row.weighted_total:8.2f}")
    print(f"\nartifacts in {args.out}/")


if __name__ == "__main__":
    main()
