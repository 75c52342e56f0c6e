"""Regenerate the bundled demo ranked list used by curate/serve/export.

The fixture mimics the shape of a real weighted ranking: three dominant
topics, a popularity drop, a tight mid-field, junk phrases that curation
blocks, and near-duplicates that curation merges.  Weighted totals are
chosen so that after merging "train data"/"real data" into "data set"
the accepted order is unchanged.  Run from the repository root:

    python scripts/make_demo_fixture.py
"""

from __future__ import annotations

import json
import sys
from pathlib import Path

ROOT = Path(__file__).resolve().parents[1]
sys.path.insert(0, str(ROOT / "src"))

from topicminer.porter import stem  # noqa: E402

# (stemmed phrase, display form, weighted total)
ROWS = [
    ("support vector machin", "support vector machine", 9216),
    ("propos method", "proposed method", 9150),
    ("neural network", "neural network", 8604),
    ("experiment result show", "experimental results show", 8563),
    ("data set", "data set", 5212),
    ("comput vision", "computer vision", 5100),
    ("train data", "training data", 1703),
    ("real data", "real data", 1651),
    ("object function", "objective function", 1502),
    ("markov random field", "Markov random field", 897),
    ("featur space", "feature space", 876),
    ("gener model", "generative model", 858),
    ("linear matrix inequ", "linear matrix inequality", 840),
    ("gaussian mixtur model", "Gaussian mixture model", 823),
    ("princip compon analysi", "principal component analysis", 803),
    ("hidden markov model", "hidden Markov model", 801),
    ("featur extract", "feature extraction", 724),
    ("reinforc learn", "reinforcement learning", 717),
    ("imag classif", "image classification", 703),
    ("larg scale", "large scale", 694),
    ("spars represent", "sparse representation", 688),
    ("graphic model", "graphical model", 671),
    ("learn algorithm", "learning algorithm", 663),
    ("nonlinear system", "nonlinear system", 652),
    ("convex optim", "convex optimization", 646),
    ("transfer learn", "transfer learning", 639),
]


def main() -> None:
    # sanity: every stemmed phrase is the stem of its display form
    for phrase, display, _ in ROWS:
        derived = " ".join(stem(w) for w in display.lower().split())
        assert derived == phrase, f"{display!r} stems to {derived!r}, not {phrase!r}"
    totals = [total for _, _, total in ROWS]
    assert totals == sorted(totals, reverse=True), "totals must be descending"
    merged = ROWS[4][2] + ROWS[6][2] + ROWS[7][2]
    assert merged < ROWS[2][2], "merged 'data set' must stay below 'neural network'"

    payload = {
        "config": {"count_mode": "presence", "method": "rake", "mode": "paper_literal",
                   "max_n": 4, "note": "bundled demo fixture"},
        "rows": [
            {
                "rank": i,
                "phrase": phrase,
                "display_form": display,
                "weighted_total": float(total),
                "per_source": {"fixture": total},
            }
            for i, (phrase, display, total) in enumerate(ROWS, start=1)
        ],
    }
    out = ROOT / "src" / "topicminer" / "data" / "fixture_topics.json"
    out.write_text(json.dumps(payload, sort_keys=True, indent=2) + "\n", encoding="utf-8")
    print(f"wrote {out} ({len(ROWS)} rows)")


if __name__ == "__main__":
    main()
