"""Diff the stemmer against a reference vocabulary/output word-list pair.

Defaults to the frozen pair shipped under tests/data/.  Useful when
porting or when validating against another published pair:

    python scripts/check_stemmer.py [VOCAB_FILE EXPECTED_FILE]
"""

from __future__ import annotations

import sys
from pathlib import Path

ROOT = Path(__file__).resolve().parents[1]
sys.path.insert(0, str(ROOT / "src"))

from topicminer.porter import stem  # noqa: E402


def main(argv: list[str]) -> int:
    if len(argv) == 3:
        vocab_path, expected_path = Path(argv[1]), Path(argv[2])
    elif len(argv) == 1:
        vocab_path = ROOT / "tests" / "data" / "porter_vocabulary.txt"
        expected_path = ROOT / "tests" / "data" / "porter_expected.txt"
    else:
        print(__doc__, file=sys.stderr)
        return 2

    words = vocab_path.read_text(encoding="utf-8").split()
    expected = expected_path.read_text(encoding="utf-8").split()
    if len(words) != len(expected):
        print(f"length mismatch: {len(words)} words vs {len(expected)} stems", file=sys.stderr)
        return 1

    diffs = 0
    for word, want in zip(words, expected):
        got = stem(word)
        if got != want:
            diffs += 1
            if diffs <= 20:
                print(f"DIFF {word}: expected {want}, got {got}")
    print(f"{len(words)} words checked, {diffs} diffs")
    return 1 if diffs else 0


if __name__ == "__main__":
    sys.exit(main(sys.argv))
