"""Tokenization, stop-word handling and stemming of abstract text.

An abstract is cut into *segments* at phrase delimiters (commas, full
stops and similar punctuation); each segment is a run of lowercase
tokens.  Every token is stemmed, and its stop-word status is evaluated
on the unstemmed lowercase surface form, because stemming can corrupt
stoplist membership ("was" -> "wa").
"""

from __future__ import annotations

import unicodedata
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

from .porter import stem as porter_stem

# Characters that end a phrase segment.  Everything else that is not a
# token character merely separates tokens.
DELIMITERS = frozenset('.,;:!?()[]"\n')

_TOKEN_EXTRA = "-"


@dataclass(frozen=True)
class PreparedToken:
    """One token of a preprocessed abstract."""

    surface: str  # unstemmed lowercase form
    stem: str
    stop: bool


@dataclass(frozen=True)
class PreparedText:
    """Segments of stemmed tokens; segment boundaries fall on delimiters."""

    segments: tuple[tuple[PreparedToken, ...], ...]

    def __len__(self) -> int:
        return sum(len(seg) for seg in self.segments)


class StopListError(ValueError):
    pass


@dataclass(frozen=True)
class StopList:
    """Exact-match set of lowercase stop words."""

    words: frozenset[str]

    def __post_init__(self) -> None:
        if not self.words:
            raise StopListError("stop list is empty")

    def __contains__(self, word: str) -> bool:
        return word in self.words

    @classmethod
    def from_file(cls, path: str | Path) -> "StopList":
        words = set()
        for line in Path(path).read_text(encoding="utf-8").splitlines():
            line = line.split("#", 1)[0].strip().lower()
            if line:
                words.add(line)
        if not words:
            raise StopListError(f"stop list {path} contains no words")
        return cls(frozenset(words))

    @classmethod
    def default(cls) -> "StopList":
        """The bundled Fox stop list, as used by RAKE's original authors."""
        ref = resources.files("topicminer.data").joinpath("stopwords_fox.txt")
        with resources.as_file(ref) as path:
            return cls.from_file(path)


def is_stopword(word: str, stops: StopList) -> bool:
    return word in stops


def _fold_ascii(token: str) -> str:
    """Fold accented letters to ASCII where a decomposition exists."""
    if token.isascii():
        return token
    folded = "".join(
        ch
        for ch in unicodedata.normalize("NFKD", token)
        if not unicodedata.combining(ch)
    )
    return folded if folded.isascii() and folded else token


def tokenize(text: str) -> list[list[str]]:
    """Split raw text into segments of lowercase tokens.

    Tokens are maximal runs of letters/digits/hyphens.  Leading and
    trailing hyphens are trimmed and tokens without any letter (pure
    numbers, stray dashes) are dropped.  Empty segments vanish.
    """
    segments: list[list[str]] = []
    current: list[str] = []
    buf: list[str] = []

    def flush_token() -> None:
        if not buf:
            return
        raw = "".join(buf).strip(_TOKEN_EXTRA)
        buf.clear()
        if not raw:
            return
        token = _fold_ascii(raw.lower())
        if any(ch.isalpha() for ch in token):
            current.append(token)

    def flush_segment() -> None:
        flush_token()
        if current:
            segments.append(current.copy())
            current.clear()

    for ch in text:
        if ch.isalnum() or ch == _TOKEN_EXTRA:
            buf.append(ch)
        elif ch in DELIMITERS:
            flush_segment()
        else:
            flush_token()
    flush_segment()
    return segments


def preprocess(text: str, stops: StopList) -> PreparedText:
    """Tokenize, stem and stop-flag an abstract."""
    segments = tuple(
        tuple(
            PreparedToken(surface=tok, stem=porter_stem(tok), stop=tok in stops)
            for tok in seg
        )
        for seg in tokenize(text)
    )
    return PreparedText(segments=segments)
