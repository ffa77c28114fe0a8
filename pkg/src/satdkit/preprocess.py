"""Comment text normalization: identifier splitting and word segmentation.

Comments quoting Java code are split at camel-case boundaries so that
``new CharParserForJavaOrSomething();`` reads as
``new Char Parser For Java Or Something();``. Splitting only ever inserts
spaces; every other byte of the input survives unchanged, and case is
preserved throughout (no lowercasing, stemming, or stop-word removal).
"""

from __future__ import annotations

import re
from dataclasses import dataclass

# Comment punctuation that segments as standalone words so it can be counted
# and tokenized on its own (comment markers, empty brackets, statement ends).
RESERVED_SYMBOLS = ("/*", "*/", "//", "[]", "()", ";")

# (a) lower->upper boundary, (b) acronym boundary: last upper of an uppercase
# run that is followed by upper+lower ("HTTPResponse" -> "HTTP Response").
_CAMEL_BOUNDARY = re.compile(r"(?<=[a-z])(?=[A-Z])|(?<=[A-Z])(?=[A-Z][a-z])")


@dataclass(frozen=True)
class PreprocessedText:
    """A comment after identifier splitting, with its untouched source."""

    text: str
    original: str


def split_identifiers(text: str) -> PreprocessedText:
    """Insert spaces at camel-case boundaries (ASCII letters only).

    Idempotent: re-splitting already split text is a no-op. Digits,
    punctuation, and existing whitespace pass through byte-for-byte.
    """
    return PreprocessedText(text=_CAMEL_BOUNDARY.sub(" ", text), original=text)


def segment_words(text: str) -> list[str]:
    """Split identifier-split text into words.

    Splits on whitespace; within each chunk, a maximal run of the reserved
    symbol strings becomes its own word ("fix()" -> ["fix", "()"]). Other
    punctuation stays attached to its word, and no empty words are produced.
    """
    words: list[str] = []
    for chunk in text.split():
        words.extend(_split_chunk(chunk))
    return words


def _match_reserved(chunk: str, pos: int) -> str | None:
    for sym in RESERVED_SYMBOLS:
        if chunk.startswith(sym, pos):
            return sym
    return None


def _split_chunk(chunk: str) -> list[str]:
    words: list[str] = []
    plain: list[str] = []
    i = 0
    n = len(chunk)
    while i < n:
        sym = _match_reserved(chunk, i)
        if sym is None:
            plain.append(chunk[i])
            i += 1
            continue
        if plain:
            words.append("".join(plain))
            plain = []
        run = [sym]
        i += len(sym)
        while True:
            sym = _match_reserved(chunk, i)
            if sym is None:
                break
            run.append(sym)
            i += len(sym)
        words.append("".join(run))
    if plain:
        words.append("".join(plain))
    return words
