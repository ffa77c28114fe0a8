"""Trigger-word lexicons: keyword matching, removal, and tag-based labeling.

A small set of task-annotation keywords ("todo", "fixme", ...) separates the
"easy" debt admissions from the hard ones. The lexicon powers three things:
a training-free keyword classifier, the easy/hard corpus split, and trigger
removal when duplicating minority comments for augmentation.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, replace
from pathlib import Path

from .corpus import Comment, Label
from .errors import DataError

STRICT = "strict"
FUZZY = "fuzzy"

DEFAULT_MAT_TRIGGERS = frozenset({"todo", "fixme", "xxx", "hack"})
DEFAULT_DUP_TRIGGERS = DEFAULT_MAT_TRIGGERS | {"ugly"}

_COMMENT_MARKERS = {"//", "/*", "*/"}


@dataclass(frozen=True)
class TriggerLexicon:
    """Case-insensitive trigger set with a matching mode.

    strict: triggers match whole words only (delimited by non-alphanumeric
    characters or string edges). fuzzy: triggers match anywhere, including
    inside longer alphanumeric runs.
    """

    triggers: frozenset[str]
    mode: str = STRICT

    def __post_init__(self) -> None:
        if self.mode not in (STRICT, FUZZY):
            raise ValueError(f"mode must be {STRICT!r} or {FUZZY!r}, got {self.mode!r}")
        normalized = frozenset(t.lower() for t in self.triggers)
        if not normalized:
            raise ValueError("trigger set must be non-empty")
        for t in normalized:
            if not t or any(ch.isspace() for ch in t):
                raise ValueError(f"invalid trigger {t!r}: empty or contains whitespace")
        object.__setattr__(self, "triggers", normalized)


def mat_lexicon(mode: str = STRICT) -> TriggerLexicon:
    """The canonical task-annotation-tag set used by the keyword baseline."""
    return TriggerLexicon(triggers=DEFAULT_MAT_TRIGGERS, mode=mode)


def dup_lexicon(mode: str = STRICT) -> TriggerLexicon:
    """Trigger set used when duplicating minority comments (tags + 'ugly')."""
    return TriggerLexicon(triggers=DEFAULT_DUP_TRIGGERS, mode=mode)


def load_lexicon(path: str | Path, mode: str = STRICT) -> TriggerLexicon:
    """Read a lexicon file: one trigger per line, ``#`` comments allowed."""
    path = Path(path)
    if not path.exists():
        raise DataError(f"lexicon file not found: {path}")
    triggers = set()
    for raw in path.read_text(encoding="utf-8").splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            triggers.add(line.lower())
    if not triggers:
        raise DataError(f"{path}: lexicon file contains no triggers")
    return TriggerLexicon(triggers=frozenset(triggers), mode=mode)


def _lower_keep_length(text: str) -> str:
    # Per-character lowercase; characters whose lowercase form changes length
    # are left as-is so span offsets stay aligned with the input.
    out = []
    for ch in text:
        low = ch.lower()
        out.append(low if len(low) == 1 else ch)
    return "".join(out)


def _word_bounded(text: str, start: int, end: int) -> bool:
    left_ok = start == 0 or not text[start - 1].isalnum()
    right_ok = end == len(text) or not text[end].isalnum()
    return left_ok and right_ok


def find_triggers(lex: TriggerLexicon, text: str) -> list[tuple[int, int]]:
    """Non-overlapping trigger spans, scanned left to right.

    Matching is case-insensitive; at equal start positions the longest
    trigger wins. Strict mode requires whole-word boundaries.
    """
    low = _lower_keep_length(text)
    ordered = sorted(lex.triggers, key=lambda t: (-len(t), t))
    spans: list[tuple[int, int]] = []
    i = 0
    n = len(low)
    while i < n:
        matched = None
        for trigger in ordered:
            end = i + len(trigger)
            if not low.startswith(trigger, i):
                continue
            if lex.mode == STRICT and not _word_bounded(low, i, end):
                continue
            matched = (i, end)
            break
        if matched is None:
            i += 1
        else:
            spans.append(matched)
            i = matched[1]
    return spans


def remove_triggers(lex: TriggerLexicon, text: str) -> str:
    """Delete strict-mode trigger spans (plus one trailing ':' each).

    The run of spaces around each deletion collapses to a single space and
    the result is trimmed; text without triggers is returned unchanged.
    Strict spans are used even for fuzzy lexicons so that words merely
    containing a trigger ("hackathon") survive.
    """
    strict = lex if lex.mode == STRICT else replace(lex, mode=STRICT)
    spans = find_triggers(strict, text)
    if not spans:
        return text
    sentinel = "\x00"
    parts: list[str] = []
    pos = 0
    for start, end in spans:
        if end < len(text) and text[end] == ":":
            end += 1
        parts.append(text[pos:start])
        parts.append(sentinel)
        pos = end
    parts.append(text[pos:])
    joined = "".join(parts)
    collapsed = re.sub(
        r" *\x00[ \x00]*",
        lambda m: " " if " " in m.group(0) else "",
        joined,
    )
    return collapsed.strip()


def is_marker_only(text: str) -> bool:
    """True when the text is empty or consists solely of comment markers."""
    words = text.split()
    return not words or all(w in _COMMENT_MARKERS for w in words)


def mat_classify(lex: TriggerLexicon, comment: Comment) -> Label:
    """Training-free keyword labeling: SATD iff any trigger matches."""
    return Label.SATD if find_triggers(lex, comment.text) else Label.NON_SATD
