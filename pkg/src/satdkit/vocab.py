"""Subword vocabulary construction and greedy longest-match tokenization.

The vocabulary starts from a base token file (one token per line, line
number = id) and is augmented with domain words discovered in a corpus:
a word qualifies as a candidate when it is not already a whole-word token
in the base vocabulary and appears in strictly more than a threshold
fraction (default 25%) of the corpus projects. A hand-maintained denylist
file removes flawed extractions before the survivors are appended to the
base vocabulary.

Tokenization is the standard greedy longest-prefix scheme: non-initial
pieces carry the ``##`` continuation marker, a word with no matching prefix
(or longer than 100 characters) becomes a single UNK, and sequences are
wrapped in CLS/SEP and truncated to a maximum length.
"""

from __future__ import annotations

import csv
from collections import Counter
from dataclasses import dataclass
from pathlib import Path

from .corpus import CorpusCollection
from .errors import DataError
from .preprocess import PreprocessedText, segment_words, split_identifiers

CONTINUATION_PREFIX = "##"
MAX_WORD_CHARS = 100


@dataclass(frozen=True)
class Specials:
    """The four reserved token strings every vocabulary must contain."""

    unk: str = "[UNK]"
    pad: str = "[PAD]"
    cls: str = "[CLS]"
    sep: str = "[SEP]"

    def as_tuple(self) -> tuple[str, str, str, str]:
        return (self.unk, self.pad, self.cls, self.sep)


DEFAULT_SPECIALS = Specials()


@dataclass(frozen=True)
class Vocabulary:
    """Immutable token table: dense ids 0..size-1 in token-list order."""

    tokens: tuple[str, ...]
    index: dict[str, int]
    specials: Specials = DEFAULT_SPECIALS
    continuation_prefix: str = CONTINUATION_PREFIX

    @classmethod
    def from_tokens(
        cls, tokens: list[str] | tuple[str, ...], specials: Specials = DEFAULT_SPECIALS
    ) -> "Vocabulary":
        tokens = tuple(tokens)
        index: dict[str, int] = {}
        special_set = set(specials.as_tuple())
        for i, token in enumerate(tokens):
            if token == "":
                raise DataError(f"empty token at id {i}")
            if token in index:
                raise DataError(f"duplicate token {token!r} (ids {index[token]} and {i})")
            if token not in special_set and any(ch.isspace() for ch in token):
                raise DataError(f"token {token!r} contains whitespace")
            index[token] = i
        missing = [s for s in specials.as_tuple() if s not in index]
        if missing:
            raise DataError(f"vocabulary is missing special tokens: {missing}")
        return cls(tokens=tokens, index=index, specials=specials)

    @property
    def size(self) -> int:
        return len(self.tokens)

    @property
    def unk_id(self) -> int:
        return self.index[self.specials.unk]

    @property
    def pad_id(self) -> int:
        return self.index[self.specials.pad]

    @property
    def cls_id(self) -> int:
        return self.index[self.specials.cls]

    @property
    def sep_id(self) -> int:
        return self.index[self.specials.sep]

    @property
    def special_ids(self) -> frozenset[int]:
        return frozenset(self.index[s] for s in self.specials.as_tuple())

    def is_whole_word(self, word: str) -> bool:
        """True when the word itself is an initial-position token."""
        return word in self.index and not word.startswith(self.continuation_prefix)


@dataclass(frozen=True)
class CandidateToken:
    """A word proposed for vocabulary augmentation and its project spread."""

    token: str
    project_count: int
    project_fraction: float


@dataclass(frozen=True)
class TokenSequence:
    """Token ids for one comment: CLS + pieces + SEP, length-capped."""

    ids: tuple[int, ...]
    truncated: bool
    source_id: int | None = None


def load_base_vocabulary(path: str | Path, specials: Specials = DEFAULT_SPECIALS) -> Vocabulary:
    """Read a one-token-per-line vocabulary file; line number = token id."""
    path = Path(path)
    if not path.exists():
        raise DataError(f"vocabulary file not found: {path}")
    with path.open(encoding="utf-8") as fh:
        tokens = [line.rstrip("\n") for line in fh]
    if tokens and tokens[-1] == "":
        tokens.pop()
    try:
        return Vocabulary.from_tokens(tokens, specials=specials)
    except DataError as exc:
        raise DataError(f"{path}: {exc}") from None


def save_vocabulary(vocab: Vocabulary, path: str | Path) -> None:
    Path(path).write_text("\n".join(vocab.tokens) + "\n", encoding="utf-8")


def char_base_vocabulary(alphabet: str | None = None) -> Vocabulary:
    """Fallback base vocabulary: specials plus single-character tokens (whole
    word and continuation) over an alphabet, default printable ASCII.

    Every word drawn from the alphabet tokenizes without UNK, which makes
    this a reasonable stand-in base when no pretrained token file is given.
    """
    if alphabet is None:
        alphabet = "".join(chr(c) for c in range(33, 127))
    chars = sorted(set(ch for ch in alphabet if not ch.isspace()))
    tokens = list(DEFAULT_SPECIALS.as_tuple())
    tokens.extend(chars)
    tokens.extend(CONTINUATION_PREFIX + ch for ch in chars)
    return Vocabulary.from_tokens(tokens)


def discover_candidate_tokens(
    collection: CorpusCollection, base: Vocabulary, threshold: float = 0.25
) -> list[CandidateToken]:
    """Find corpus words worth adding to the base vocabulary.

    A word (after identifier splitting and segmentation) is a candidate iff
    it is not already a whole-word base token and occurs in strictly more
    than ``threshold`` of the collection's projects. Reserved symbol words
    like "//" participate like any other word. Output is sorted by
    descending project count, ties broken lexicographically.
    """
    if not collection.projects:
        raise DataError("empty collection")
    if not 0 <= threshold < 1:
        raise ValueError(f"threshold must be in [0, 1), got {threshold}")
    counts: Counter[str] = Counter()
    for ds in collection.projects:
        words: set[str] = set()
        for comment in ds.comments:
            words.update(segment_words(split_identifiers(comment.text).text))
        counts.update(words)
    total = len(collection.projects)
    candidates = [
        CandidateToken(token=word, project_count=n, project_fraction=n / total)
        for word, n in counts.items()
        if n > threshold * total and not base.is_whole_word(word)
    ]
    candidates.sort(key=lambda c: (-c.project_count, c.token))
    return candidates


def apply_denylist(
    candidates: list[CandidateToken], denylist: str | Path
) -> list[CandidateToken]:
    """Drop candidates whose token appears in the denylist file (one per line)."""
    path = Path(denylist)
    try:
        lines = path.read_text(encoding="utf-8").splitlines()
    except OSError as exc:
        raise DataError(f"cannot read denylist {path}: {exc}") from None
    denied = {line.strip() for line in lines if line.strip()}
    return [c for c in candidates if c.token not in denied]


def augment_vocabulary(base: Vocabulary, finals: list[CandidateToken]) -> Vocabulary:
    """Append final candidate tokens after the base tokens; base ids unchanged."""
    for c in finals:
        if c.token in base.index:
            raise DataError(f"candidate token {c.token!r} collides with an existing token")
    return Vocabulary.from_tokens(
        base.tokens + tuple(c.token for c in finals), specials=base.specials
    )


def write_candidate_report(candidates: list[CandidateToken], path: str | Path) -> None:
    """CSV report of candidates: token, project_count, project_fraction."""
    with Path(path).open("w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["token", "project_count", "project_fraction"])
        for c in candidates:
            writer.writerow([c.token, c.project_count, f"{c.project_fraction:.6f}"])


def _word_piece_ids(vocab: Vocabulary, word: str) -> list[int] | None:
    """Greedy longest-prefix pieces for one word, or None when it is UNK."""
    if len(word) > MAX_WORD_CHARS:
        return None
    pieces: list[int] = []
    start = 0
    n = len(word)
    while start < n:
        end = n
        match_id = None
        while end > start:
            piece = word[start:end]
            if start > 0:
                piece = vocab.continuation_prefix + piece
            piece_id = vocab.index.get(piece)
            if piece_id is not None:
                match_id = piece_id
                break
            end -= 1
        if match_id is None:
            return None
        pieces.append(match_id)
        start = end
    return pieces


def tokenize(
    vocab: Vocabulary,
    text: PreprocessedText,
    max_seq_len: int = 128,
    source_id: int | None = None,
) -> TokenSequence:
    """Tokenize an identifier-split comment into a capped id sequence.

    The result is CLS + word pieces + SEP; when the pieces overflow, they
    are cut so CLS and SEP survive and ``truncated`` is set.
    """
    if max_seq_len < 2:
        raise ValueError(f"max_seq_len must be >= 2, got {max_seq_len}")
    piece_ids: list[int] = []
    for word in segment_words(text.text):
        pieces = _word_piece_ids(vocab, word)
        if pieces is None:
            piece_ids.append(vocab.unk_id)
        else:
            piece_ids.extend(pieces)
    truncated = len(piece_ids) + 2 > max_seq_len
    if truncated:
        piece_ids = piece_ids[: max_seq_len - 2]
    ids = (vocab.cls_id, *piece_ids, vocab.sep_id)
    return TokenSequence(ids=ids, truncated=truncated, source_id=source_id)


def unk_count(vocab: Vocabulary, seq: TokenSequence) -> int:
    return sum(1 for i in seq.ids if i == vocab.unk_id)
