"""Seeded training-batch streams and minority augmentation.

Three ways to feed a trainer:

* plain shuffled batches (the untouched baseline),
* forced minority re-sampling: a seeded coin marks a fraction of batches for
  adjustment, and in adjusted batches majority items are replaced by draws
  from the minority pool until the majority:minority ratio is at most a
  target value,
* duplication: every minority comment containing a trigger word gains one
  extra copy with the triggers removed, after which re-sampling applies on
  top.

All randomness is derived from (seed, epoch, batch_index), so any batch can
be re-generated independently and streams are fully reproducible.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, replace
from pathlib import Path
from typing import Iterable, Iterator

import numpy as np

from .corpus import Comment, Label
from .errors import DataError
from .lexicon import STRICT, TriggerLexicon, find_triggers, is_marker_only, remove_triggers

# Stream namespaces keep the shuffle, coin/draw, and fold RNGs independent
# even under one experiment seed.
_SHUFFLE_STREAM = 1
_BATCH_STREAM = 2

DUP_SCOPE_TRIGGERED = "triggered"
DUP_SCOPE_ALL = "all"


def seeded_rng(seed: int, *key: int) -> np.random.Generator:
    """Deterministic generator for a (seed, namespace, ...) key."""
    return np.random.default_rng([seed & 0xFFFFFFFFFFFFFFFF, *key])


@dataclass(frozen=True)
class SamplerConfig:
    """Batch-stream settings; defaults follow the standard recipe
    (batch 32, 10% of batches adjusted, 3:1 majority cap)."""

    seed: int
    batch_size: int = 32
    trigger_prob: float = 0.10
    target_ratio: float = 3.0
    epochs: int = 1

    def __post_init__(self) -> None:
        if self.batch_size < 2:
            raise ValueError(f"batch_size must be >= 2, got {self.batch_size}")
        if not 0.0 <= self.trigger_prob <= 1.0:
            raise ValueError(f"trigger_prob must be in [0, 1], got {self.trigger_prob}")
        if self.target_ratio < 1.0:
            raise ValueError(f"target_ratio must be >= 1, got {self.target_ratio}")
        if self.epochs < 0:
            raise ValueError(f"epochs must be >= 0, got {self.epochs}")


@dataclass(frozen=True)
class Batch:
    """One training batch of (comment, label) pairs."""

    items: tuple[tuple[Comment, Label], ...]
    adjusted: bool
    epoch: int
    batch_index: int

    def label_counts(self) -> tuple[int, int]:
        """(n_satd, n_non_satd) for this batch."""
        n_satd = sum(1 for _, label in self.items if label is Label.SATD)
        return n_satd, len(self.items) - n_satd


def plain_batches(train: list[Comment], cfg: SamplerConfig) -> Iterator[Batch]:
    """Per epoch: one seeded uniform shuffle, chunked into batches.

    Only the final batch of an epoch may be short. Identical inputs yield
    identical streams.
    """
    if not train:
        raise DataError("empty training set")
    for epoch in range(cfg.epochs):
        order = seeded_rng(cfg.seed, _SHUFFLE_STREAM, epoch).permutation(len(train))
        for batch_index, start in enumerate(range(0, len(train), cfg.batch_size)):
            chunk = order[start : start + cfg.batch_size]
            items = tuple((train[i], train[i].label) for i in chunk)
            yield Batch(items=items, adjusted=False, epoch=epoch, batch_index=batch_index)


def rebalance_items(
    items: tuple[tuple[Comment, Label], ...],
    satd_pool: list[Comment],
    target_ratio: float,
    rng: np.random.Generator,
) -> tuple[tuple[Comment, Label], ...]:
    """Replace majority items until count(non) <= target_ratio * count(satd).

    One replacement at a time: a uniformly chosen majority slot receives a
    uniform draw (with replacement) from the minority pool. Batch size is
    preserved; an already balanced batch comes back unchanged.
    """
    out = list(items)
    non_positions = [i for i, (_, label) in enumerate(out) if label is not Label.SATD]
    n_satd = len(out) - len(non_positions)
    while len(non_positions) > target_ratio * n_satd:
        victim = int(rng.integers(len(non_positions)))
        pos = non_positions.pop(victim)
        drawn = satd_pool[int(rng.integers(len(satd_pool)))]
        out[pos] = (drawn, drawn.label)
        n_satd += 1
    return tuple(out)


def fmr_batches(
    train: list[Comment], satd_pool: list[Comment], cfg: SamplerConfig
) -> Iterator[Batch]:
    """Plain stream with forced minority re-sampling applied per batch.

    An independent seeded coin with probability ``trigger_prob`` decides
    whether a batch is adjusted; unadjusted batches pass through untouched
    and are identical to the plain stream under the same seed.
    """
    if not satd_pool:
        raise DataError("empty SATD pool")
    for c in satd_pool:
        if c.label is not Label.SATD:
            raise DataError(f"SATD pool contains a non-SATD comment (id {c.id})")
    for batch in plain_batches(train, cfg):
        rng = seeded_rng(cfg.seed, _BATCH_STREAM, batch.epoch, batch.batch_index)
        if rng.random() < cfg.trigger_prob:
            items = rebalance_items(batch.items, satd_pool, cfg.target_ratio, rng)
            yield replace(batch, items=items, adjusted=True)
        else:
            yield batch


def dup_augment(
    train: list[Comment],
    lex: TriggerLexicon,
    scope: str = DUP_SCOPE_TRIGGERED,
    id_floor: dict[str, int] | None = None,
) -> tuple[list[Comment], int]:
    """Append trigger-stripped duplicates of minority comments.

    scope="triggered" duplicates only SATD comments containing at least one
    strict trigger span; scope="all" also duplicates trigger-free SATD
    comments verbatim (pure oversampling). Duplicates whose text collapses
    to nothing or to bare comment markers are skipped. Duplicate ids are
    fresh and record the source comment id; ``id_floor`` (per project) lets
    callers reserve the full dataset's id space so duplicates can never
    collide with held-out comments the train list does not contain.

    Returns the augmented list (originals untouched, duplicates appended in
    scan order) and the duplicate count.
    """
    if scope not in (DUP_SCOPE_TRIGGERED, DUP_SCOPE_ALL):
        raise ValueError(f"unknown dup scope {scope!r}")
    strict = lex if lex.mode == STRICT else replace(lex, mode=STRICT)
    next_id: dict[str, int] = {}
    for project, floor in (id_floor or {}).items():
        next_id[project] = floor - 1
    for c in train:
        next_id[c.project] = max(next_id.get(c.project, -1), c.id)
    duplicates: list[Comment] = []
    for c in train:
        if c.label is not Label.SATD:
            continue
        if scope == DUP_SCOPE_TRIGGERED and not find_triggers(strict, c.text):
            continue
        stripped = remove_triggers(lex, c.text)
        if is_marker_only(stripped):
            continue
        next_id[c.project] += 1
        duplicates.append(
            Comment(
                id=next_id[c.project],
                project=c.project,
                text=stripped,
                label=Label.SATD,
                raw_label=c.raw_label,
                origin_id=c.id,
            )
        )
    return list(train) + duplicates, len(duplicates)


def batch_record(batch: Batch) -> dict:
    """JSON-serializable form of a batch for external trainers."""
    return {
        "epoch": batch.epoch,
        "batch": batch.batch_index,
        "adjusted": batch.adjusted,
        "items": [
            {
                "project": comment.project,
                "id": comment.id,
                "text": comment.text,
                "label": label.to_int(),
            }
            for comment, label in batch.items
        ],
    }


def write_batches_jsonl(batches: Iterable[Batch], path: str | Path) -> int:
    """Write one JSON line per batch; returns the number of lines written."""
    count = 0
    with Path(path).open("w", encoding="utf-8") as fh:
        for batch in batches:
            fh.write(json.dumps(batch_record(batch)) + "\n")
            count += 1
    return count
