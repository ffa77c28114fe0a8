"""Evaluation plumbing: stratified folds, hold-one-out splits, and metrics.

Fold plans deal the two label strata round-robin (one continuing deal index
across strata), which keeps every fold's minority count within 1 of the
proportional share and every fold size within 1 of n_total/k. Splits and
metrics are pure and deterministic; nothing here rounds until rendering.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

from .augment import seeded_rng
from .corpus import CorpusCollection, Label, ProjectDataset
from .errors import DataError

_FOLD_STREAM = 3


@dataclass(frozen=True)
class FoldPlan:
    """A k-way partition of one project's comment ids."""

    k: int
    folds: tuple[tuple[int, ...], ...]
    seed: int


@dataclass(frozen=True)
class MtoSplit:
    """Hold-one-out split: train on every project except ``test_project``."""

    test_project: str
    train_projects: tuple[str, ...]


@dataclass(frozen=True)
class MetricResult:
    """Confusion counts and derived scores; SATD is the positive class."""

    tp: int
    fp: int
    fn: int
    tn: int
    precision: float
    recall: float
    f1: float

    @classmethod
    def from_counts(cls, tp: int, fp: int, fn: int, tn: int) -> "MetricResult":
        precision = tp / (tp + fp) if tp + fp else 0.0
        recall = tp / (tp + fn) if tp + fn else 0.0
        f1 = (
            2 * precision * recall / (precision + recall)
            if precision + recall
            else 0.0
        )
        return cls(tp=tp, fp=fp, fn=fn, tn=tn, precision=precision, recall=recall, f1=f1)


def stratified_kfold(dataset: ProjectDataset, k: int = 10, *, seed: int) -> FoldPlan:
    """Stratified k-fold partition of a project's comment ids.

    SATD and non-SATD ids are shuffled independently (seeded) and dealt
    round-robin with a single continuing deal index, so per-fold class
    counts and fold sizes stay within 1 of their proportional shares.
    """
    if k < 2:
        raise ValueError(f"k must be >= 2, got {k}")
    if dataset.n_total < k:
        raise DataError(
            f"{dataset.project}: n_total={dataset.n_total} is smaller than k={k}"
        )
    satd_ids = [c.id for c in dataset.comments if c.label is Label.SATD]
    non_ids = [c.id for c in dataset.comments if c.label is not Label.SATD]
    satd_order = seeded_rng(seed, _FOLD_STREAM, 0).permutation(len(satd_ids))
    non_order = seeded_rng(seed, _FOLD_STREAM, 1).permutation(len(non_ids))
    folds: list[list[int]] = [[] for _ in range(k)]
    deal = 0
    for i in satd_order:
        folds[deal % k].append(satd_ids[i])
        deal += 1
    for i in non_order:
        folds[deal % k].append(non_ids[i])
        deal += 1
    plan = FoldPlan(k=k, folds=tuple(tuple(f) for f in folds), seed=seed)
    assigned = [cid for fold in plan.folds for cid in fold]
    if len(assigned) != dataset.n_total or len(set(assigned)) != len(assigned):
        raise RuntimeError("fold plan does not partition the dataset")
    return plan


def mto_splits(collection: CorpusCollection) -> list[MtoSplit]:
    """One hold-one-out split per project, in collection order."""
    if len(collection) < 2:
        raise DataError(
            f"collection {collection.name!r} needs at least 2 projects for "
            f"hold-one-out splits, has {len(collection)}"
        )
    names = collection.project_names
    return [
        MtoSplit(test_project=name, train_projects=tuple(n for n in names if n != name))
        for name in names
    ]


def compute_metrics(predictions: Sequence[Label], truth: Sequence[Label]) -> MetricResult:
    """Confusion counts and precision/recall/F1 over aligned label vectors."""
    if len(predictions) != len(truth):
        raise ValueError(
            f"length mismatch: {len(predictions)} predictions vs {len(truth)} labels"
        )
    if not truth:
        raise ValueError("cannot compute metrics over zero comments")
    tp = fp = fn = tn = 0
    for pred, actual in zip(predictions, truth):
        if pred is Label.SATD:
            if actual is Label.SATD:
                tp += 1
            else:
                fp += 1
        else:
            if actual is Label.SATD:
                fn += 1
            else:
                tn += 1
    return MetricResult.from_counts(tp, fp, fn, tn)


def fold_plan_to_dict(plan: FoldPlan) -> dict:
    return {"k": plan.k, "seed": plan.seed, "folds": [list(f) for f in plan.folds]}


def fold_plan_from_dict(payload: dict) -> FoldPlan:
    return FoldPlan(
        k=int(payload["k"]),
        seed=int(payload["seed"]),
        folds=tuple(tuple(int(i) for i in fold) for fold in payload["folds"]),
    )


def save_fold_plan(plan: FoldPlan, path: str | Path) -> None:
    Path(path).write_text(json.dumps(fold_plan_to_dict(plan), indent=2) + "\n", encoding="utf-8")


def load_fold_plan(path: str | Path) -> FoldPlan:
    return fold_plan_from_dict(json.loads(Path(path).read_text(encoding="utf-8")))
