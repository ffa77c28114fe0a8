"""Experiment orchestration: configs, runs, reports, and the export bridge.

A run is described by a flat key=value config (every key overridable from
the command line). The harness builds the evaluation units for the chosen
scenario, applies augmentation to the training side only, trains and scores
the configured classifier per unit, and assembles a report with per-project
aggregates and the collection average (unweighted mean of per-project F1).

Two scenarios:

* intra: per project, one stratified k-fold plan (shared across
  augmentation variants for a fixed seed); train on k-1 folds, evaluate on
  the held-out fold; the per-project F1 is the mean of the fold F1 values.
* cross: per project, train on the union of all other projects' comments
  and evaluate on the held-out project.

External trainers plug in through ``export_batches`` (the exact seeded batch
stream plus split definitions) and ``import_predictions`` (per-comment
scores), sharing the metrics path with the in-process classifiers.

Everything derived from the config (including all randomness) is
reproducible: the same config yields byte-identical report JSON. Wall-clock
timestamps therefore go to the run log, never into the report.
"""

from __future__ import annotations

import hashlib
import json
import logging
import os
from dataclasses import dataclass, fields
from pathlib import Path
from typing import Callable, Iterable, Iterator

from .augment import (
    Batch,
    SamplerConfig,
    dup_augment,
    fmr_batches,
    plain_batches,
    write_batches_jsonl,
)
from .classifier import (
    Classifier,
    LinearClassifier,
    LinearHyper,
    MatClassifier,
)
from .corpus import (
    Comment,
    CorpusCollection,
    Label,
    LabelMapping,
    ProjectDataset,
    load_collection,
    load_label_mapping,
)
from .errors import ConfigError, DataError, RunError, SatdkitError
from .evalkit import (
    MetricResult,
    compute_metrics,
    fold_plan_to_dict,
    mto_splits,
    stratified_kfold,
)
from .lexicon import FUZZY, STRICT, TriggerLexicon, dup_lexicon, load_lexicon, mat_lexicon
from .preprocess import split_identifiers
from .vocab import (
    Vocabulary,
    apply_denylist,
    augment_vocabulary,
    char_base_vocabulary,
    discover_candidate_tokens,
    load_base_vocabulary,
)

log = logging.getLogger(__name__)

SCENARIOS = ("intra", "cross")
AUGMENTATIONS = ("none", "fmr", "dup_fmr")
CLASSIFIERS = ("linear", "mat_strict", "mat_fuzzy", "external")
VOCAB_SCOPES = ("train", "all")
DUP_SCOPES = ("triggered", "all")

REPORT_FORMATS = ("csv", "markdown")


# ---------------------------------------------------------------------------
# Configuration
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ExperimentConfig:
    manifest: str | None = None
    scenario: str = "intra"
    collection_name: str | None = None
    projects: tuple[str, ...] | None = None
    augmentation: str = "none"
    classifier: str = "linear"
    k: int = 10
    seed: int = 0
    batch_size: int = 32
    trigger_prob: float = 0.10
    target_ratio: float = 3.0
    epochs: int = 5
    learning_rate: float = 0.1
    l2: float = 1e-4
    threshold: float = 0.5
    max_seq_len: int = 128
    dup_scope: str = "triggered"
    vocab_scope: str = "train"
    vocab_threshold: float = 0.25
    vocab_base: str | None = None
    vocab_denylist: str | None = None
    mat_lexicon: str | None = None
    dup_lexicon: str | None = None
    label_mapping: str | None = None
    outdir: str = "runs"
    export_path: str | None = None
    predictions_path: str | None = None

    def validate(self) -> None:
        if not self.manifest:
            raise ConfigError("manifest is required")
        _require_choice("scenario", self.scenario, SCENARIOS)
        _require_choice("augmentation", self.augmentation, AUGMENTATIONS)
        _require_choice("classifier", self.classifier, CLASSIFIERS)
        _require_choice("vocab_scope", self.vocab_scope, VOCAB_SCOPES)
        _require_choice("dup_scope", self.dup_scope, DUP_SCOPES)
        if self.k < 2:
            raise ConfigError(f"k must be >= 2, got {self.k}")
        if self.batch_size < 2:
            raise ConfigError(f"batch_size must be >= 2, got {self.batch_size}")
        if not 0.0 <= self.trigger_prob <= 1.0:
            raise ConfigError(f"trigger_prob must be in [0, 1], got {self.trigger_prob}")
        if self.target_ratio < 1.0:
            raise ConfigError(f"target_ratio must be >= 1, got {self.target_ratio}")
        if self.epochs < 0:
            raise ConfigError(f"epochs must be >= 0, got {self.epochs}")
        if self.learning_rate < 0:
            raise ConfigError(f"learning_rate must be >= 0, got {self.learning_rate}")
        if self.l2 < 0:
            raise ConfigError(f"l2 must be >= 0, got {self.l2}")
        if not 0.0 <= self.threshold <= 1.0:
            raise ConfigError(f"threshold must be in [0, 1], got {self.threshold}")
        if self.max_seq_len < 2:
            raise ConfigError(f"max_seq_len must be >= 2, got {self.max_seq_len}")
        if not 0.0 <= self.vocab_threshold < 1.0:
            raise ConfigError(
                f"vocab_threshold must be in [0, 1), got {self.vocab_threshold}"
            )
        if self.classifier == "external" and not (self.export_path and self.predictions_path):
            raise ConfigError(
                "classifier=external requires export_path and predictions_path"
            )

    def digest_fields(self) -> dict:
        """Everything that defines the experiment (the output dir does not)."""
        payload = {}
        for f in fields(self):
            if f.name == "outdir":
                continue
            value = getattr(self, f.name)
            payload[f.name] = list(value) if isinstance(value, tuple) else value
        return payload

    def digest(self) -> str:
        canonical = json.dumps(self.digest_fields(), sort_keys=True)
        return hashlib.sha256(canonical.encode("utf-8")).hexdigest()[:12]


def _require_choice(name: str, value: str, choices: tuple[str, ...]) -> None:
    if value not in choices:
        raise ConfigError(f"{name} must be one of {'|'.join(choices)}, got {value!r}")


def _parse_bool_none(raw: str) -> str | None:
    return None if raw.lower() in ("", "none") else raw


def _parse_projects(raw: str) -> tuple[str, ...] | None:
    if raw.lower() in ("", "none"):
        return None
    return tuple(p.strip() for p in raw.split(",") if p.strip())


_FIELD_PARSERS: dict[str, Callable[[str], object]] = {
    "manifest": _parse_bool_none,
    "scenario": str,
    "collection_name": _parse_bool_none,
    "projects": _parse_projects,
    "augmentation": str,
    "classifier": str,
    "k": int,
    "seed": int,
    "batch_size": int,
    "trigger_prob": float,
    "target_ratio": float,
    "epochs": int,
    "learning_rate": float,
    "l2": float,
    "threshold": float,
    "max_seq_len": int,
    "dup_scope": str,
    "vocab_scope": str,
    "vocab_threshold": float,
    "vocab_base": _parse_bool_none,
    "vocab_denylist": _parse_bool_none,
    "mat_lexicon": _parse_bool_none,
    "dup_lexicon": _parse_bool_none,
    "label_mapping": _parse_bool_none,
    "outdir": str,
    "export_path": _parse_bool_none,
    "predictions_path": _parse_bool_none,
}

CONFIG_KEYS = tuple(_FIELD_PARSERS)


def parse_config_file(path: str | Path) -> dict[str, str]:
    """Read a flat ``key = value`` config file (# comments allowed)."""
    path = Path(path)
    if not path.exists():
        raise ConfigError(f"config file not found: {path}")
    raw: dict[str, str] = {}
    for lineno, line in enumerate(path.read_text(encoding="utf-8").splitlines(), start=1):
        stripped = line.split("#", 1)[0].strip()
        if not stripped:
            continue
        if "=" not in stripped:
            raise ConfigError(f"{path}:{lineno}: expected 'key = value'")
        key, _, value = stripped.partition("=")
        key = key.strip()
        if key not in _FIELD_PARSERS:
            raise ConfigError(f"{path}:{lineno}: unknown config key {key!r}")
        raw[key] = value.strip()
    return raw


def build_config(
    config_file: str | Path | None = None, overrides: dict[str, str] | None = None
) -> ExperimentConfig:
    """Merge file values and string overrides into a validated config."""
    raw = parse_config_file(config_file) if config_file else {}
    for key, value in (overrides or {}).items():
        if key not in _FIELD_PARSERS:
            raise ConfigError(f"unknown config key {key!r}")
        raw[key] = value
    kwargs: dict[str, object] = {}
    for key, value in raw.items():
        try:
            kwargs[key] = _FIELD_PARSERS[key](value)
        except ValueError as exc:
            raise ConfigError(f"invalid value for {key!r}: {value!r} ({exc})") from None
    config = ExperimentConfig(**kwargs)  # type: ignore[arg-type]
    config.validate()
    return config


# ---------------------------------------------------------------------------
# Report model
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class UnitResult:
    """One evaluation unit: a fold (intra) or a held-out project (cross)."""

    unit: str
    metrics: MetricResult | None
    error: str | None = None


@dataclass(frozen=True)
class ProjectResult:
    project: str
    units: tuple[UnitResult, ...]
    precision: float | None
    recall: float | None
    f1: float | None
    note: str | None = None


@dataclass(frozen=True)
class EvalReport:
    scenario: str
    digest: str
    seed: int
    config: dict
    projects: tuple[ProjectResult, ...]
    average_precision: float | None
    average_recall: float | None
    average_f1: float | None


def _metrics_dict(m: MetricResult | None) -> dict | None:
    if m is None:
        return None
    return {
        "tp": m.tp, "fp": m.fp, "fn": m.fn, "tn": m.tn,
        "precision": m.precision, "recall": m.recall, "f1": m.f1,
    }


def report_to_dict(report: EvalReport) -> dict:
    return {
        "format": "eval-report@1",
        "scenario": report.scenario,
        "digest": report.digest,
        "seed": report.seed,
        "config": report.config,
        "projects": [
            {
                "project": p.project,
                "precision": p.precision,
                "recall": p.recall,
                "f1": p.f1,
                "note": p.note,
                "units": [
                    {"unit": u.unit, "error": u.error, "metrics": _metrics_dict(u.metrics)}
                    for u in p.units
                ],
            }
            for p in report.projects
        ],
        "average": {
            "precision": report.average_precision,
            "recall": report.average_recall,
            "f1": report.average_f1,
        },
    }


def report_from_dict(payload: dict) -> EvalReport:
    if payload.get("format") != "eval-report@1":
        raise DataError(f"unsupported report format {payload.get('format')!r}")
    projects = []
    for p in payload["projects"]:
        units = []
        for u in p["units"]:
            m = u["metrics"]
            metrics = (
                MetricResult(
                    tp=m["tp"], fp=m["fp"], fn=m["fn"], tn=m["tn"],
                    precision=m["precision"], recall=m["recall"], f1=m["f1"],
                )
                if m is not None
                else None
            )
            units.append(UnitResult(unit=u["unit"], metrics=metrics, error=u["error"]))
        projects.append(
            ProjectResult(
                project=p["project"], units=tuple(units), precision=p["precision"],
                recall=p["recall"], f1=p["f1"], note=p.get("note"),
            )
        )
    avg = payload["average"]
    return EvalReport(
        scenario=payload["scenario"], digest=payload["digest"], seed=payload["seed"],
        config=payload["config"], projects=tuple(projects),
        average_precision=avg["precision"], average_recall=avg["recall"],
        average_f1=avg["f1"],
    )


def report_to_json(report: EvalReport) -> str:
    """Canonical JSON for machine diffing; identical configs yield identical
    bytes (timestamps live in the run log, not here)."""
    return json.dumps(report_to_dict(report), sort_keys=True, indent=2) + "\n"


def _fmt3(value: float | None) -> str:
    return "n/a" if value is None else f"{value:.3f}"


def render_csv(report: EvalReport) -> str:
    if not report.projects:
        raise RunError("nothing to render")
    lines = ["project,precision,recall,f1"]
    for p in report.projects:
        lines.append(f"{p.project},{_fmt3(p.precision)},{_fmt3(p.recall)},{_fmt3(p.f1)}")
    lines.append(
        "Average,"
        f"{_fmt3(report.average_precision)},{_fmt3(report.average_recall)},"
        f"{_fmt3(report.average_f1)}"
    )
    return "\n".join(lines) + "\n"


def render_markdown(report: EvalReport) -> str:
    if not report.projects:
        raise RunError("nothing to render")
    title = "Intra-project F1 (mean over folds)" if report.scenario == "intra" else \
        "Cross-project F1 (19-to-1 hold-one-out)"
    lines = [
        f"# {title}",
        "",
        f"Classifier: `{report.config.get('classifier')}`  ",
        f"Augmentation: `{report.config.get('augmentation')}`  ",
        f"Seed: {report.seed}  ",
        f"Config digest: `{report.digest}`",
        "",
        "| Project | Precision | Recall | F1 |",
        "|---|---|---|---|",
    ]
    for p in report.projects:
        marker = " *" if p.note else ""
        lines.append(
            f"| {p.project}{marker} | {_fmt3(p.precision)} | {_fmt3(p.recall)} "
            f"| {_fmt3(p.f1)} |"
        )
    lines.append(
        f"| **Average** | {_fmt3(report.average_precision)} "
        f"| {_fmt3(report.average_recall)} | {_fmt3(report.average_f1)} |"
    )
    notes = [f"- `{p.project}`: {p.note}" for p in report.projects if p.note]
    if notes:
        lines.extend(["", "Notes:", *notes])
    return "\n".join(lines) + "\n"


def render_report(report: EvalReport, fmt: str, path: str | Path) -> Path:
    """Write the report in the requested format; returns the path written."""
    if fmt == "csv":
        text = render_csv(report)
    elif fmt == "markdown":
        text = render_markdown(report)
    else:
        raise ConfigError(f"format must be one of {'|'.join(REPORT_FORMATS)}, got {fmt!r}")
    path = Path(path)
    _atomic_write(path, text)
    return path


def _atomic_write(path: Path, text: str) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    tmp = path.with_name(path.name + ".tmp")
    tmp.write_text(text, encoding="utf-8")
    os.replace(tmp, path)


# ---------------------------------------------------------------------------
# Units: train/test material per evaluation unit
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class UnitSpec:
    """Everything needed to train and evaluate one unit."""

    project: str
    unit: str
    train: tuple[Comment, ...]
    test: tuple[Comment, ...]
    sampler_seed: int


def derive_seed(seed: int, *parts: object) -> int:
    """Stable 63-bit per-unit seed derived from the experiment seed."""
    material = "satdkit:" + ":".join([str(seed), *map(str, parts)])
    digest = hashlib.sha256(material.encode("utf-8")).digest()
    return int.from_bytes(digest[:8], "big") & 0x7FFFFFFFFFFFFFFF


def resolve_label_mapping(config: ExperimentConfig) -> LabelMapping:
    if config.label_mapping:
        return load_label_mapping(config.label_mapping)
    return LabelMapping.standard()


def load_config_collection(config: ExperimentConfig) -> CorpusCollection:
    mapping = resolve_label_mapping(config)
    return load_collection(config.manifest, mapping, name=config.collection_name)


def _select_projects(collection: CorpusCollection, names: tuple[str, ...] | None) -> CorpusCollection:
    if names is None:
        return collection
    available = set(collection.project_names)
    missing = [n for n in names if n not in available]
    if missing:
        raise ConfigError(f"projects not in collection: {', '.join(missing)}")
    picked = tuple(ds for ds in collection.projects if ds.project in set(names))
    return CorpusCollection(name=collection.name, projects=picked)


def build_unit_specs(
    config: ExperimentConfig, collection: CorpusCollection
) -> tuple[list[UnitSpec], dict]:
    """Evaluation units plus the splits payload written as folds.json.

    Fold plans depend only on (dataset, k, seed), so every augmentation and
    classifier variant of a config sees identical splits.
    """
    selected = _select_projects(collection, config.projects)
    specs: list[UnitSpec] = []
    if config.scenario == "intra":
        plans = {}
        for ds in selected.projects:
            plan = stratified_kfold(ds, k=config.k, seed=config.seed)
            plans[ds.project] = fold_plan_to_dict(plan)
            for fold_index, fold in enumerate(plan.folds):
                test_ids = set(fold)
                train = tuple(c for c in ds.comments if c.id not in test_ids)
                test = tuple(c for c in ds.comments if c.id in test_ids)
                specs.append(
                    UnitSpec(
                        project=ds.project,
                        unit=f"fold{fold_index}",
                        train=train,
                        test=test,
                        sampler_seed=derive_seed(config.seed, "intra", ds.project, fold_index),
                    )
                )
        payload = {"scenario": "intra", "k": config.k, "seed": config.seed, "projects": plans}
        return specs, payload
    splits = mto_splits(selected)
    for split in splits:
        train: list[Comment] = []
        for name in split.train_projects:
            train.extend(selected.get(name).comments)
        test = selected.get(split.test_project).comments
        specs.append(
            UnitSpec(
                project=split.test_project,
                unit=split.test_project,
                train=tuple(train),
                test=tuple(test),
                sampler_seed=derive_seed(config.seed, "cross", split.test_project),
            )
        )
    payload = {
        "scenario": "cross",
        "seed": config.seed,
        "splits": [
            {"test_project": s.test_project, "train_projects": list(s.train_projects)}
            for s in splits
        ],
    }
    return specs, payload


def _resolve_dup_lexicon(config: ExperimentConfig) -> TriggerLexicon:
    if config.dup_lexicon:
        return load_lexicon(config.dup_lexicon, mode=STRICT)
    return dup_lexicon()


def _resolve_mat_lexicon(config: ExperimentConfig, mode: str) -> TriggerLexicon:
    if config.mat_lexicon:
        return load_lexicon(config.mat_lexicon, mode=mode)
    return mat_lexicon(mode=mode)


def _sampler_config(config: ExperimentConfig, unit_seed: int) -> SamplerConfig:
    return SamplerConfig(
        seed=unit_seed,
        batch_size=config.batch_size,
        trigger_prob=config.trigger_prob,
        target_ratio=config.target_ratio,
        epochs=config.epochs,
    )


def training_stream(
    config: ExperimentConfig, spec: UnitSpec
) -> tuple[Iterator[Batch], list[Comment]]:
    """The unit's seeded training batches and its (augmented) train list.

    With dup_fmr the minority pool contains originals plus duplicates, so
    forced re-sampling draws from both.
    """
    sampler = _sampler_config(config, spec.sampler_seed)
    train = list(spec.train)
    if config.augmentation == "none":
        return plain_batches(train, sampler), train
    if config.augmentation == "fmr":
        pool = [c for c in train if c.label is Label.SATD]
        return fmr_batches(train, pool, sampler), train
    # duplicate ids must clear the held-out comments' id space too
    id_floor: dict[str, int] = {}
    for c in (*spec.train, *spec.test):
        id_floor[c.project] = max(id_floor.get(c.project, 0), c.id + 1)
    augmented, n_dup = dup_augment(
        train, _resolve_dup_lexicon(config), scope=config.dup_scope, id_floor=id_floor
    )
    log.debug("%s/%s: %d duplicates appended", spec.project, spec.unit, n_dup)
    pool = [c for c in augmented if c.label is Label.SATD]
    return fmr_batches(augmented, pool, sampler), augmented


def build_vocabulary(
    config: ExperimentConfig,
    collection: CorpusCollection,
    train: Iterable[Comment] | None = None,
) -> Vocabulary:
    """Base vocabulary plus discovered domain tokens minus the denylist.

    vocab_scope=train discovers tokens from the given training comments
    only (leak-free); vocab_scope=all uses the whole collection, i.e. one
    universal tokenizer shared by every unit, including its test data.
    """
    if config.vocab_base:
        base = load_base_vocabulary(config.vocab_base)
    else:
        base = char_base_vocabulary()
    if config.vocab_scope == "all" or train is None:
        discovery = collection
    else:
        by_project: dict[str, list[Comment]] = {}
        for c in train:
            by_project.setdefault(c.project, []).append(c)
        discovery = CorpusCollection(
            name="train-scope",
            projects=tuple(
                ProjectDataset.from_comments(name, comments)
                for name, comments in by_project.items()
            ),
        )
    candidates = discover_candidate_tokens(discovery, base, threshold=config.vocab_threshold)
    if config.vocab_denylist:
        candidates = apply_denylist(candidates, config.vocab_denylist)
    return augment_vocabulary(base, candidates)


def _build_classifier(config: ExperimentConfig) -> Classifier:
    if config.classifier == "linear":
        hyper = LinearHyper(
            learning_rate=config.learning_rate, epochs=config.epochs, l2=config.l2
        )
        return LinearClassifier(
            hyper=hyper, max_seq_len=config.max_seq_len, threshold=config.threshold
        )
    if config.classifier == "mat_strict":
        return MatClassifier(_resolve_mat_lexicon(config, STRICT), threshold=config.threshold)
    if config.classifier == "mat_fuzzy":
        return MatClassifier(_resolve_mat_lexicon(config, FUZZY), threshold=config.threshold)
    raise ConfigError(f"no in-process classifier for {config.classifier!r}")


def _assert_no_leakage(train: Iterable[Comment], test: Iterable[Comment]) -> None:
    train_keys = {(c.project, c.id) for c in train}
    overlap = [(c.project, c.id) for c in test if (c.project, c.id) in train_keys]
    if overlap:
        raise RunError(f"train/test leakage detected: {overlap[:5]}")


def _evaluate_unit(
    config: ExperimentConfig,
    collection: CorpusCollection,
    spec: UnitSpec,
    shared_vocab: Vocabulary | None,
    predictions: dict[tuple[str, int], float] | None,
) -> MetricResult:
    truth = [c.label for c in spec.test]
    if config.classifier == "external":
        assert predictions is not None
        preds = [
            Label.SATD
            if predictions[(c.project, c.id)] >= config.threshold
            else Label.NON_SATD
            for c in spec.test
        ]
        return compute_metrics(preds, truth)
    batches, train = training_stream(config, spec)
    _assert_no_leakage(train, spec.test)
    model = _build_classifier(config)
    vocab = None
    if isinstance(model, LinearClassifier):
        vocab = shared_vocab or build_vocabulary(config, collection, spec.train)
    model.fit(batches, vocab)
    preds = [model.classify(split_identifiers(c.text)) for c in spec.test]
    return compute_metrics(preds, truth)


def _mean(values: list[float]) -> float | None:
    return sum(values) / len(values) if values else None


def _aggregate_project(
    project: str, units: list[UnitResult], note: str | None
) -> ProjectResult:
    ok = [u.metrics for u in units if u.metrics is not None]
    return ProjectResult(
        project=project,
        units=tuple(units),
        precision=_mean([m.precision for m in ok]),
        recall=_mean([m.recall for m in ok]),
        f1=_mean([m.f1 for m in ok]),
        note=note,
    )


def run_experiment(
    config: ExperimentConfig, collection: CorpusCollection | None = None
) -> EvalReport:
    """Run the configured scenario over every unit and assemble the report.

    A unit that fails is recorded with an error marker and excluded from the
    aggregates; the rest of the grid still runs.
    """
    config.validate()
    if collection is None:
        collection = load_config_collection(config)
    specs, _ = build_unit_specs(config, collection)
    predictions = None
    if config.classifier == "external":
        expected = [(c.project, c.id) for spec in specs for c in spec.test]
        predictions = import_predictions(config.predictions_path, expected=expected)
    shared_vocab = None
    if config.classifier == "linear" and config.vocab_scope == "all":
        shared_vocab = build_vocabulary(config, collection)
    selected = _select_projects(collection, config.projects)
    by_project: dict[str, list[UnitResult]] = {ds.project: [] for ds in selected.projects}
    for spec in specs:
        try:
            metrics = _evaluate_unit(config, collection, spec, shared_vocab, predictions)
            result = UnitResult(unit=spec.unit, metrics=metrics)
        except SatdkitError as exc:
            log.warning("%s/%s failed: %s", spec.project, spec.unit, exc)
            result = UnitResult(unit=spec.unit, metrics=None, error=str(exc))
        by_project[spec.project].append(result)
        if result.metrics is not None:
            log.info("%s/%s: f1=%.3f", spec.project, spec.unit, result.metrics.f1)
    project_results = []
    for ds in selected.projects:
        note = "project has no SATD comments" if ds.n_satd == 0 else None
        project_results.append(_aggregate_project(ds.project, by_project[ds.project], note))
    scored = [p for p in project_results if p.f1 is not None]
    return EvalReport(
        scenario=config.scenario,
        digest=config.digest(),
        seed=config.seed,
        config=config.digest_fields(),
        projects=tuple(project_results),
        average_precision=_mean([p.precision for p in scored]),
        average_recall=_mean([p.recall for p in scored]),
        average_f1=_mean([p.f1 for p in scored]),
    )


def run_intra(
    config: ExperimentConfig, collection: CorpusCollection | None = None
) -> EvalReport:
    if config.scenario != "intra":
        raise ConfigError(f"run_intra requires scenario=intra, got {config.scenario!r}")
    return run_experiment(config, collection)


def run_cross(
    config: ExperimentConfig, collection: CorpusCollection | None = None
) -> EvalReport:
    if config.scenario != "cross":
        raise ConfigError(f"run_cross requires scenario=cross, got {config.scenario!r}")
    return run_experiment(config, collection)


# ---------------------------------------------------------------------------
# External-trainer bridge
# ---------------------------------------------------------------------------

def export_batches(
    config: ExperimentConfig,
    path: str | Path | None = None,
    collection: CorpusCollection | None = None,
) -> Path:
    """Write every unit's seeded post-augmentation batch stream as JSONL,
    plus the split definitions an external trainer must honor.

    Layout: ``export.json`` (unit manifest with test ids and pool sizes),
    ``folds.json``, and one ``batches/...jsonl`` file per unit.
    """
    config.validate()
    out = Path(path) if path is not None else Path(config.export_path or "")
    if str(out) in ("", "."):
        raise ConfigError("export path is required")
    if collection is None:
        collection = load_config_collection(config)
    specs, folds_payload = build_unit_specs(config, collection)
    out.mkdir(parents=True, exist_ok=True)
    (out / "batches").mkdir(exist_ok=True)
    units_meta = []
    for spec in specs:
        if config.scenario == "intra":
            unit_dir = out / "batches" / spec.project
            unit_dir.mkdir(parents=True, exist_ok=True)
            batch_path = unit_dir / f"{spec.unit}.jsonl"
        else:
            batch_path = out / "batches" / f"{spec.project}.jsonl"
        stream, train = training_stream(config, spec)
        n_lines = write_batches_jsonl(stream, batch_path)
        units_meta.append(
            {
                "project": spec.project,
                "unit": spec.unit,
                "batches": str(batch_path.relative_to(out)),
                "n_batches": n_lines,
                "n_train": len(train),
                "n_satd_pool": sum(1 for c in train if c.label is Label.SATD),
                "test": [[c.project, c.id] for c in spec.test],
            }
        )
    manifest = {
        "format": "batch-export@1",
        "scenario": config.scenario,
        "digest": config.digest(),
        "seed": config.seed,
        "units": units_meta,
    }
    _atomic_write(out / "export.json", json.dumps(manifest, sort_keys=True, indent=2) + "\n")
    _atomic_write(out / "folds.json", json.dumps(folds_payload, sort_keys=True, indent=2) + "\n")
    return out


def import_predictions(
    path: str | Path,
    expected: Iterable[tuple[str, int]] | None = None,
) -> dict[tuple[str, int], float]:
    """Read scores keyed by (project, comment id) from a JSONL file.

    Each line is ``{"project": p, "id": i, "score": s}`` with s in [0, 1].
    When ``expected`` pairs are given, the map must cover all of them; any
    missing pairs are listed in the error.
    """
    path = Path(path)
    if not path.exists():
        raise DataError(f"predictions file not found: {path}")
    predictions: dict[tuple[str, int], float] = {}
    with path.open(encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            try:
                record = json.loads(line)
            except json.JSONDecodeError as exc:
                raise DataError(f"{path}: line {lineno}: invalid JSON ({exc})") from None
            if not isinstance(record, dict) or not {"project", "id", "score"} <= record.keys():
                raise DataError(
                    f"{path}: line {lineno}: expected keys project, id, score"
                )
            try:
                key = (str(record["project"]), int(record["id"]))
                score = float(record["score"])
            except (TypeError, ValueError) as exc:
                raise DataError(f"{path}: line {lineno}: {exc}") from None
            if not 0.0 <= score <= 1.0:
                raise DataError(
                    f"{path}: line {lineno}: score {score} outside [0, 1]"
                )
            if key in predictions:
                raise DataError(
                    f"{path}: line {lineno}: duplicate prediction for {key}"
                )
            predictions[key] = score
    if expected is not None:
        missing = [pair for pair in expected if pair not in predictions]
        if missing:
            shown = ", ".join(f"{p}:{i}" for p, i in missing[:20])
            more = f" (and {len(missing) - 20} more)" if len(missing) > 20 else ""
            raise DataError(f"{path}: missing predictions for {shown}{more}")
    return predictions


# ---------------------------------------------------------------------------
# Full run with persisted outputs
# ---------------------------------------------------------------------------

def execute_run(config: ExperimentConfig) -> Path:
    """Run the experiment and persist all artifacts.

    Writes ``<outdir>/<digest>/{report.json,report.csv,report.md,folds.json,
    log.txt}``; report files are atomic and deterministic, wall-clock detail
    goes to log.txt only.
    """
    config.validate()
    run_dir = Path(config.outdir) / config.digest()
    run_dir.mkdir(parents=True, exist_ok=True)
    handler = logging.FileHandler(run_dir / "log.txt", mode="w", encoding="utf-8")
    handler.setFormatter(logging.Formatter("%(asctime)s %(levelname)s %(name)s: %(message)s"))
    pkg_logger = logging.getLogger("satdkit")
    pkg_logger.addHandler(handler)
    previous_level = pkg_logger.level
    if pkg_logger.level > logging.INFO or pkg_logger.level == logging.NOTSET:
        pkg_logger.setLevel(logging.INFO)
    try:
        log.info("run starting: digest=%s scenario=%s", config.digest(), config.scenario)
        collection = load_config_collection(config)
        report = run_experiment(config, collection)
        _, folds_payload = build_unit_specs(config, collection)
        _atomic_write(run_dir / "report.json", report_to_json(report))
        _atomic_write(run_dir / "report.csv", render_csv(report))
        _atomic_write(run_dir / "report.md", render_markdown(report))
        _atomic_write(
            run_dir / "folds.json", json.dumps(folds_payload, sort_keys=True, indent=2) + "\n"
        )
        log.info("run finished: outputs in %s", run_dir)
    finally:
        pkg_logger.removeHandler(handler)
        handler.close()
        pkg_logger.setLevel(previous_level)
    return run_dir
