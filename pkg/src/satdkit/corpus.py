"""Loading and summarizing labeled comment corpora.

A corpus is a set of projects, each a CSV file of annotated source-code
comments. Files use the schema ``project,comment,raw_label`` (UTF-8, quoted
fields). A manifest file maps project names to dataset files, and a label
mapping turns the raw annotation strings into the binary SATD / non-SATD
labels used everywhere else in the package.
"""

from __future__ import annotations

import csv
import logging
from dataclasses import dataclass
from enum import Enum
from pathlib import Path
from typing import Iterator

from .errors import ConfigError, DataError

log = logging.getLogger(__name__)

CSV_HEADER = ("project", "comment", "raw_label")

# The two standard 10-project collections used by the public comment datasets.
DATASET_M_PROJECTS = (
    "ApacheAnt", "ArgoUML", "Columba", "EMF", "Hibernate",
    "JEdit", "JFreeChart", "JMeter", "JRuby", "SQuirrel",
)
DATASET_G_PROJECTS = (
    "Dubbo", "Gradle", "Groovy", "Hive", "Maven",
    "Poi", "SpringFramework", "Storm", "Tomcat", "Zookeeper",
)


class Label(Enum):
    """Binary comment label; SATD is the positive (minority) class."""

    NON_SATD = 0
    SATD = 1

    def to_int(self) -> int:
        return self.value

    @classmethod
    def from_int(cls, value: int) -> "Label":
        return cls(value)


@dataclass(frozen=True)
class Comment:
    """One labeled comment. ``id`` is stable within its project.

    ``origin_id`` is None for comments read from disk; synthetic duplicates
    created by augmentation carry the id of the comment they were derived
    from, so train/test leakage can be audited.
    """

    id: int
    project: str
    text: str
    label: Label
    raw_label: str
    origin_id: int | None = None

    def __post_init__(self) -> None:
        if not self.text.strip():
            raise ValueError("comment text must be non-empty after trimming")
        if not isinstance(self.label, Label):
            raise ValueError(f"label must be a Label, got {self.label!r}")


@dataclass(frozen=True)
class LabelMapping:
    """Ordered exact-match rules from raw annotation strings to binary labels.

    ``default`` applies to any *non-empty* raw label not matched by a rule;
    when it is None, unmatched labels are rejected and ingestion fails.
    """

    rules: tuple[tuple[str, Label], ...]
    default: Label | None = None

    def map(self, raw_label: str) -> Label:
        for pattern, label in self.rules:
            if raw_label == pattern:
                return label
        if self.default is not None and raw_label != "":
            return self.default
        raise DataError(f"unmapped raw label {raw_label!r}")

    @classmethod
    def standard(cls) -> "LabelMapping":
        """Mapping for the public datasets: the explicit 'no debt' annotation
        is negative, every other non-empty annotation counts as SATD."""
        return cls(rules=(("WITHOUT_CLASSIFICATION", Label.NON_SATD),), default=Label.SATD)


def load_label_mapping(path: str | Path) -> LabelMapping:
    """Parse a mapping file of ordered ``pattern -> SATD|NON_SATD`` lines.

    ``#`` starts a comment; the pattern ``*`` sets the default for unmatched
    non-empty labels.
    """
    path = Path(path)
    if not path.exists():
        raise ConfigError(f"label mapping file not found: {path}")
    rules: list[tuple[str, Label]] = []
    default: Label | None = None
    for lineno, raw in enumerate(path.read_text(encoding="utf-8").splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "->" not in line:
            raise ConfigError(f"{path}:{lineno}: expected 'pattern -> SATD|NON_SATD'")
        pattern, _, target = line.partition("->")
        pattern = pattern.strip()
        target = target.strip()
        if target not in ("SATD", "NON_SATD"):
            raise ConfigError(f"{path}:{lineno}: unknown target label {target!r}")
        label = Label.SATD if target == "SATD" else Label.NON_SATD
        if pattern == "*":
            default = label
        else:
            rules.append((pattern, label))
    if not rules and default is None:
        raise ConfigError(f"{path}: mapping file defines no rules")
    return LabelMapping(rules=tuple(rules), default=default)


@dataclass(frozen=True)
class ProjectDataset:
    """All comments of one project, in file order, with class counts."""

    project: str
    comments: tuple[Comment, ...]
    n_total: int
    n_satd: int
    n_rejected: int = 0

    @classmethod
    def from_comments(
        cls, project: str, comments: list[Comment] | tuple[Comment, ...], n_rejected: int = 0
    ) -> "ProjectDataset":
        comments = tuple(comments)
        ids = [c.id for c in comments]
        if len(set(ids)) != len(ids):
            raise ValueError(f"{project}: duplicate comment ids")
        for c in comments:
            if c.project != project:
                raise ValueError(f"comment {c.id} belongs to {c.project!r}, not {project!r}")
        n_satd = sum(1 for c in comments if c.label is Label.SATD)
        return cls(project=project, comments=comments, n_total=len(comments),
                   n_satd=n_satd, n_rejected=n_rejected)

    @property
    def satd_fraction(self) -> float:
        return self.n_satd / self.n_total if self.n_total else 0.0


@dataclass(frozen=True)
class CorpusCollection:
    """A named group of project datasets with unique project names."""

    name: str
    projects: tuple[ProjectDataset, ...]

    def __post_init__(self) -> None:
        names = [p.project for p in self.projects]
        if len(set(names)) != len(names):
            raise ValueError(f"collection {self.name!r} has duplicate project names")

    def __len__(self) -> int:
        return len(self.projects)

    def __iter__(self) -> Iterator[ProjectDataset]:
        return iter(self.projects)

    @property
    def project_names(self) -> tuple[str, ...]:
        return tuple(p.project for p in self.projects)

    def get(self, project: str) -> ProjectDataset:
        for p in self.projects:
            if p.project == project:
                return p
        raise KeyError(project)

    def all_comments(self) -> Iterator[Comment]:
        for p in self.projects:
            yield from p.comments


def load_project(path: str | Path, mapping: LabelMapping, project_name: str) -> ProjectDataset:
    """Load one project's dataset CSV.

    Rows with empty comment text are logged and excluded (not fatal); any
    other malformed row aborts the load with its record number. Comment ids
    are 0-based row indices after rejection filtering.
    """
    path = Path(path)
    if not path.exists():
        raise DataError(f"dataset file not found: {path}")
    comments: list[Comment] = []
    n_rejected = 0
    with path.open(newline="", encoding="utf-8-sig") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header is None:
            raise DataError(f"{path}: no rows")
        if tuple(h.strip() for h in header) != CSV_HEADER:
            raise DataError(
                f"{path}: expected header {','.join(CSV_HEADER)!r}, got {','.join(header)!r}"
            )
        for row_num, row in enumerate(reader, start=2):
            if len(row) != 3:
                raise DataError(f"{path}: row {row_num}: expected 3 fields, got {len(row)}")
            row_project, text, raw_label = row
            if row_project and row_project != project_name:
                raise DataError(
                    f"{path}: row {row_num}: project field {row_project!r} "
                    f"does not match {project_name!r}"
                )
            if not text.strip():
                log.warning("%s: row %d rejected (empty comment text)", path, row_num)
                n_rejected += 1
                continue
            try:
                label = mapping.map(raw_label)
            except DataError as exc:
                raise DataError(f"{path}: row {row_num}: {exc}") from None
            comments.append(
                Comment(id=len(comments), project=project_name, text=text,
                        label=label, raw_label=raw_label)
            )
    if not comments and n_rejected == 0:
        raise DataError(f"{path}: no rows")
    if not comments:
        raise DataError(f"{path}: no usable rows ({n_rejected} rejected)")
    return ProjectDataset.from_comments(project_name, comments, n_rejected=n_rejected)


def parse_manifest(path: str | Path) -> list[tuple[str, Path]]:
    """Read a manifest of ``project_name<TAB>path`` lines (# comments allowed).

    Relative dataset paths are resolved against the manifest's directory.
    """
    path = Path(path)
    if not path.exists():
        raise DataError(f"manifest not found: {path}")
    entries: list[tuple[str, Path]] = []
    for lineno, raw in enumerate(path.read_text(encoding="utf-8").splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split("\t")
        if len(parts) != 2 or not parts[0] or not parts[1]:
            raise DataError(f"{path}:{lineno}: expected 'project_name<TAB>path'")
        name, file_path = parts[0].strip(), Path(parts[1].strip())
        if not file_path.is_absolute():
            file_path = path.parent / file_path
        entries.append((name, file_path))
    return entries


def load_collection(
    manifest: str | Path, mapping: LabelMapping, name: str | None = None
) -> CorpusCollection:
    """Load every project listed in a manifest; fails atomically on any error."""
    manifest = Path(manifest)
    entries = parse_manifest(manifest)
    if not entries:
        raise DataError(f"{manifest}: empty manifest")
    seen: set[str] = set()
    for project_name, _ in entries:
        if project_name in seen:
            raise DataError(f"{manifest}: duplicate project name {project_name!r}")
        seen.add(project_name)
    datasets = []
    for project_name, file_path in entries:
        try:
            datasets.append(load_project(file_path, mapping, project_name))
        except DataError as exc:
            raise DataError(f"project {project_name}: {exc}") from None
    return CorpusCollection(name=name or manifest.stem, projects=tuple(datasets))


@dataclass(frozen=True)
class ProjectStats:
    project: str
    n_total: int
    n_satd: int
    satd_pct: float


@dataclass(frozen=True)
class CollectionStats:
    per_project: tuple[ProjectStats, ...]
    totals: ProjectStats


def corpus_stats(collection: CorpusCollection) -> CollectionStats:
    """Per-project totals, SATD counts, and SATD percentage, plus a totals row.

    Percentages are kept at full precision here; rendering rounds to 2
    decimals.
    """
    if not collection.projects:
        raise DataError("empty collection")
    rows = []
    for ds in collection.projects:
        pct = 100.0 * ds.n_satd / ds.n_total if ds.n_total else 0.0
        rows.append(ProjectStats(ds.project, ds.n_total, ds.n_satd, pct))
    n_total = sum(r.n_total for r in rows)
    n_satd = sum(r.n_satd for r in rows)
    totals = ProjectStats(
        collection.name, n_total, n_satd, 100.0 * n_satd / n_total if n_total else 0.0
    )
    return CollectionStats(per_project=tuple(rows), totals=totals)


def format_stats_table(stats: CollectionStats) -> str:
    """Fixed-width text table with percentages rounded to 2 decimals."""
    rows = [("project", "n_total", "n_satd", "satd_pct")]
    for r in (*stats.per_project, stats.totals):
        rows.append((r.project, str(r.n_total), str(r.n_satd), f"{r.satd_pct:.2f}"))
    widths = [max(len(row[i]) for row in rows) for i in range(4)]
    lines = []
    for i, row in enumerate(rows):
        lines.append("  ".join(cell.ljust(widths[j]) for j, cell in enumerate(row)).rstrip())
        if i == 0 or i == len(rows) - 2:
            lines.append("  ".join("-" * widths[j] for j in range(4)))
    return "\n".join(lines)
