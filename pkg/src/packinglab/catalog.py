"""Bundled configuration data, with a canonical JSON interchange format.

A catalog entry wraps a Configuration together with its expected Gram
matrix (exact, optional), its known clusters (by row label, optional), and
a free-text source note.  Entries are validated on construction: every row
must have norm -1, a stored Gram must match the computed one cell for cell,
and cluster labels must name actual rows.

The JSON schema is {id, n, d, rows, labels, words, gram, clusters, source},
in that order.  Scalars use the exact-literal grammar of exactnum; `n` is
the ambient dimension (rows carry n+2 coordinates); `d` is the quadratic
form the data came from, when there is one.  The writer is canonical
(UTF-8, LF, two-space indent), so save(load(f)) is byte-identical on
canonical files.  PACKINGLAB_CATALOG overrides the builtin data directory.
"""

import dataclasses
import json
import os
from importlib import resources
from pathlib import Path

from . import coxeter, geometry
from .exactnum import QNum
from .groupwords import Configuration

SCHEMA_FIELDS = (
    "id", "n", "d", "rows", "labels", "words", "gram", "clusters", "source",
)


def _gram_mismatch(rows, stored):
    """First differing cell between the computed and stored Gram, if any."""
    computed = geometry.gram(rows)
    if len(stored) != len(computed):
        return (-1, -1, computed)
    for i, row in enumerate(stored):
        if len(row) != len(computed):
            return (i, -1, computed)
        for j, cell in enumerate(row):
            if computed[i][j] != cell:
                return (i, j, computed)
    return None


@dataclasses.dataclass(frozen=True)
class CatalogEntry:
    id: str
    configuration: Configuration
    gram: tuple | None = None
    clusters: tuple | None = None
    source: str = ""

    def __post_init__(self):
        cfg = self.configuration
        if self.gram is not None:
            stored = tuple(tuple(QNum(c) for c in row) for row in self.gram)
            object.__setattr__(self, "gram", stored)
            bad = _gram_mismatch(cfg.rows, stored)
            if bad is not None:
                i, j, computed = bad
                if j < 0:
                    raise ValueError(
                        "gram matrix shape disagrees with %d rows" % len(cfg.rows)
                    )
                raise ValueError(
                    "gram mismatch at cell (%d, %d): stored %s, computed %s"
                    % (i, j, stored[i][j], computed[i][j])
                )
        if self.clusters is not None:
            known = set(cfg.labels)
            clusters = tuple(tuple(c) for c in self.clusters)
            object.__setattr__(self, "clusters", clusters)
            for c in clusters:
                for label in c:
                    if label not in known:
                        raise ValueError(
                            "cluster %r names unknown row %r" % (c, label)
                        )

    def cluster_indices(self, cluster) -> tuple:
        return tuple(self.configuration.position(label) for label in cluster)


def _parse_rows(doc):
    rows = []
    for i, row in enumerate(doc["rows"]):
        try:
            rows.append(tuple(QNum(c) for c in row))
        except ValueError as err:
            raise ValueError("row %d: %s" % (i, err)) from err
    return tuple(rows)


def from_json(text: str) -> CatalogEntry:
    doc = json.loads(text)
    if not isinstance(doc, dict):
        raise ValueError("catalog entry must be a JSON object")
    missing = [k for k in SCHEMA_FIELDS if k not in doc]
    if missing:
        raise ValueError("missing fields: %s" % ", ".join(missing))
    extra = [k for k in doc if k not in SCHEMA_FIELDS]
    if extra:
        raise ValueError("unknown fields: %s" % ", ".join(sorted(extra)))
    rows = _parse_rows(doc)
    for i, row in enumerate(rows):
        if len(row) != doc["n"] + 2:
            raise ValueError(
                "row %d has %d coordinates; n = %d needs %d"
                % (i, len(row), doc["n"], doc["n"] + 2)
            )
    cfg = Configuration(
        name=doc["id"],
        rows=rows,
        labels=tuple(doc["labels"]),
        form_d=doc["d"],
        defining_words=None if doc["words"] is None else tuple(doc["words"]),
    )
    gram = doc["gram"]
    if gram is not None:
        gram = tuple(tuple(QNum(c) for c in row) for row in gram)
    clusters = doc["clusters"]
    if clusters is not None:
        clusters = tuple(tuple(c) for c in clusters)
    return CatalogEntry(
        id=doc["id"],
        configuration=cfg,
        gram=gram,
        clusters=clusters,
        source=doc["source"],
    )


def load(path) -> CatalogEntry:
    with open(path, encoding="utf-8") as fh:
        return from_json(fh.read())


def to_json(entry: CatalogEntry) -> str:
    cfg = entry.configuration
    doc = {
        "id": entry.id,
        "n": cfg.dim_n,
        "d": cfg.form_d,
        "rows": [[str(c) for c in row] for row in cfg.rows],
        "labels": list(cfg.labels),
        "words": None if cfg.defining_words is None
        else list(cfg.defining_words),
        "gram": None if entry.gram is None
        else [[str(c) for c in row] for row in entry.gram],
        "clusters": None if entry.clusters is None
        else [list(c) for c in entry.clusters],
        "source": entry.source,
    }
    return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"


def save(entry: CatalogEntry, path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(to_json(entry))


def _data_dir():
    override = os.environ.get("PACKINGLAB_CATALOG")
    if override:
        return Path(override)
    return resources.files("packinglab").joinpath("data/catalog")


def list_builtin() -> tuple:
    base = _data_dir()
    try:
        names = [p.name for p in base.iterdir()]
    except (FileNotFoundError, NotADirectoryError):
        return ()
    return tuple(sorted(
        n[:-5] for n in names if n.endswith(".json")
    ))


def get_builtin(entry_id: str) -> CatalogEntry:
    base = _data_dir()
    target = base.joinpath(entry_id + ".json")
    try:
        text = target.read_text(encoding="utf-8")
    except FileNotFoundError:
        raise KeyError(
            "no catalog entry %r; available: %s"
            % (entry_id, ", ".join(list_builtin()))
        ) from None
    return from_json(text)


@dataclasses.dataclass(frozen=True)
class CatalogCheck:
    kind: str
    subject: str
    ok: bool
    detail: str


@dataclasses.dataclass(frozen=True)
class CatalogReport:
    entry_id: str
    checks: tuple

    @property
    def problems(self) -> tuple:
        return tuple(c for c in self.checks if not c.ok)

    @property
    def ok(self) -> bool:
        return not self.problems


def validate(entry: CatalogEntry) -> CatalogReport:
    """Recompute everything the entry claims; report, never raise."""
    cfg = entry.configuration
    checks = []
    for label, row in zip(cfg.labels, cfg.rows):
        norm = geometry.norm(row)
        checks.append(CatalogCheck(
            "row-norm", label, norm == QNum(-1), "norm %s" % norm,
        ))
    if entry.gram is not None:
        bad = _gram_mismatch(cfg.rows, entry.gram)
        if bad is None:
            detail = "%dx%d exact match" % (len(entry.gram), len(entry.gram))
        else:
            detail = "mismatch at cell (%d, %d)" % bad[:2]
        checks.append(CatalogCheck("gram", entry.id, bad is None, detail))
    if entry.clusters is not None:
        computed = geometry.gram(cfg.rows)
        for cluster in entry.clusters:
            report = coxeter.validate_cluster(
                computed, entry.cluster_indices(cluster)
            )
            if report.verdict:
                detail = "cluster revalidates"
            else:
                rule, i, j, g, _ = next(
                    c for c in report.checks if not c[4]
                )
                detail = "%s fails between %s and %s (entry %s)" % (
                    rule, cfg.labels[i], cfg.labels[j], g,
                )
            checks.append(CatalogCheck(
                "cluster", "{%s}" % ",".join(cluster), report.verdict, detail,
            ))
    return CatalogReport(entry_id=entry.id, checks=tuple(checks))
