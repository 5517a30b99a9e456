"""Convert external quadratic-form coordinates to inversive rows.

Two source conventions are supported.  Bianchi reflection data comes in the
rank-4 form

    -2*x1*x2 + 2*x3**2 + 2*m*x4**2                    m = 1, 2 (mod 4)
    -2*x1*x2 + 2*x3**2 + 2*x3*x4 + (m+1)/2 * x4**2    m = 3 (mod 4)

and higher-dimensional reflection data in -d*x0**2 + sum(xi**2).  Both
converters rescale so the image row has self-inner-product exactly -1 under
the inversive form.  For a Bianchi root the right factor is sqrt(f(x)/2):
after it, f = 2 and the mapped row has norm x1*x2 - x3**2 - m*x4**2 = -f/2
(the m = 3 (mod 4) map folds the cross term into the third slot, landing on
the same identity).  A positive rational always has a representable square
root (sqrt(p/q) = sqrt(p*q)/q), so everything stays exact.

McLeod's published Bi(m) tables carry a handful of known typos; the shipped
patch table (data/mcleod_patches.json) fixes them up during ingestion, keyed
by the source table and vector name.
"""

import dataclasses
import json
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
from importlib import resources

from . import geometry
from .exactnum import QNum, sqrt, squarefree_decompose


@dataclasses.dataclass(frozen=True)
class BianchiRoot:
    """A space-like root of the rank-4 Bianchi quadratic form."""

    m: int
    x: tuple

    def __post_init__(self):
        if not isinstance(self.m, int) or self.m < 1:
            raise ValueError("m must be a positive integer, got %r" % (self.m,))
        if squarefree_decompose(self.m)[0] != 1:
            raise ValueError("m must be square-free, got %d" % self.m)
        coords = tuple(Fraction(c) for c in self.x)
        if len(coords) != 4:
            raise ValueError("a Bianchi root has 4 components, got %d" % len(coords))
        object.__setattr__(self, "x", coords)
        if self.form_value() <= 0:
            raise ValueError(
                "form value must be positive (space-like), got %s" % self.form_value()
            )

    def form_value(self) -> Fraction:
        x1, x2, x3, x4 = self.x
        if self.m % 4 == 3:
            return -2 * x1 * x2 + 2 * x3 * x3 + 2 * x3 * x4 + Fraction(self.m + 1, 2) * x4 * x4
        return -2 * x1 * x2 + 2 * x3 * x3 + 2 * self.m * x4 * x4


@dataclasses.dataclass(frozen=True)
class VinbergVector:
    """A positive-norm vector of -d*x0**2 + sum(xi**2)."""

    d: int
    x: tuple

    def __post_init__(self):
        if not isinstance(self.d, int) or self.d < 1:
            raise ValueError("d must be a positive integer, got %r" % (self.d,))
        coords = tuple(Fraction(c) for c in self.x)
        if len(coords) < 3:
            raise ValueError(
                "need at least 3 components (ambient dimension 1), got %d" % len(coords)
            )
        object.__setattr__(self, "x", coords)
        if self.form_value() <= 0:
            raise ValueError(
                "form value must be positive, got %s" % self.form_value()
            )

    def form_value(self) -> Fraction:
        return -self.d * self.x[0] ** 2 + sum(c * c for c in self.x[1:])


def _unit_scale(value: Fraction) -> QNum:
    # 1/sqrt(value) for a positive rational, kept exact
    assert value > 0
    return sqrt(value.numerator * value.denominator) * Fraction(1, value.numerator)


def from_mcleod_bianchi(root: BianchiRoot) -> tuple:
    """Inversive row for a Bianchi root; exact norm -1."""
    scale = _unit_scale(root.form_value() / 2)
    x1, x2, x3, x4 = (c * scale for c in root.x)
    if root.m % 4 == 3:
        row = (x1, x2, x3 + x4 * Fraction(1, 2), x4 * sqrt(root.m) * Fraction(1, 2))
    else:
        row = (x1, x2, x3, x4 * sqrt(root.m))
    assert geometry.norm(row) == QNum(-1)
    return row


def from_vinberg_form(v: VinbergVector) -> tuple:
    """Inversive row for a vector of -d*x0**2 + sum(xi**2); exact norm -1."""
    scale = _unit_scale(v.form_value())
    hat = [c * scale for c in v.x]
    lead = hat[0] * sqrt(v.d)
    row = (lead + hat[1], lead - hat[1]) + tuple(hat[2:])
    assert geometry.norm(row) == QNum(-1)
    return row


def convert_root(item) -> tuple:
    if isinstance(item, BianchiRoot):
        return from_mcleod_bianchi(item)
    if isinstance(item, VinbergVector):
        return from_vinberg_form(item)
    raise TypeError("expected a BianchiRoot or VinbergVector, got %r" % type(item).__name__)


def convert_all(items, threads: int = 1) -> tuple:
    """Convert a list of roots, preserving order; pure, so safe to fan out."""
    items = list(items)
    if threads > 1 and len(items) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            return tuple(pool.map(convert_root, items))
    return tuple(convert_root(i) for i in items)


def load_patch_table(path=None):
    """The shipped (or a user-supplied) root corrections table.

    Returns ({(table, vector): component tuple}, notes).  Notes document
    corrections to printed self-products; they change no vector and are
    carried through for reporting only.
    """
    if path is None:
        text = (
            resources.files("packinglab")
            .joinpath("data/mcleod_patches.json")
            .read_text(encoding="utf-8")
        )
    else:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    doc = json.loads(text)
    patches = {}
    for entry in doc["patches"]:
        key = (entry["table"], entry["vector"])
        if key in patches:
            raise ValueError("duplicate patch for table %s vector %s" % key)
        patches[key] = tuple(Fraction(c) for c in entry["x"])
    return patches, tuple(doc.get("notes", ()))


def read_root_file(path, patches=None):
    """Parse a JSON root file into BianchiRoot/VinbergVector items.

    Entries look like {"m": 2, "x": ["2", "0", "0", "-1"]} (Bianchi) or
    {"d": 3, "x": [...]} (higher-dimensional); exactly one of m/d must be
    present.  An entry may carry "table" and "vector" names identifying its
    row in the source tables, in which case the patch table (the shipped one
    unless a mapping is passed) replaces known-bad components.
    """
    if patches is None:
        patches, _ = load_patch_table()
    with open(path, encoding="utf-8") as fh:
        doc = json.load(fh)
    if not isinstance(doc, list):
        raise ValueError("root file must be a JSON list of entries")
    out = []
    for k, entry in enumerate(doc):
        has_m, has_d = "m" in entry, "d" in entry
        if has_m == has_d:
            raise ValueError("entry %d needs exactly one of 'm' or 'd'" % k)
        coords = entry["x"]
        key = (entry.get("table"), entry.get("vector"))
        if None not in key and key in patches:
            coords = patches[key]
        if has_m:
            out.append(BianchiRoot(entry["m"], tuple(coords)))
        else:
            out.append(VinbergVector(entry["d"], tuple(coords)))
    return out
