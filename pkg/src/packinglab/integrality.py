"""Integrality and nonintegrality certificates for packings.

Three certificate families, all exact:

* integral-proven: after an internal conformal rescaling, every bend
  matrix of the mirror walls is integral and the cluster bends are
  integers, so every orbit bend is an integer combination of integers.
* nonintegral-proven: the left nullspace of an overdetermined
  coordinate matrix, in canonical reduced echelon form, contains an
  irrational entry; the nullspace is then not defined over the
  rationals and no rescaling can clear the bends to integers.
* growth-evidence: denominators of powers of a word in the bend
  matrices grow monotonically over the tail of a finite probe.  This
  is labeled evidence, never proof: unboundedness cannot be decided by
  a finite computation.

Certificates serialize to deterministic JSON with coordinates in the
canonical exact text grammar, so a verdict can be archived and replayed.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, replace
from fractions import Fraction

from ._matrix import as_matrix, identity, mat_inverse, mat_mul, rref
from .exactnum import QNum, sqrt
from .geometry import as_vector, bend_matrix, is_wall, reflection_matrix
from .groupwords import Configuration
from .orbit import splitmix64

VERDICTS = ("integral-proven", "nonintegral-proven", "growth-evidence", "inconclusive")


@dataclass(frozen=True)
class IntegralityCertificate:
    verdict: str
    rescale_factor: QNum | None
    witnesses: tuple
    detail: str


def _walls(rows, what):
    out = tuple(as_vector(r) for r in rows)
    for i, r in enumerate(out):
        if not is_wall(r):
            raise ValueError("%s row %d does not have norm -1" % (what, i + 1))
    return out


def rescale(config, factor):
    """Conformal dilation: (co-bend, bend, centers) -> (f*co-bend, bend/f, centers).

    Norms and the whole Gram matrix are preserved; every bend is divided
    by the factor.  Accepts a Configuration (returned as one) or a plain
    row sequence.
    """
    factor = QNum(factor)
    if factor.sign() <= 0:
        raise ValueError("rescale factor must be positive")
    if isinstance(config, Configuration):
        return replace(config, rows=rescale(config.rows, factor))
    rows = tuple(as_vector(r) for r in config)
    inv = factor.inverse()
    return tuple((r[0] * factor, r[1] * inv) + r[2:] for r in rows)


def find_integral_rescaling(bend_list):
    """Factor f with bend/f an integer for every bend, or None.

    Handles the documented case: every nonzero bend is q*sqrt(m) for one
    common squarefree m and rational q.  Mixed radical parts (say sqrt(34)
    against sqrt(17)) admit no such factor and return None.
    """
    bend_list = [QNum(b) for b in bend_list]
    if not bend_list:
        raise ValueError("need at least one bend")
    radicand = None
    rationals = []
    for b in bend_list:
        if not b:
            continue
        terms = b.terms
        if len(terms) != 1:
            return None
        k, q = terms[0]
        if radicand is None:
            radicand = k
        elif k != radicand:
            return None
        rationals.append(q)
    if radicand is None:
        return QNum(1)  # all bends zero
    lcm = math.lcm(*(q.denominator for q in rationals))
    return sqrt(radicand) / lcm


def _integral_matrix(m):
    return all(e.is_integer() for row in m for e in row)


def prove_integral(basis, cluster_rows, mirror_rows):
    """Certificate that the packing of the cluster is integral.

    basis: square wall matrix; cluster_rows/mirror_rows: 1-based row
    indices.  Rescales by the cluster bends' common factor, then demands
    every mirror bend matrix be integral and every cluster bend an
    integer; the bend matrices are the replayable witnesses.
    """
    rows = _walls(basis, "basis")
    if len(rows) != len(rows[0]):
        raise ValueError("basis must be square")
    for idx in list(cluster_rows) + list(mirror_rows):
        if not 1 <= idx <= len(rows):
            raise ValueError("row index %d out of range" % idx)

    cluster_bends = [rows[i - 1][1] for i in cluster_rows]
    factor = find_integral_rescaling(cluster_bends)
    if factor is None:
        return IntegralityCertificate(
            "inconclusive", None, (),
            "cluster bends mix radical parts; no integral rescaling exists",
        )
    scaled = rescale(rows, factor)
    if not all(scaled[i - 1][1].is_integer() for i in cluster_rows):
        return IntegralityCertificate(
            "inconclusive", factor, (), "cluster bends not integral after rescaling"
        )
    matrices = []
    for i in mirror_rows:
        b = bend_matrix(scaled, scaled[i - 1])
        if not _integral_matrix(b):
            return IntegralityCertificate(
                "inconclusive", factor, (),
                "bend matrix of mirror row %d has a non-integral entry" % i,
            )
        matrices.append(b)
    return IntegralityCertificate(
        "integral-proven", factor, tuple(matrices),
        "mirror rows %s give integral bend matrices; cluster bends %s"
        % (list(mirror_rows), [str(scaled[i - 1][1]) for i in cluster_rows]),
    )


def _kernel_basis(matrix):
    # canonical basis of {x : matrix . x = 0} from the reduced echelon form
    reduced, pivots = rref(matrix)
    cols = len(matrix[0])
    free = [j for j in range(cols) if j not in pivots]
    basis = []
    for f in free:
        vec = [QNum(0)] * cols
        vec[f] = QNum(1)
        for r, p in enumerate(pivots):
            vec[p] = -reduced[r][f]
        basis.append(tuple(vec))
    return tuple(basis)


def prove_nonintegral(rows):
    """Certificate from an overdetermined m x (n+2) wall matrix, m > n+2.

    The left nullspace {g : g.rows = 0} is computed exactly in canonical
    reduced form; an irrational entry there proves the packing admits no
    integral rescaling.  An all-rational canonical basis is inconclusive.
    """
    rows = _walls(rows, "matrix")
    m = len(rows)
    width = len(rows[0])
    if m <= width:
        raise ValueError(
            "need more rows than columns (%d x %d); supplement from the orbit"
            % (m, width)
        )
    transpose = tuple(tuple(r[j] for r in rows) for j in range(width))
    _, pivots = rref(transpose)
    if len(pivots) < width:
        raise ValueError(
            "matrix rank %d < %d; supplement independent orbit rows"
            % (len(pivots), width)
        )
    basis = _kernel_basis(transpose)
    irrational = [
        (i, j)
        for i, vec in enumerate(basis)
        for j, e in enumerate(vec)
        if not e.is_rational()
    ]
    if irrational:
        i, j = irrational[0]
        return IntegralityCertificate(
            "nonintegral-proven", None, basis,
            "left-nullspace basis vector %d has irrational entry %s at row %d"
            % (i + 1, basis[i][j], j + 1),
        )
    return IntegralityCertificate(
        "inconclusive", None, basis, "left nullspace is defined over the rationals"
    )


def _fraction_matrix(m, what):
    out = []
    for row in m:
        frow = []
        for e in row:
            q = QNum(e)
            if not q.is_rational():
                raise ValueError("%s entries must be rational" % what)
            frow.append(q.as_fraction())
        out.append(tuple(frow))
    return tuple(out)


def _fmat_mul(a, b):
    if len(a[0]) != len(b):
        raise ValueError("dimension mismatch: %dx%d by %dx%d"
                         % (len(a), len(a[0]), len(b), len(b[0])))
    bt = list(zip(*b))
    return tuple(
        tuple(sum(x * y for x, y in zip(row, col)) for col in bt) for row in a
    )


def denominator_growth_probe(bend_matrices, word, iterations=12):
    """Track entry denominators of P, P^2, ..., P^K for the word's product.

    Verdict growth-evidence when the maximum denominator strictly
    increases over the last K/2 powers; the trace is the witness.
    """
    if iterations < 2:
        raise ValueError("need at least 2 iterations")
    mats = [_fraction_matrix(m, "bend matrix %d" % (k + 1))
            for k, m in enumerate(bend_matrices)]
    for m in mats:
        if len(m) != len(m[0]) or len(m) != len(mats[0]):
            raise ValueError("dimension mismatch among bend matrices")
    word = list(word)
    if not word:
        raise ValueError("empty word")
    for idx in word:
        if not 1 <= idx <= len(mats):
            raise ValueError("word index %d out of range" % idx)
    product = mats[word[0] - 1]
    for idx in word[1:]:
        product = _fmat_mul(product, mats[idx - 1])

    trace = []
    power = product
    for _ in range(iterations):
        trace.append(max(e.denominator for row in power for e in row))
        power = _fmat_mul(power, product)
    tail = iterations // 2
    growing = all(trace[k - 1] < trace[k] for k in range(iterations - tail, iterations))
    return IntegralityCertificate(
        "growth-evidence" if growing else "inconclusive",
        None,
        tuple(trace),
        "max denominator per power of word %s" % ".".join(str(i) for i in word),
    )


@dataclass(frozen=True)
class BoundedRationalReport:
    derived_bound: int
    observed_max_denominator: int
    word_count: int
    word_length: int
    seed: int

    @property
    def ok(self):
        return self.observed_max_denominator <= self.derived_bound


def check_bounded_rational(basis, mirrors, word_count=20, word_length=5, seed=0):
    """Spot-check that conjugated bend matrices stay bounded rational.

    Every bend matrix of a mirror word is V . R_word . V^-1 with R_word
    integral, so entry denominators divide lcm-den(V) * lcm-den(V^-1).
    Random seeded words verify the bound empirically; the identity word
    is always included.
    """
    rows = _walls(basis, "basis")
    if len(rows) != len(rows[0]):
        raise ValueError("basis must be square")
    v = as_matrix(rows)
    v_inv = mat_inverse(v)
    reflections = []
    for k, m in enumerate(_walls(mirrors, "mirror")):
        r = reflection_matrix(m)
        if not _integral_matrix(r):
            raise ValueError("mirror %d has a non-integral reflection matrix" % (k + 1))
        reflections.append(r)

    bound = math.lcm(
        *(e.denominator for row in v for e in row),
        *(e.denominator for row in v_inv for e in row),
    )
    rng = splitmix64(seed)
    observed = 1
    words = [[]]
    words += [
        [next(rng) % len(reflections) for _ in range(word_length)]
        for _ in range(word_count)
    ]
    for letters in words:
        r_word = identity(len(rows))
        for i in letters:
            r_word = mat_mul(r_word, reflections[i])
        b = mat_mul(mat_mul(v, r_word), v_inv)
        observed = max(observed, *(e.denominator for row in b for e in row))
    return BoundedRationalReport(bound, observed, word_count, word_length, seed)


def _encode(value):
    if isinstance(value, tuple):
        return [_encode(x) for x in value]
    if isinstance(value, QNum):
        return str(value)
    if isinstance(value, int):
        return value
    raise TypeError("cannot serialize %r" % (value,))


def _decode(value):
    if isinstance(value, list):
        return tuple(_decode(x) for x in value)
    if isinstance(value, str):
        return QNum(value)
    if isinstance(value, int):
        return value
    raise TypeError("cannot deserialize %r" % (value,))


def certificate_to_json(cert):
    doc = {
        "verdict": cert.verdict,
        "rescale_factor": None if cert.rescale_factor is None else str(cert.rescale_factor),
        "witnesses": _encode(cert.witnesses),
        "detail": cert.detail,
    }
    return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"


def certificate_from_json(text):
    doc = json.loads(text)
    if doc["verdict"] not in VERDICTS:
        raise ValueError("unknown verdict %r" % doc["verdict"])
    factor = doc["rescale_factor"]
    return IntegralityCertificate(
        doc["verdict"],
        None if factor is None else QNum(factor),
        _decode(doc["witnesses"]),
        doc["detail"],
    )
