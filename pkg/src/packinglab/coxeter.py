"""Edge classification, Coxeter diagrams, and cluster enumeration.

A Gram entry g of two walls falls into one of four kinds: 0 means the
walls are orthogonal (no edge), |g| = 1 tangent (thick edge), |g| > 1
disjoint at hyperbolic distance arccosh|g| (dashed edge), and
0 < |g| < 1 an angle pi/n with g = +-cos(pi/n) (n-2 ordinary lines).
Classification is exact: the cosines representable in the quadratic
ring, which cover the data's orders {3, 4, 5, 6, 12}, match by QNum
equality; any other candidate order is ruled out by rigorous interval
arithmetic, so a value nothing matches raises instead of guessing.

Cluster enumeration follows the separation criterion: a subset S is a
cluster iff every member meets every wall outside S with |g| >= 1 or
g = 0, and the members are pairwise tangent or disjoint (|g| >= 1).
Consequently no member of a cluster can carry an angle entry at all
(its angle partner could live neither inside nor outside S), which
cuts the search to cliques among angle-free vertices.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from mpmath import iv

from .exactnum import QNum, sqrt

__all__ = [
    "Orthogonal",
    "Tangent",
    "Angle",
    "Disjoint",
    "CoxeterDiagram",
    "ClusterReport",
    "classify_entry",
    "diagram",
    "enumerate_clusters",
    "validate_cluster",
    "export_dot",
]


@dataclass(frozen=True)
class Orthogonal:
    pass


@dataclass(frozen=True)
class Tangent:
    sign: int = 1


@dataclass(frozen=True)
class Angle:
    order: int
    sign: int = 1


@dataclass(frozen=True)
class Disjoint:
    separation: QNum  # the signed exact entry; |separation| = cosh(distance)


# cos(pi/n) for the orders whose cosine lies in the quadratic ring
_EXACT_COS = {
    3: QNum(Fraction(1, 2)),
    4: sqrt(2) / 2,
    5: (1 + sqrt(5)) / 4,
    6: sqrt(3) / 2,
    12: (sqrt(6) + sqrt(2)) / 4,
}

_MAX_SEPARATION_PREC = 256


def _iv_value(x: QNum):
    total = iv.mpf(0)
    for k, c in x.terms:
        t = iv.mpf(c.numerator) / iv.mpf(c.denominator)
        if k > 1:
            t = t * iv.sqrt(k)
        total = total + t
    return total


def classify_entry(g: QNum, max_order: int = 12):
    """Kind of a single off-diagonal Gram entry.

    Matching is on |g| with the sign recorded on the kind.  Raises
    ValueError for an entry with 0 < |g| < 1 matching no cos(pi/n)
    for 3 <= n <= max_order: that pair is not part of any Coxeter
    diagram this toolkit understands.
    """
    g = QNum(g)
    s = g.sign()
    if s == 0:
        return Orthogonal()
    a = abs(g)
    if a == 1:
        return Tangent(sign=s)
    if a > 1:
        return Disjoint(separation=g)
    candidates = []
    for n in range(3, max_order + 1):
        exact = _EXACT_COS.get(n)
        if exact is not None:
            if a == exact:
                return Angle(order=n, sign=s)
        else:
            candidates.append(n)
    # nothing matched exactly; rule the remaining orders out rigorously
    prec = 64
    while candidates:
        iv.prec = prec
        target = _iv_value(a)
        candidates = [
            n for n in candidates if 0 in target - iv.cos(iv.pi / n)
        ]
        if prec >= _MAX_SEPARATION_PREC:
            break
        prec *= 2
    if candidates:
        raise ValueError(
            f"entry {g} is indistinguishable from cos(pi/n) for n in "
            f"{candidates} at {_MAX_SEPARATION_PREC}-bit precision"
        )
    raise ValueError(
        f"unclassifiable Gram entry {g}: 0 < |g| < 1 but no cos(pi/n) "
        f"matches for n <= {max_order}"
    )


@dataclass(frozen=True)
class CoxeterDiagram:
    nodes: int
    edges: dict  # (i, j) with i < j -> kind, every off-diagonal pair

    def kind(self, i: int, j: int):
        if i == j:
            raise ValueError("diagonal has no edge")
        return self.edges[(i, j) if i < j else (j, i)]


def diagram(gram, max_order: int = 12) -> CoxeterDiagram:
    """Classify every off-diagonal pair of a Gram matrix.

    ValueError from an unclassifiable entry is re-raised with the
    offending cell attached.
    """
    m = len(gram)
    edges = {}
    for i in range(m):
        for j in range(i + 1, m):
            try:
                edges[(i, j)] = classify_entry(gram[i][j], max_order)
            except ValueError as e:
                raise ValueError(f"at cell ({i}, {j}): {e}") from None
    return CoxeterDiagram(nodes=m, edges=edges)


def _is_thick(g: QNum) -> bool:
    return (abs(g) - 1).sign() >= 0


def enumerate_clusters(
    gram,
    exclude_orthogonal_within_cluster: bool = True,
    max_size: int | None = None,
):
    """All vertex subsets satisfying the separation criterion.

    Returned as sorted tuples of 0-based indices, in lexicographic
    order.  By default internal orthogonal pairs are excluded (they
    are anyway by the pairwise |g| >= 1 rule); passing False relaxes
    the internal condition to |g| >= 1 or g = 0.
    """
    m = len(gram)
    if max_size is None:
        max_size = m
    # a cluster member cannot have any angle entry: the partner would
    # have to sit inside the cluster, where angles are not allowed
    candidates = [
        i
        for i in range(m)
        if all(
            not gram[i][j] or _is_thick(gram[i][j])
            for j in range(m)
            if j != i
        )
    ]

    def compatible(i: int, j: int) -> bool:
        g = gram[i][j]
        if not g:
            return not exclude_orthogonal_within_cluster
        return _is_thick(g)

    out = []

    def grow(prefix, start):
        for pos in range(start, len(candidates)):
            v = candidates[pos]
            if all(compatible(u, v) for u in prefix):
                subset = prefix + [v]
                out.append(tuple(subset))
                if len(subset) < max_size:
                    grow(subset, pos + 1)

    if max_size >= 1:
        grow([], 0)
    out.sort()
    return out


@dataclass(frozen=True)
class ClusterReport:
    cluster: tuple
    cocluster: tuple
    checks: tuple  # (rule, i, j, entry, ok) records
    verdict: bool


def validate_cluster(gram, subset) -> ClusterReport:
    """Itemized check of the separation criterion for one subset.

    Checks the literal conditions pair by pair (not the clique
    shortcut), so this doubles as the oracle for enumerate_clusters.
    """
    m = len(gram)
    s = sorted(set(subset))
    if not s or s[0] < 0 or s[-1] >= m:
        raise ValueError(f"subset {subset!r} out of range for {m} vertices")
    inside = set(s)
    checks = []
    for i in s:
        for j in range(m):
            if j == i:
                continue
            g = gram[i][j]
            if j in inside:
                if j < i:
                    continue
                ok = _is_thick(g) if g else False
                checks.append(("pairwise-thick", i, j, g, ok))
            else:
                ok = (not g) or _is_thick(g)
                checks.append(("separated-or-orthogonal", i, j, g, ok))
    verdict = all(c[4] for c in checks)
    return ClusterReport(
        cluster=tuple(s),
        cocluster=tuple(i for i in range(m) if i not in inside),
        checks=tuple(checks),
        verdict=verdict,
    )


def export_dot(diag: CoxeterDiagram, labels=None) -> str:
    """Deterministic DOT text; orthogonal pairs draw no edge."""
    if labels is not None and len(labels) != diag.nodes:
        raise ValueError("labels length mismatch")
    lines = ["graph coxeter {"]
    for i in range(diag.nodes):
        name = labels[i] if labels is not None else str(i)
        lines.append(f'  n{i} [label="{name}"];')
    for (i, j) in sorted(diag.edges):
        kind = diag.edges[(i, j)]
        if isinstance(kind, Orthogonal):
            continue
        if isinstance(kind, Tangent):
            attr = "style=bold"
        elif isinstance(kind, Disjoint):
            attr = "style=dashed"
        else:
            attr = f'label="{kind.order}"'
        lines.append(f"  n{i} -- n{j} [{attr}];")
    lines.append("}")
    return "\n".join(lines) + "\n"
