"""Exact arithmetic over the rationals extended by square roots.

A value is a finite sum ``sum_k c_k * sqrt(k)`` with rational
coefficients ``c_k`` and pairwise distinct squarefree radicands
``k >= 1`` (``k = 1`` is the rational part).  Everything the coordinate
tables need lives in such a ring: entries like ``(sqrt(2)+sqrt(6))/2``
sit in Q(sqrt(2), sqrt(3)) but we never fix a field up front, the term
map just grows the radicands it meets.

Square roots of distinct squarefree integers are linearly independent
over Q, so the term map is a canonical form: two values are equal iff
their maps coincide, and a value is zero iff its map is empty.  The
exact (and free) zero test is what sign determination, interior tests,
and orbit dedup all lean on.

Serialization grammar (used by catalog files, CLI output and tests)::

    expr     := term (('+'|'-') term)*
    term     := rational ('*' 'sqrt(' uint ')')? | ['-'] 'sqrt(' uint ')'
    rational := ['-'] uint ('/' uint)?

Printing emits terms by ascending radicand, rational part first, no
whitespace; parsing additionally accepts whitespace between tokens and
non-squarefree radicands (``sqrt(12)`` reduces to ``2*sqrt(3)``).
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, isqrt

__all__ = ["QNum", "sqrt", "ZERO", "ONE"]


def squarefree_decompose(n: int) -> tuple[int, int]:
    """Write n = s*s*f with f squarefree; return (s, f).

    Trial division is plenty: radicands in the bundled data never
    exceed 34, and arithmetic keeps radicands squarefree on its own
    (see __mul__), so this only runs at parse time.
    """
    if n <= 0:
        raise ValueError(f"radicand must be a positive integer, got {n!r}")
    s, f, d = 1, 1, 2
    while d * d <= n:
        if n % d == 0:
            e = 0
            while n % d == 0:
                n //= d
                e += 1
            s *= d ** (e // 2)
            if e % 2:
                f *= d
        d += 1
    return s, f * n


def _least_prime_factor(n: int) -> int:
    d = 2
    while d * d <= n:
        if n % d == 0:
            return d
        d += 1
    return n


class QNum:
    """Element of Q[sqrt(k) : k squarefree], immutable and hashable.

    Construct from an int, a Fraction, a literal string (same grammar
    as ``parse``), or a dict {radicand: coefficient}.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, value=None):
        if value is None:
            items = ()
        elif isinstance(value, QNum):
            items = value._terms
        elif isinstance(value, (int, Fraction)):
            c = Fraction(value)
            items = ((1, c),) if c else ()
        elif isinstance(value, str):
            items = _parse(value)
        elif isinstance(value, dict):
            acc: dict[int, Fraction] = {}
            for k, c in value.items():
                if not isinstance(k, int):
                    raise TypeError(f"radicand must be int, got {k!r}")
                s, f = squarefree_decompose(k)
                c = Fraction(c) * s
                if c:
                    acc[f] = acc.get(f, Fraction(0)) + c
            items = tuple(sorted((k, c) for k, c in acc.items() if c))
        else:
            raise TypeError(f"cannot build QNum from {type(value).__name__}")
        self._terms = items
        self._hash = None

    @classmethod
    def _make(cls, items: tuple) -> "QNum":
        # internal fast path: items already canonical (sorted, squarefree
        # radicands, no zero coefficients)
        self = object.__new__(cls)
        self._terms = items
        self._hash = None
        return self

    @classmethod
    def parse(cls, text: str) -> "QNum":
        """Parse the literal grammar; raises ValueError with position."""
        return cls._make(_parse(text))

    @property
    def terms(self) -> tuple:
        """Canonical term tuple ((radicand, Fraction), ...), ascending."""
        return self._terms

    # -- predicates ---------------------------------------------------

    def is_rational(self) -> bool:
        return not self._terms or (len(self._terms) == 1 and self._terms[0][0] == 1)

    def is_integer(self) -> bool:
        if not self._terms:
            return True
        return self.is_rational() and self._terms[0][1].denominator == 1

    def as_fraction(self) -> Fraction:
        if not self._terms:
            return Fraction(0)
        if not self.is_rational():
            raise ValueError(f"not a rational value: {self}")
        return self._terms[0][1]

    @property
    def denominator(self) -> int:
        """lcm of the coefficient denominators (1 for zero)."""
        d = 1
        for _, c in self._terms:
            d = d * c.denominator // gcd(d, c.denominator)
        return d

    def __bool__(self) -> bool:
        return bool(self._terms)

    # -- ring arithmetic ----------------------------------------------

    def __add__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        acc = dict(self._terms)
        for k, c in other._terms:
            v = acc.get(k, _F0) + c
            if v:
                acc[k] = v
            elif k in acc:
                del acc[k]
        return QNum._make(tuple(sorted(acc.items())))

    __radd__ = __add__

    def __neg__(self):
        return QNum._make(tuple((k, -c) for k, c in self._terms))

    def __pos__(self):
        return self

    def __sub__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        acc: dict[int, Fraction] = {}
        for k1, c1 in self._terms:
            for k2, c2 in other._terms:
                # sqrt(k1)*sqrt(k2) = g*sqrt(a*b) with g = gcd, and a, b
                # coprime squarefree, so a*b is squarefree: no refactoring
                g = gcd(k1, k2)
                k = (k1 // g) * (k2 // g)
                v = acc.get(k, _F0) + c1 * c2 * g
                if v:
                    acc[k] = v
                elif k in acc:
                    del acc[k]
        return QNum._make(tuple(sorted(acc.items())))

    __rmul__ = __mul__

    def inverse(self) -> "QNum":
        """Exact multiplicative inverse.

        Clears one radical prime at a time: multiplying by the
        conjugate that flips every sqrt containing p leaves a value
        free of p (the cross terms square p away), and conjugation is a
        field automorphism so the running denominator stays nonzero.
        """
        if not self._terms:
            raise ZeroDivisionError("QNum division by zero")
        num, den = ONE, self
        while not den.is_rational():
            k = next(k for k, _ in den._terms if k > 1)
            conj = den._conjugate(_least_prime_factor(k))
            num = num * conj
            den = den * conj
        return num * QNum(1 / den._terms[0][1])

    def _conjugate(self, p: int) -> "QNum":
        return QNum._make(
            tuple((k, -c if k % p == 0 else c) for k, c in self._terms)
        )

    def __truediv__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return other * self.inverse()

    def __pow__(self, n):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        out = ONE
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    # -- order and sign -----------------------------------------------

    def sign(self) -> int:
        """-1, 0 or +1, exact.

        Zero is structural (empty term map).  Otherwise each sqrt(k) is
        boxed in a shrinking rational interval via isqrt until the sum
        interval excludes zero; termination is guaranteed because a
        nonzero value has nonzero magnitude.
        """
        if not self._terms:
            return 0
        if len(self._terms) == 1:
            return 1 if self._terms[0][1] > 0 else -1
        prec = 16
        while True:
            lo, hi = self._bounds(prec)
            if lo > 0:
                return 1
            if hi < 0:
                return -1
            prec *= 2

    def _bounds(self, prec: int) -> tuple[Fraction, Fraction]:
        """Rational interval containing the value, width <= sum|c|*2^-prec."""
        scale = 1 << prec
        lo = hi = Fraction(0)
        for k, c in self._terms:
            if k == 1:
                lo += c
                hi += c
            else:
                s = isqrt(k * scale * scale)
                a, b = Fraction(s, scale), Fraction(s + 1, scale)
                if c >= 0:
                    lo += c * a
                    hi += c * b
                else:
                    lo += c * b
                    hi += c * a
        return lo, hi

    def to_float(self, precision: int = 53) -> float:
        """Approximate value within 2**-precision (before the final
        double rounding; callers needing more use _bounds directly)."""
        lo, hi = self._bounds(precision + 2)
        return float((lo + hi) / 2)

    def __float__(self) -> float:
        return self.to_float()

    def __abs__(self):
        return -self if self.sign() < 0 else self

    def _cmp(self, other) -> int:
        other = _coerce(other)
        if other is None:
            raise TypeError(f"cannot compare QNum with {type(other).__name__}")
        return (self - other).sign()

    def __lt__(self, other):
        return self._cmp(other) < 0

    def __le__(self, other):
        return self._cmp(other) <= 0

    def __gt__(self, other):
        return self._cmp(other) > 0

    def __ge__(self, other):
        return self._cmp(other) >= 0

    # -- identity -----------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, QNum):
            return self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return self._terms == QNum(other)._terms
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            if self.is_rational():
                # agree with hash(int)/hash(Fraction) so x == n implies
                # hash(x) == hash(n)
                self._hash = hash(self.as_fraction())
            else:
                self._hash = hash(self._terms)
        return self._hash

    # -- text ---------------------------------------------------------

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for k, c in self._terms:
            if k == 1:
                parts.append(str(c))
            elif c == 1:
                parts.append(f"sqrt({k})")
            elif c == -1:
                parts.append(f"-sqrt({k})")
            else:
                parts.append(f"{c}*sqrt({k})")
        out = parts[0]
        for p in parts[1:]:
            out += p if p.startswith("-") else "+" + p
        return out

    def __repr__(self) -> str:
        return f"QNum({str(self)!r})"


_F0 = Fraction(0)

ZERO = QNum()
ONE = QNum(1)


def sqrt(n: int) -> QNum:
    """sqrt of a positive integer as a QNum (radicand reduced)."""
    return QNum({n: 1})


def _coerce(x):
    if isinstance(x, QNum):
        return x
    if isinstance(x, (int, Fraction)):
        return QNum(x)
    return None


# -- parser -----------------------------------------------------------


def _parse(text: str) -> tuple:
    pos = 0
    n = len(text)

    def err(msg: str, at: int):
        raise ValueError(f"QNum syntax error at position {at}: {msg}")

    def skip_ws():
        nonlocal pos
        while pos < n and text[pos].isspace():
            pos += 1

    def parse_uint() -> int:
        nonlocal pos
        start = pos
        while pos < n and text[pos].isdigit():
            pos += 1
        if pos == start:
            err("expected an unsigned integer", start)
        return int(text[start:pos])

    def parse_sqrt() -> int:
        nonlocal pos
        pos += 4  # past "sqrt"
        skip_ws()
        if pos >= n or text[pos] != "(":
            err("expected '(' after sqrt", pos)
        pos += 1
        skip_ws()
        at = pos
        k = parse_uint()
        if k == 0:
            err("radicand must be positive", at)
        skip_ws()
        if pos >= n or text[pos] != ")":
            err("expected ')'", pos)
        pos += 1
        return k

    def parse_term() -> tuple[Fraction, int]:
        nonlocal pos
        neg = False
        if pos < n and text[pos] == "-":
            pos += 1
            skip_ws()
            neg = True
        if text.startswith("sqrt", pos):
            c, k = Fraction(1), parse_sqrt()
        else:
            at = pos
            num = parse_uint()
            den = 1
            skip_ws()
            if pos < n and text[pos] == "/":
                pos += 1
                skip_ws()
                at = pos
                den = parse_uint()
                if den == 0:
                    err("zero denominator", at)
            c = Fraction(num, den)
            k = 1
            skip_ws()
            if pos < n and text[pos] == "*":
                pos += 1
                skip_ws()
                if not text.startswith("sqrt", pos):
                    err("expected sqrt(...) after '*'", pos)
                k = parse_sqrt()
        return (-c if neg else c), k

    acc: dict[int, Fraction] = {}

    def accumulate(c: Fraction, k: int):
        s, f = squarefree_decompose(k)
        c = c * s
        if not c:
            return
        v = acc.get(f, _F0) + c
        if v:
            acc[f] = v
        elif f in acc:
            del acc[f]

    skip_ws()
    c, k = parse_term()
    accumulate(c, k)
    skip_ws()
    while pos < n:
        op = text[pos]
        if op not in "+-":
            err(f"expected '+' or '-', got {op!r}", pos)
        pos += 1
        skip_ws()
        c, k = parse_term()
        accumulate(c if op == "+" else -c, k)
        skip_ws()
    return tuple(sorted(acc.items()))
