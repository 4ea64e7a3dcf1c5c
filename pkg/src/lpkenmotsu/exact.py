"""Exact rational scalars, square matrices and dense multi-index tensors.

Scalars are :class:`fractions.Fraction`, which is always kept in lowest terms
with a positive denominator. Vectors are plain tuples of Fractions.
"""

from __future__ import annotations

import itertools
import re
from fractions import Fraction
from typing import Callable, Iterable, Iterator, NamedTuple, Sequence

from .errors import DimensionMismatch, NotSymmetric, SingularMatrix

Rational = Fraction
Vector = tuple  # tuple[Fraction, ...]

ZERO = Fraction(0)
ONE = Fraction(1)

_RATIONAL_RE = re.compile(r"^([+-]?\d+)(?:/(\d+))?$")


def parse_rational(text: str) -> Fraction:
    """Parse ``"p"`` or ``"p/q"``; anything else (floats, blanks) is rejected."""
    if not isinstance(text, str):
        raise ValueError(f"expected a rational string, got {type(text).__name__}")
    m = _RATIONAL_RE.match(text.strip())
    if m is None:
        raise ValueError(f"not a rational literal: {text!r}")
    num = int(m.group(1))
    den = int(m.group(2)) if m.group(2) is not None else 1
    if den == 0:
        raise ValueError(f"zero denominator in {text!r}")
    return Fraction(num, den)


def format_rational(q) -> str:
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def as_vector(values: Iterable) -> Vector:
    return tuple(Fraction(v) for v in values)


def zero_vector(n: int) -> Vector:
    return (ZERO,) * n


def basis_vector(n: int, i: int) -> Vector:
    return tuple(ONE if k == i else ZERO for k in range(n))


def vec_add(*vs: Sequence) -> Vector:
    n = len(vs[0])
    if any(len(v) != n for v in vs):
        raise DimensionMismatch("vector lengths differ")
    return tuple(sum((v[k] for v in vs), ZERO) for k in range(n))


def vec_sub(u: Sequence, v: Sequence) -> Vector:
    if len(u) != len(v):
        raise DimensionMismatch("vector lengths differ")
    return tuple(a - b for a, b in zip(u, v))


def vec_scale(c, v: Sequence) -> Vector:
    c = Fraction(c)
    return tuple(c * a for a in v)


def is_zero_vector(v: Sequence) -> bool:
    return all(a == 0 for a in v)


class Matrix:
    """Immutable square matrix of Fractions.

    ``m[i, j]`` is row ``i``, column ``j``. When a matrix represents an
    endomorphism, column ``j`` holds the components of the image of ``e_j``.
    """

    __slots__ = ("_rows",)

    def __init__(self, rows: Iterable[Iterable]):
        rows = tuple(tuple(Fraction(x) for x in row) for row in rows)
        n = len(rows)
        if n == 0 or any(len(r) != n for r in rows):
            raise DimensionMismatch("matrix must be square and non-empty")
        self._rows = rows

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls([[ONE if i == j else ZERO for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, n: int) -> "Matrix":
        return cls([[ZERO] * n for _ in range(n)])

    @classmethod
    def diag(cls, entries: Sequence) -> "Matrix":
        n = len(entries)
        return cls([[entries[i] if i == j else ZERO for j in range(n)] for i in range(n)])

    @classmethod
    def from_function(cls, n: int, f: Callable[[int, int], object]) -> "Matrix":
        return cls([[f(i, j) for j in range(n)] for i in range(n)])

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence]) -> "Matrix":
        n = len(columns)
        return cls([[columns[j][i] for j in range(n)] for i in range(n)])

    @classmethod
    def outer(cls, u: Sequence, v: Sequence) -> "Matrix":
        if len(u) != len(v):
            raise DimensionMismatch("outer product of unequal lengths")
        return cls([[a * b for b in v] for a in u])

    @property
    def order(self) -> int:
        return len(self._rows)

    @property
    def rows(self) -> tuple:
        return self._rows

    def __getitem__(self, ij):
        i, j = ij
        return self._rows[i][j]

    def column(self, j: int) -> Vector:
        return tuple(row[j] for row in self._rows)

    def row(self, i: int) -> Vector:
        return self._rows[i]

    def transpose(self) -> "Matrix":
        return Matrix(zip(*self._rows))

    T = property(transpose)

    def _check(self, other: "Matrix"):
        if other.order != self.order:
            raise DimensionMismatch(f"orders {self.order} and {other.order} differ")

    def __add__(self, other: "Matrix") -> "Matrix":
        self._check(other)
        return Matrix([[a + b for a, b in zip(r, s)] for r, s in zip(self._rows, other._rows)])

    def __sub__(self, other: "Matrix") -> "Matrix":
        self._check(other)
        return Matrix([[a - b for a, b in zip(r, s)] for r, s in zip(self._rows, other._rows)])

    def __neg__(self) -> "Matrix":
        return Matrix([[-a for a in r] for r in self._rows])

    def __mul__(self, c) -> "Matrix":
        c = Fraction(c)
        return Matrix([[c * a for a in r] for r in self._rows])

    __rmul__ = __mul__

    def __matmul__(self, other):
        if isinstance(other, Matrix):
            self._check(other)
            cols = list(zip(*other._rows))
            return Matrix([[sum((a * b for a, b in zip(r, c)), ZERO) for c in cols] for r in self._rows])
        v = tuple(other)
        if len(v) != self.order:
            raise DimensionMismatch(f"vector of length {len(v)} against order {self.order}")
        return tuple(sum((a * b for a, b in zip(r, v)), ZERO) for r in self._rows)

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self._rows == other._rows

    def __hash__(self):
        return hash(self._rows)

    def __repr__(self):
        body = ", ".join("[" + ", ".join(format_rational(x) for x in r) + "]" for r in self._rows)
        return f"Matrix([{body}])"

    def is_symmetric(self) -> bool:
        n = self.order
        return all(self._rows[i][j] == self._rows[j][i] for i in range(n) for j in range(i + 1, n))

    def is_zero(self) -> bool:
        return all(x == 0 for r in self._rows for x in r)

    def bilinear(self, u: Sequence, v: Sequence):
        """u^T M v."""
        return sum((u[i] * self._rows[i][j] * v[j] for i in range(self.order) for j in range(self.order)
                    if u[i] and v[j]), ZERO)

    def to_strings(self) -> list:
        return [[format_rational(x) for x in r] for r in self._rows]


def identity(n: int) -> Matrix:
    return Matrix.identity(n)


def invert(m: Matrix) -> Matrix:
    """Exact inverse by Gauss-Jordan elimination."""
    n = m.order
    a = [list(r) + [ONE if i == j else ZERO for j in range(n)] for i, r in enumerate(m.rows)]
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col] != 0), None)
        if piv is None:
            raise SingularMatrix("matrix is singular (zero determinant)")
        a[col], a[piv] = a[piv], a[col]
        p = a[col][col]
        a[col] = [x / p for x in a[col]]
        for r in range(n):
            if r != col and a[r][col] != 0:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return Matrix([row[n:] for row in a])


def determinant(m: Matrix) -> Fraction:
    n = m.order
    a = [list(r) for r in m.rows]
    det = ONE
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col] != 0), None)
        if piv is None:
            return ZERO
        if piv != col:
            a[col], a[piv] = a[piv], a[col]
            det = -det
        p = a[col][col]
        det *= p
        for r in range(col + 1, n):
            if a[r][col] != 0:
                f = a[r][col] / p
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return det


class Inertia(NamedTuple):
    positives: int
    negatives: int
    zeros: int


def signature(m: Matrix) -> Inertia:
    """Sylvester inertia of a symmetric matrix via symmetric congruence elimination."""
    if not m.is_symmetric():
        raise NotSymmetric("signature requires a symmetric matrix")
    n = m.order
    a = [list(r) for r in m.rows]
    pos = neg = 0
    k = 0
    while k < n:
        piv = next((i for i in range(k, n) if a[i][i] != 0), None)
        if piv is None:
            off = next(((p, q) for p in range(k, n) for q in range(p + 1, n) if a[p][q] != 0), None)
            if off is None:
                break
            p, q = off
            # e_p -> e_p + e_q makes the (p, p) entry 2 a_pq, which is nonzero.
            for j in range(n):
                a[p][j] += a[q][j]
            for i in range(n):
                a[i][p] += a[i][q]
            piv = p
        if piv != k:
            a[k], a[piv] = a[piv], a[k]
            for row in a:
                row[k], row[piv] = row[piv], row[k]
        d = a[k][k]
        for i in range(k + 1, n):
            if a[i][k] != 0:
                f = a[i][k] / d
                for j in range(k, n):
                    a[i][j] -= f * a[k][j]
                for j in range(k, n):
                    a[j][i] -= f * a[j][k]
        if d > 0:
            pos += 1
        else:
            neg += 1
        k += 1
    return Inertia(pos, neg, n - pos - neg)


UP = "up"
DOWN = "down"


class MultiTensor:
    """Dense tensor with every extent equal to ``n``.

    ``variance`` marks each slot as ``"up"`` (vector-type) or ``"down"``
    (covector-type). Entries are stored flat in row-major order.
    """

    __slots__ = ("n", "variance", "_data")

    def __init__(self, n: int, variance: Sequence[str], data: Iterable):
        self.n = n
        self.variance = tuple(variance)
        if any(v not in (UP, DOWN) for v in self.variance):
            raise ValueError(f"bad variance markers {self.variance}")
        self._data = tuple(Fraction(x) for x in data)
        if len(self._data) != n ** len(self.variance):
            raise DimensionMismatch(f"{len(self._data)} entries for shape {self.shape}")

    @classmethod
    def zeros(cls, n: int, variance: Sequence[str]) -> "MultiTensor":
        return cls(n, variance, [ZERO] * n ** len(variance))

    @classmethod
    def from_function(cls, n: int, variance: Sequence[str], f: Callable[..., object]) -> "MultiTensor":
        return cls(n, variance, [f(*idx) for idx in itertools.product(range(n), repeat=len(variance))])

    @classmethod
    def from_sparse(cls, n: int, variance: Sequence[str], entries: dict) -> "MultiTensor":
        rank = len(variance)
        data = [ZERO] * n ** rank
        for idx, val in entries.items():
            data[_flat(n, idx)] = Fraction(val)
        return cls(n, variance, data)

    @property
    def shape(self) -> tuple:
        return (self.n,) * len(self.variance)

    @property
    def rank(self) -> int:
        return len(self.variance)

    def __getitem__(self, idx):
        return self._data[_flat(self.n, idx)]

    def indices(self) -> Iterator[tuple]:
        return itertools.product(range(self.n), repeat=self.rank)

    def items(self) -> Iterator[tuple]:
        return zip(self.indices(), self._data)

    def nonzero(self) -> list:
        return [(idx, v) for idx, v in self.items() if v != 0]

    def is_zero(self) -> bool:
        return all(v == 0 for v in self._data)

    def _check(self, other: "MultiTensor"):
        if self.n != other.n or self.variance != other.variance:
            raise DimensionMismatch("tensor shapes or variances differ")

    def __add__(self, other: "MultiTensor") -> "MultiTensor":
        self._check(other)
        return MultiTensor(self.n, self.variance, [a + b for a, b in zip(self._data, other._data)])

    def __sub__(self, other: "MultiTensor") -> "MultiTensor":
        self._check(other)
        return MultiTensor(self.n, self.variance, [a - b for a, b in zip(self._data, other._data)])

    def __mul__(self, c) -> "MultiTensor":
        c = Fraction(c)
        return MultiTensor(self.n, self.variance, [c * a for a in self._data])

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, MultiTensor):
            return NotImplemented
        return self.n == other.n and self.variance == other.variance and self._data == other._data

    def __hash__(self):
        return hash((self.n, self.variance, self._data))

    def __repr__(self):
        return f"MultiTensor(n={self.n}, variance={self.variance}, nonzero={len(self.nonzero())})"

    def is_symmetric_in(self, a: int, b: int) -> bool:
        for idx in self.indices():
            if idx[a] < idx[b]:
                sw = list(idx)
                sw[a], sw[b] = sw[b], sw[a]
                if self[idx] != self[tuple(sw)]:
                    return False
        return True

    def is_antisymmetric_in(self, a: int, b: int) -> bool:
        for idx in self.indices():
            sw = list(idx)
            sw[a], sw[b] = sw[b], sw[a]
            if self[idx] != -self[tuple(sw)]:
                return False
        return True

    def to_nested(self):
        """Nested lists of rational strings (scalar string for rank 0)."""

        def build(prefix):
            if len(prefix) == self.rank:
                return format_rational(self[tuple(prefix)])
            return [build(prefix + [i]) for i in range(self.n)]

        return build([])


def _flat(n: int, idx) -> int:
    pos = 0
    for i in idx:
        if not 0 <= i < n:
            raise IndexError(f"index {idx} out of range for extent {n}")
        pos = pos * n + i
    return pos
