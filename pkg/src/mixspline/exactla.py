"""Exact dense linear algebra over the rationals.

Entries are Python ``int`` or :class:`fractions.Fraction` values, both of
which are exact; nothing here ever touches a float.  Rank and kernel
computations clear denominators row by row and then run a fraction-free
elimination on integer rows, dividing each updated row by its content so
intermediate coefficients stay small.  Rows are kept sparse internally
because the constraint matrices coming out of the spline code are mostly
zeros.
"""

from __future__ import annotations

import numbers
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Sequence

Rational = Fraction

__all__ = [
    "Rational",
    "ExactMatrix",
    "rank",
    "kernel_basis",
    "rref",
    "solve",
    "RowSpace",
]


def as_rational(value):
    """Coerce ``value`` to an exact rational (``int`` or ``Fraction``)."""
    if type(value) is int or type(value) is Fraction:
        return value
    if isinstance(value, bool):
        return int(value)
    if isinstance(value, numbers.Integral):
        return int(value)
    if isinstance(value, numbers.Rational):
        return Fraction(value.numerator, value.denominator)
    if isinstance(value, str):
        return Fraction(value)
    raise TypeError(f"not an exact rational: {value!r}")


class ExactMatrix:
    """Immutable ``rows x cols`` matrix of exact rationals stored row-major."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, rows: int, cols: int, entries: Iterable = ()):
        if rows < 0 or cols < 0:
            raise ValueError("matrix dimensions must be non-negative")
        entries = tuple(as_rational(e) for e in entries)
        if len(entries) != rows * cols:
            raise ValueError(
                f"expected {rows * cols} entries for a {rows}x{cols} matrix, "
                f"got {len(entries)}"
            )
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "cols", cols)
        object.__setattr__(self, "entries", entries)

    def __setattr__(self, name, value):
        raise AttributeError("ExactMatrix is immutable")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], cols: int | None = None):
        rows = [tuple(r) for r in rows]
        if cols is None:
            if not rows:
                raise ValueError("cols is required for a matrix with no rows")
            cols = len(rows[0])
        for r in rows:
            if len(r) != cols:
                raise ValueError("ragged rows")
        return cls(len(rows), cols, (e for r in rows for e in r))

    @classmethod
    def zeros(cls, rows: int, cols: int):
        return cls(rows, cols, (0,) * (rows * cols))

    @classmethod
    def identity(cls, n: int):
        return cls(n, n, (1 if i == j else 0 for i in range(n) for j in range(n)))

    @property
    def shape(self):
        return (self.rows, self.cols)

    def __getitem__(self, index):
        i, j = index
        if not (0 <= i < self.rows and 0 <= j < self.cols):
            raise IndexError(index)
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def to_rows(self) -> list[tuple]:
        return [self.row(i) for i in range(self.rows)]

    def transpose(self) -> "ExactMatrix":
        c = self.cols
        return ExactMatrix(
            self.cols,
            self.rows,
            (self.entries[i * c + j] for j in range(self.cols) for i in range(self.rows)),
        )

    def apply(self, vector: Sequence) -> tuple:
        """Return ``M @ vector`` exactly."""
        if len(vector) != self.cols:
            raise ValueError("dimension mismatch")
        out = []
        for i in range(self.rows):
            acc = 0
            for a, b in zip(self.row(i), vector):
                if a and b:
                    acc += a * b
            out.append(acc)
        return tuple(out)

    def __eq__(self, other):
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        return self.shape == other.shape and self.entries == other.entries

    def __hash__(self):
        return hash((self.rows, self.cols, self.entries))

    def __repr__(self):
        return f"ExactMatrix({self.rows}x{self.cols})"


# ---------------------------------------------------------------------------
# fraction-free elimination on sparse integer rows


def _integer_row(values: Sequence) -> dict[int, int]:
    """Scale a rational row to a primitive integer row, kept sparse."""
    den = 1
    nz = {}
    for j, e in enumerate(values):
        if e:
            nz[j] = e
            if type(e) is Fraction and e.denominator != 1:
                den = lcm(den, e.denominator)
    if den == 1:
        row = {j: int(e) for j, e in nz.items()}
    else:
        row = {j: e.numerator * (den // e.denominator) if type(e) is Fraction else e * den
               for j, e in nz.items()}
    return _primitive(row)


def _primitive(row: dict[int, int]) -> dict[int, int]:
    if not row:
        return row
    g = gcd(*row.values())
    if g != 1:
        row = {k: v // g for k, v in row.items()}
    return row


class _Echelon:
    """Incremental row echelon form over the integers.

    ``pivots`` maps a pivot column to the (primitive) integer row whose first
    nonzero entry sits in that column.
    """

    def __init__(self):
        self.pivots: dict[int, dict[int, int]] = {}

    def reduce(self, row: dict[int, int]) -> dict[int, int]:
        pivots = self.pivots
        while row:
            hits = [c for c in row if c in pivots]
            if not hits:
                return row
            c = min(hits)
            prow = pivots[c]
            a, b = prow[c], row[c]
            g = gcd(a, b)
            a //= g
            b //= g
            new = {k: a * v for k, v in row.items()} if a != 1 else dict(row)
            for k, v in prow.items():
                w = new.get(k, 0) - b * v
                if w:
                    new[k] = w
                else:
                    new.pop(k, None)
            row = _primitive(new)
        return row

    def insert(self, row: dict[int, int]) -> bool:
        row = self.reduce(row)
        if not row:
            return False
        self.pivots[min(row)] = row
        return True

    def reduced_rows(self) -> list[tuple[int, dict[int, int]]]:
        """Back-substitute so every pivot row is zero in the other pivot columns."""
        cols = sorted(self.pivots)
        done: dict[int, dict[int, int]] = {}
        for c in reversed(cols):
            row = dict(self.pivots[c])
            for c2 in [k for k in row if k != c and k in done]:
                if c2 not in row:
                    continue
                prow = done[c2]
                a, b = prow[c2], row[c2]
                g = gcd(a, b)
                a //= g
                b //= g
                new = {k: a * v for k, v in row.items()}
                for k, v in prow.items():
                    w = new.get(k, 0) - b * v
                    if w:
                        new[k] = w
                    else:
                        new.pop(k, None)
                row = _primitive(new)
            done[c] = row
        return [(c, done[c]) for c in cols]


def _echelon(M: ExactMatrix) -> _Echelon:
    ech = _Echelon()
    for i in range(M.rows):
        row = _integer_row(M.row(i))
        if row:
            ech.insert(row)
    return ech


def rank(M: ExactMatrix) -> int:
    """Rank of ``M`` over the rationals."""
    if M.rows == 0 or M.cols == 0:
        return 0
    return len(_echelon(M).pivots)


def rref(M: ExactMatrix) -> tuple[ExactMatrix, tuple[int, ...]]:
    """Reduced row echelon form (nonzero rows only) and the pivot columns."""
    if M.rows == 0 or M.cols == 0:
        return ExactMatrix(0, M.cols), ()
    rows = []
    pivots = []
    for c, row in _echelon(M).reduced_rows():
        lead = row[c]
        dense = [0] * M.cols
        for k, v in row.items():
            dense[k] = Fraction(v, lead) if v % lead else v // lead
        rows.append(dense)
        pivots.append(c)
    return ExactMatrix(len(rows), M.cols, (e for r in rows for e in r)), tuple(pivots)


def kernel_basis(M: ExactMatrix) -> list[tuple]:
    """Basis of the right null space of ``M``.

    Each vector has a 1 in one free column and 0 in the others, so the
    basis is the standard one when ``M`` has no rows.
    """
    n = M.cols
    if M.rows == 0:
        return [tuple(1 if i == j else 0 for i in range(n)) for j in range(n)]
    reduced = _echelon(M).reduced_rows()
    pivot_cols = {c for c, _ in reduced}
    basis = []
    for f in range(n):
        if f in pivot_cols:
            continue
        v = [0] * n
        v[f] = 1
        for c, row in reduced:
            a = row.get(f)
            if a:
                v[c] = Fraction(-a, row[c])
        basis.append(tuple(v))
    return basis


def solve(M: ExactMatrix, b: Sequence):
    """One exact solution ``x`` of ``M x = b``; ``ValueError`` if inconsistent."""
    if len(b) != M.rows:
        raise ValueError("dimension mismatch")
    aug = ExactMatrix(
        M.rows, M.cols + 1,
        (e for i in range(M.rows) for e in (*M.row(i), as_rational(b[i]))),
    )
    R, pivots = rref(aug)
    if M.cols in pivots:
        raise ValueError("system is inconsistent")
    x = [0] * M.cols
    for i, c in enumerate(pivots):
        x[c] = R[i, M.cols]
    return tuple(x)


class RowSpace:
    """Span of a finite list of vectors, stored as a reduced echelon basis.

    Membership tests and coordinates are cheap: a vector in the span has
    coordinates equal to its entries at the pivot columns.
    """

    def __init__(self, vectors: Iterable[Sequence], dim: int):
        vectors = [tuple(v) for v in vectors]
        self.ambient_dim = dim
        if vectors:
            R, pivots = rref(ExactMatrix.from_rows(vectors, dim))
            self.basis = R.to_rows()
            self.pivots = pivots
        else:
            self.basis = []
            self.pivots = ()

    @property
    def dim(self) -> int:
        return len(self.basis)

    def reduce(self, v: Sequence) -> list:
        """Remainder of ``v`` after clearing every pivot column."""
        v = list(v)
        for row, p in zip(self.basis, self.pivots):
            c = v[p]
            if c:
                for k, e in enumerate(row):
                    if e:
                        v[k] -= c * e
        return v

    def contains(self, v: Sequence) -> bool:
        return not any(self.reduce(v))

    def coordinates(self, v: Sequence) -> tuple:
        if not self.contains(v):
            raise ValueError("vector is not in the span")
        return tuple(v[p] for p in self.pivots)
