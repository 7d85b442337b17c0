"""Exact scalars and small exact linear algebra.

Every scalar in the engine is an arbitrary-precision rational
(``fractions.Fraction``), so all results are exact and canonical by
construction.  Vectors and tensors over an indexed basis are kept sparse
(zero entries are never stored); operators and solver input use a dense
row-major rational matrix.  All values are immutable by convention and all
functions are pure.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping, Optional

from .errors import DimensionMismatch

Rational = Fraction

ZERO = Fraction(0)
ONE = Fraction(1)


def rational_normalize(num: int, den: int = 1) -> Rational:
    """Canonical reduced rational num/den with positive denominator."""
    if den == 0:
        raise ZeroDivisionError("division by zero")
    return Fraction(num, den)


def format_rational(x: Rational) -> str:
    """Serialize as "p/q", or plain "p" when the denominator is 1."""
    return str(x)


def parse_rational(text: str) -> Rational:
    return Fraction(text)


def _clean(entries: Mapping) -> dict:
    return {k: v for k, v in entries.items() if v != 0}


class SparseVector:
    """Finitely supported map basis-index -> Rational; zeros are dropped."""

    __slots__ = ("entries",)

    def __init__(self, entries: Optional[Mapping[int, Rational]] = None):
        self.entries = _clean(entries or {})

    @classmethod
    def unit(cls, index: int) -> "SparseVector":
        return cls({index: ONE})

    def get(self, index: int) -> Rational:
        return self.entries.get(index, ZERO)

    def items(self):
        return sorted(self.entries.items())

    def scale(self, c: Rational) -> "SparseVector":
        if c == 0:
            return SparseVector()
        return SparseVector({k: c * v for k, v in self.entries.items()})

    def __add__(self, other: "SparseVector") -> "SparseVector":
        out = dict(self.entries)
        for k, v in other.entries.items():
            out[k] = out.get(k, ZERO) + v
        return SparseVector(out)

    def __sub__(self, other: "SparseVector") -> "SparseVector":
        return self + other.scale(-ONE)

    def __neg__(self) -> "SparseVector":
        return self.scale(-ONE)

    def __eq__(self, other) -> bool:
        return isinstance(other, SparseVector) and self.entries == other.entries

    def __hash__(self):
        return hash(frozenset(self.entries.items()))

    def __bool__(self) -> bool:
        return bool(self.entries)

    def tensor(self, other: "SparseVector") -> "SparseTensor":
        return SparseTensor(
            {
                (i, j): a * b
                for i, a in self.entries.items()
                for j, b in other.entries.items()
            }
        )

    def to_json(self) -> dict:
        return {str(k): format_rational(v) for k, v in self.items()}

    def render(self) -> str:
        """Deterministic human form, e.g. "e0 - 2*e3"; "0" when empty."""
        if not self.entries:
            return "0"
        parts = []
        for k, v in self.items():
            parts.append(f"{format_rational(v)}*e{k}" if v != 1 else f"e{k}")
        return " + ".join(parts).replace("+ -", "- ")

    def __repr__(self):
        return f"SparseVector({self.entries!r})"


class SparseTensor:
    """Finitely supported map (i, j) -> Rational over an ordered pair of bases."""

    __slots__ = ("entries",)

    def __init__(self, entries: Optional[Mapping[tuple, Rational]] = None):
        self.entries = _clean(entries or {})

    def get(self, key: tuple) -> Rational:
        return self.entries.get(key, ZERO)

    def items(self):
        return sorted(self.entries.items())

    def scale(self, c: Rational) -> "SparseTensor":
        if c == 0:
            return SparseTensor()
        return SparseTensor({k: c * v for k, v in self.entries.items()})

    def __add__(self, other: "SparseTensor") -> "SparseTensor":
        out = dict(self.entries)
        for k, v in other.entries.items():
            out[k] = out.get(k, ZERO) + v
        return SparseTensor(out)

    def __sub__(self, other: "SparseTensor") -> "SparseTensor":
        return self + other.scale(-ONE)

    def __eq__(self, other) -> bool:
        return isinstance(other, SparseTensor) and self.entries == other.entries

    def __bool__(self) -> bool:
        return bool(self.entries)

    def twist(self) -> "SparseTensor":
        return SparseTensor({(j, i): v for (i, j), v in self.entries.items()})

    def to_json(self) -> dict:
        return {f"{i},{j}": format_rational(v) for (i, j), v in self.items()}

    def render(self) -> str:
        if not self.entries:
            return "0"
        parts = []
        for (i, j), v in self.items():
            term = f"e{i}(x)e{j}"
            parts.append(term if v == 1 else f"{format_rational(v)}*{term}")
        return " + ".join(parts).replace("+ -", "- ")

    def __repr__(self):
        return f"SparseTensor({self.entries!r})"


class DenseMatrix:
    """Row-major rational matrix; the carrier for operators and the solver."""

    __slots__ = ("rows", "cols", "cells")

    def __init__(self, rows: int, cols: int, cells: Iterable[Rational]):
        self.rows = rows
        self.cols = cols
        self.cells = [Fraction(c) for c in cells]
        if len(self.cells) != rows * cols:
            raise DimensionMismatch(
                f"matrix cells length {len(self.cells)} != {rows}x{cols}"
            )

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "DenseMatrix":
        return cls(rows, cols, [ZERO] * (rows * cols))

    @classmethod
    def identity(cls, n: int) -> "DenseMatrix":
        m = cls.zeros(n, n)
        for i in range(n):
            m.cells[i * n + i] = ONE
        return m

    @classmethod
    def from_columns(cls, rows: int, columns: list[SparseVector]) -> "DenseMatrix":
        m = cls.zeros(rows, len(columns))
        for j, col in enumerate(columns):
            for i, v in col.entries.items():
                if not 0 <= i < rows:
                    raise DimensionMismatch(f"column entry index {i} outside 0..{rows - 1}")
                m.cells[i * len(columns) + j] = v
        return m

    def get(self, i: int, j: int) -> Rational:
        return self.cells[i * self.cols + j]

    def set(self, i: int, j: int, value: Rational) -> None:
        self.cells[i * self.cols + j] = Fraction(value)

    def column(self, j: int) -> SparseVector:
        return SparseVector({i: self.get(i, j) for i in range(self.rows)})

    def mul(self, other: "DenseMatrix") -> "DenseMatrix":
        if self.cols != other.rows:
            raise DimensionMismatch("matrix product shape mismatch")
        out = DenseMatrix.zeros(self.rows, other.cols)
        for i in range(self.rows):
            for k in range(self.cols):
                a = self.get(i, k)
                if a == 0:
                    continue
                for j in range(other.cols):
                    b = other.get(k, j)
                    if b != 0:
                        out.cells[i * other.cols + j] += a * b
        return out

    def apply(self, vec: SparseVector) -> SparseVector:
        out: dict[int, Rational] = {}
        for j, c in vec.entries.items():
            if not 0 <= j < self.cols:
                raise DimensionMismatch(f"vector index {j} outside 0..{self.cols - 1}")
            for i in range(self.rows):
                a = self.get(i, j)
                if a != 0:
                    out[i] = out.get(i, ZERO) + a * c
        return SparseVector(out)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, DenseMatrix)
            and self.rows == other.rows
            and self.cols == other.cols
            and self.cells == other.cells
        )

    def to_json(self) -> list[list[str]]:
        return [
            [format_rational(self.get(i, j)) for j in range(self.cols)]
            for i in range(self.rows)
        ]

    def __repr__(self):
        return f"DenseMatrix({self.rows}x{self.cols})"


def solve_linear(a: DenseMatrix, b: SparseVector) -> Optional[SparseVector]:
    """Exact solution x of a.x = b, or None when the system is inconsistent.

    Elimination picks the first nonzero pivot in column order; no numerical
    pivoting is needed over exact rationals.  Underdetermined consistent
    systems return the solution with all free variables set to zero, so the
    result is deterministic; callers that need a specific solution must
    verify the returned candidate themselves.
    """
    for i in b.entries:
        if not 0 <= i < a.rows:
            raise DimensionMismatch(f"rhs index {i} outside 0..{a.rows - 1}")
    rows, cols = a.rows, a.cols
    m = [[a.get(i, j) for j in range(cols)] + [b.get(i)] for i in range(rows)]

    pivot_cols: list[int] = []
    r = 0
    for c in range(cols):
        pivot = next((i for i in range(r, rows) if m[i][c] != 0), None)
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        inv = ONE / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(rows):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivot_cols.append(c)
        r += 1
        if r == rows:
            break
    for i in range(r, rows):
        if m[i][cols] != 0:
            return None
    x: dict[int, Rational] = {}
    for row, c in enumerate(pivot_cols):
        # reduced echelon form: non-pivot columns correspond to zeroed free vars
        x[c] = m[row][cols]
    return SparseVector(x)


def matrix_rank(vectors: list[SparseVector], dim: int) -> int:
    """Rank of the span of ``vectors`` inside a ``dim``-dimensional space."""
    rows = [[v.get(j) for j in range(dim)] for v in vectors]
    rank = 0
    for c in range(dim):
        pivot = next((i for i in range(rank, len(rows)) if rows[i][c] != 0), None)
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        inv = ONE / rows[rank][c]
        rows[rank] = [x * inv for x in rows[rank]]
        for i in range(len(rows)):
            if i != rank and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[rank])]
        rank += 1
    return rank


def linearly_independent(vectors: list[SparseVector], dim: int) -> bool:
    return matrix_rank(vectors, dim) == len(vectors)
