"""Finite-dimensional algebras, coalgebras and bialgebras by structure constants.

Carries the axiom checkers (associativity, coassociativity, the unit/counit
compatibilities bi2/bi3/bi4 and the strong condition bi1), the convolution
product on linear operators, an exact antipode solver, opposite and tensor
constructions, and the concrete small fixtures used throughout the tests
(quaternions over the diagonal coalgebra, the matrix algebra/coalgebra pair,
the two-dimensional complex-number coalgebra).

Everything here is pure and operates on immutable values; axiom checks
report deterministic, lexicographically smallest witnesses.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .errors import BoundExceeded, DimensionMismatch
from .linalg import (
    ONE,
    ZERO,
    DenseMatrix,
    Rational,
    SparseTensor,
    SparseVector,
    format_rational,
    linearly_independent,
    solve_linear,
)

MATRIX_FIXTURE_MAX = 6


@dataclass(frozen=True)
class AxiomCheck:
    axiom: str
    ok: bool
    witness: Optional[dict] = None

    def to_json(self) -> dict:
        return {"axiom": self.axiom, "ok": self.ok, "witness": self.witness}


@dataclass(frozen=True)
class AxiomReport:
    checks: tuple[AxiomCheck, ...]

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    def check(self, axiom: str) -> AxiomCheck:
        for c in self.checks:
            if c.axiom == axiom:
                return c
        raise KeyError(axiom)

    def to_json(self) -> dict:
        return {"checks": [c.to_json() for c in self.checks]}


class FiniteAlgebra:
    """Unital associative algebra on basis e0..e(d-1) given by structure constants.

    ``mult[(i, j)]`` is the expansion of ei*ej (missing keys mean zero) and
    ``unit`` is the expansion of the algebra unit.
    """

    __slots__ = ("dim", "mult", "unit")

    def __init__(self, dim: int, mult: dict[tuple[int, int], SparseVector], unit: SparseVector):
        self.dim = dim
        self.mult = {k: v for k, v in mult.items() if v}
        self.unit = unit

    def product_units(self, i: int, j: int) -> SparseVector:
        return self.mult.get((i, j), SparseVector())

    def product(self, v: SparseVector, w: SparseVector) -> SparseVector:
        out = SparseVector()
        for i, a in v.entries.items():
            for j, b in w.entries.items():
                term = self.product_units(i, j)
                if term:
                    out = out + term.scale(a * b)
        return out


class FiniteCoalgebra:
    """Coalgebra on basis e0..e(d-1): ``comult[i]`` expands the coproduct of ei."""

    __slots__ = ("dim", "comult", "counit")

    def __init__(self, dim: int, comult: dict[int, SparseTensor], counit: dict[int, Rational]):
        self.dim = dim
        self.comult = {k: (v if isinstance(v, SparseTensor) else SparseTensor(v)) for k, v in comult.items()}
        self.counit = {k: Fraction(v) for k, v in counit.items()}

    def comult_of(self, v: SparseVector) -> SparseTensor:
        out = SparseTensor()
        for i, a in v.entries.items():
            out = out + self.comult.get(i, SparseTensor()).scale(a)
        return out

    def counit_of(self, v: SparseVector) -> Rational:
        return sum((a * self.counit.get(i, ZERO) for i, a in v.entries.items()), ZERO)


class FiniteBialgebra:
    """An algebra and a coalgebra sharing one underlying based space."""

    __slots__ = ("algebra", "coalgebra")

    def __init__(self, algebra: FiniteAlgebra, coalgebra: FiniteCoalgebra):
        if algebra.dim != coalgebra.dim:
            raise DimensionMismatch("algebra and coalgebra dimensions differ")
        self.algebra = algebra
        self.coalgebra = coalgebra

    @property
    def dim(self) -> int:
        return self.algebra.dim

    def to_json(self) -> dict:
        return {
            "dim": self.dim,
            "mult": {
                f"{i},{j}": vec.to_json() for (i, j), vec in sorted(self.algebra.mult.items())
            },
            "unit": self.algebra.unit.to_json(),
            "comult": {
                str(i): self.coalgebra.comult[i].to_json()
                for i in sorted(self.coalgebra.comult)
            },
            "counit": {
                str(i): format_rational(v) for i, v in sorted(self.coalgebra.counit.items())
            },
        }


class LinearOperator:
    """Linear endomorphism; column j of ``matrix`` is the image of basis ej."""

    __slots__ = ("dim", "matrix")

    def __init__(self, matrix: DenseMatrix):
        if matrix.rows != matrix.cols:
            raise DimensionMismatch("operator matrix must be square")
        self.dim = matrix.rows
        self.matrix = matrix

    @classmethod
    def identity(cls, dim: int) -> "LinearOperator":
        return cls(DenseMatrix.identity(dim))

    @classmethod
    def from_columns(cls, columns: list[SparseVector]) -> "LinearOperator":
        return cls(DenseMatrix.from_columns(len(columns), columns))

    @classmethod
    def diagonal(cls, values: list[Rational]) -> "LinearOperator":
        m = DenseMatrix.zeros(len(values), len(values))
        for i, v in enumerate(values):
            m.set(i, i, v)
        return cls(m)

    def column(self, j: int) -> SparseVector:
        return self.matrix.column(j)

    def apply(self, v: SparseVector) -> SparseVector:
        return self.matrix.apply(v)

    def compose(self, other: "LinearOperator") -> "LinearOperator":
        """self after other."""
        return LinearOperator(self.matrix.mul(other.matrix))

    def __eq__(self, other) -> bool:
        return isinstance(other, LinearOperator) and self.matrix == other.matrix

    def to_json(self) -> list[list[str]]:
        return self.matrix.to_json()

    def __repr__(self):
        return f"LinearOperator(dim={self.dim})"


def _witness(at, left, right) -> dict:
    render = lambda x: x.render() if hasattr(x, "render") else format_rational(x)
    return {"at": list(at), "left": render(left), "right": render(right)}


def check_algebra(a: FiniteAlgebra) -> AxiomReport:
    """Associativity and unitarity on all basis triples/elements."""
    assoc = AxiomCheck("associativity", True)
    for i in range(a.dim):
        for j in range(a.dim):
            ij = a.product_units(i, j)
            for k in range(a.dim):
                left = a.product(ij, SparseVector.unit(k))
                right = a.product(SparseVector.unit(i), a.product_units(j, k))
                if left != right:
                    assoc = AxiomCheck("associativity", False, _witness((i, j, k), left, right))
                    break
            if not assoc.ok:
                break
        if not assoc.ok:
            break
    unital = AxiomCheck("unitarity", True)
    for i in range(a.dim):
        e = SparseVector.unit(i)
        left = a.product(a.unit, e)
        right = a.product(e, a.unit)
        if left != e or right != e:
            unital = AxiomCheck("unitarity", False, _witness((i,), left, right))
            break
    return AxiomReport((assoc, unital))


def _triple_comult_left(c: FiniteCoalgebra, i: int) -> dict:
    out: dict[tuple[int, int, int], Rational] = {}
    for (j, k), v in c.comult.get(i, SparseTensor()).entries.items():
        for (p, q), w in c.comult.get(j, SparseTensor()).entries.items():
            key = (p, q, k)
            out[key] = out.get(key, ZERO) + v * w
    return {k: v for k, v in out.items() if v != 0}


def _triple_comult_right(c: FiniteCoalgebra, i: int) -> dict:
    out: dict[tuple[int, int, int], Rational] = {}
    for (j, k), v in c.comult.get(i, SparseTensor()).entries.items():
        for (p, q), w in c.comult.get(k, SparseTensor()).entries.items():
            key = (j, p, q)
            out[key] = out.get(key, ZERO) + v * w
    return {k: v for k, v in out.items() if v != 0}


def check_coalgebra(c: FiniteCoalgebra) -> AxiomReport:
    """Coassociativity and counitarity on every basis element."""
    coassoc = AxiomCheck("coassociativity", True)
    for i in range(c.dim):
        left = _triple_comult_left(c, i)
        right = _triple_comult_right(c, i)
        if left != right:
            coassoc = AxiomCheck(
                "coassociativity",
                False,
                {"at": [i], "left": str(sorted(left.items())), "right": str(sorted(right.items()))},
            )
            break
    counital = AxiomCheck("counitarity", True)
    for i in range(c.dim):
        t = c.comult.get(i, SparseTensor())
        left = SparseVector()
        right = SparseVector()
        for (j, k), v in t.entries.items():
            left = left + SparseVector({k: v * c.counit.get(j, ZERO)})
            right = right + SparseVector({j: v * c.counit.get(k, ZERO)})
        e = SparseVector.unit(i)
        if left != e or right != e:
            counital = AxiomCheck("counitarity", False, _witness((i,), left, right))
            break
    return AxiomReport((coassoc, counital))


def is_commutative(a: FiniteAlgebra) -> bool:
    return all(
        a.product_units(i, j) == a.product_units(j, i)
        for i in range(a.dim)
        for j in range(i + 1, a.dim)
    )


def is_cocommutative(c: FiniteCoalgebra) -> bool:
    return all(c.comult.get(i, SparseTensor()).twist() == c.comult.get(i, SparseTensor()) for i in range(c.dim))


def convolve_ops(
    c: FiniteCoalgebra, a: FiniteAlgebra, f: LinearOperator, g: LinearOperator
) -> LinearOperator:
    """Convolution product of operators: multiply after (f tensor g) after comultiply."""
    if not (c.dim == a.dim == f.dim == g.dim):
        raise DimensionMismatch("convolution needs equal dimensions")
    cols = []
    for i in range(c.dim):
        acc = SparseVector()
        for (j, k), v in c.comult.get(i, SparseTensor()).entries.items():
            acc = acc + a.product(f.column(j), g.column(k)).scale(v)
        cols.append(acc)
    return LinearOperator.from_columns(cols)


def convolution_unit(c: FiniteCoalgebra, a: FiniteAlgebra) -> LinearOperator:
    """The convolution unit: unit map after counit (rank <= 1)."""
    if c.dim != a.dim:
        raise DimensionMismatch("convolution unit needs equal dimensions")
    cols = [a.unit.scale(c.counit.get(i, ZERO)) for i in range(c.dim)]
    return LinearOperator.from_columns(cols)


def check_mweak(b: FiniteBialgebra) -> AxiomReport:
    """The unit/counit compatibilities bi2, bi3, bi4, each with a witness."""
    a, c = b.algebra, b.coalgebra
    left2 = c.comult_of(a.unit)
    right2 = a.unit.tensor(a.unit)
    bi2 = AxiomCheck("bi2", left2 == right2, None if left2 == right2 else _witness((), left2, right2))
    bi3 = AxiomCheck("bi3", True)
    for i in range(b.dim):
        for j in range(b.dim):
            left = c.counit_of(a.product_units(i, j))
            right = c.counit.get(i, ZERO) * c.counit.get(j, ZERO)
            if left != right:
                bi3 = AxiomCheck("bi3", False, _witness((i, j), left, right))
                break
        if not bi3.ok:
            break
    eps_unit = c.counit_of(a.unit)
    bi4 = AxiomCheck("bi4", eps_unit == ONE, None if eps_unit == ONE else _witness((), eps_unit, ONE))
    return AxiomReport((bi2, bi3, bi4))


def check_strong(b: FiniteBialgebra) -> AxiomReport:
    """The strong compatibility bi1 on all basis pairs (comultiplication is multiplicative)."""
    a, c = b.algebra, b.coalgebra
    for i in range(b.dim):
        di = c.comult.get(i, SparseTensor())
        for j in range(b.dim):
            dj = c.comult.get(j, SparseTensor())
            left: dict[tuple[int, int], Rational] = {}
            for (p, q), v in di.entries.items():
                for (r, s), w in dj.entries.items():
                    first = a.product_units(p, r)
                    if not first:
                        continue
                    second = a.product_units(q, s)
                    if not second:
                        continue
                    coef = v * w
                    for x, fx in first.entries.items():
                        for y, fy in second.entries.items():
                            key = (x, y)
                            left[key] = left.get(key, ZERO) + coef * fx * fy
            left_t = SparseTensor(left)
            right_t = c.comult_of(a.product_units(i, j))
            if left_t != right_t:
                return AxiomReport(
                    (AxiomCheck("bi1", False, _witness((i, j), left_t, right_t)),)
                )
    return AxiomReport((AxiomCheck("bi1", True),))


def solve_antipode(b: FiniteBialgebra) -> Optional[LinearOperator]:
    """Convolution inverse of the identity, or None when it does not exist.

    Solves the linear system (id * S) = u exactly, then verifies both
    defining equations on the candidate; verification, not solver policy, is
    the correctness gate for underdetermined systems.
    """
    a, c = b.algebra, b.coalgebra
    d = b.dim
    u = convolution_unit(c, a)
    # unknown s[q, k] (entry of the antipode matrix) gets flat index q*d + k
    m = DenseMatrix.zeros(d * d, d * d)
    rhs: dict[int, Rational] = {}
    for i in range(d):
        for r, v in u.column(i).entries.items():
            rhs[i * d + r] = v
        for (j, k), coef in c.comult.get(i, SparseTensor()).entries.items():
            for q in range(d):
                prod = a.product_units(j, q)
                if not prod:
                    continue
                for r, w in prod.entries.items():
                    row = i * d + r
                    col = q * d + k
                    m.set(row, col, m.get(row, col) + coef * w)
    sol = solve_linear(m, SparseVector(rhs))
    if sol is None:
        return None
    s = DenseMatrix.zeros(d, d)
    for flat, v in sol.entries.items():
        s.set(flat // d, flat % d, v)
    cand = LinearOperator(s)
    ident = LinearOperator.identity(d)
    if convolve_ops(c, a, ident, cand) != u or convolve_ops(c, a, cand, ident) != u:
        return None
    return cand


def opposite_algebra(a: FiniteAlgebra) -> FiniteAlgebra:
    return FiniteAlgebra(a.dim, {(j, i): v for (i, j), v in a.mult.items()}, a.unit)


def opposite_coalgebra(c: FiniteCoalgebra) -> FiniteCoalgebra:
    return FiniteCoalgebra(c.dim, {i: t.twist() for i, t in c.comult.items()}, dict(c.counit))


def opposite_bialgebra(b: FiniteBialgebra) -> FiniteBialgebra:
    return FiniteBialgebra(opposite_algebra(b.algebra), opposite_coalgebra(b.coalgebra))


def tensor_bialgebra(b1: FiniteBialgebra, b2: FiniteBialgebra) -> FiniteBialgebra:
    """Tensor product bialgebra on the product basis (i, j) -> i*d2 + j."""
    d1, d2 = b1.dim, b2.dim
    dim = d1 * d2
    flat = lambda i, j: i * d2 + j

    def vec_pair(v1: SparseVector, v2: SparseVector) -> SparseVector:
        return SparseVector(
            {flat(p, q): x * y for p, x in v1.entries.items() for q, y in v2.entries.items()}
        )

    mult: dict[tuple[int, int], SparseVector] = {}
    for i1 in range(d1):
        for j1 in range(d2):
            for i2 in range(d1):
                for j2 in range(d2):
                    prod1 = b1.algebra.product_units(i1, i2)
                    if not prod1:
                        continue
                    prod2 = b2.algebra.product_units(j1, j2)
                    if not prod2:
                        continue
                    mult[(flat(i1, j1), flat(i2, j2))] = vec_pair(prod1, prod2)
    unit = vec_pair(b1.algebra.unit, b2.algebra.unit)

    comult: dict[int, SparseTensor] = {}
    counit: dict[int, Rational] = {}
    for i in range(d1):
        ti = b1.coalgebra.comult.get(i, SparseTensor())
        for j in range(d2):
            tj = b2.coalgebra.comult.get(j, SparseTensor())
            entries: dict[tuple[int, int], Rational] = {}
            for (p, q), v in ti.entries.items():
                for (r, s), w in tj.entries.items():
                    key = (flat(p, r), flat(q, s))
                    entries[key] = entries.get(key, ZERO) + v * w
            comult[flat(i, j)] = SparseTensor(entries)
            counit[flat(i, j)] = b1.coalgebra.counit.get(i, ZERO) * b2.coalgebra.counit.get(j, ZERO)
    return FiniteBialgebra(
        FiniteAlgebra(dim, mult, unit), FiniteCoalgebra(dim, comult, counit)
    )


def tensor_operator(f: LinearOperator, g: LinearOperator) -> LinearOperator:
    """Kronecker product with the same row-major pair indexing as tensor_bialgebra."""
    d1, d2 = f.dim, g.dim
    out = DenseMatrix.zeros(d1 * d2, d1 * d2)
    for i in range(d1):
        for j in range(d1):
            a = f.matrix.get(i, j)
            if a == 0:
                continue
            for p in range(d2):
                for q in range(d2):
                    b = g.matrix.get(p, q)
                    if b != 0:
                        out.set(i * d2 + p, j * d2 + q, a * b)
    return LinearOperator(out)


def grouplike_elements(b: FiniteBialgebra | FiniteCoalgebra) -> list[SparseVector]:
    """Basis elements (and the unit, when present) that are grouplike."""
    if isinstance(b, FiniteBialgebra):
        c = b.coalgebra
        candidates = [SparseVector.unit(i) for i in range(b.dim)] + [b.algebra.unit]
    else:
        c = b
        candidates = [SparseVector.unit(i) for i in range(c.dim)]
    out = []
    for v in candidates:
        if v and c.comult_of(v) == v.tensor(v) and c.counit_of(v) == ONE and v not in out:
            out.append(v)
    return out


def grouplike_independent(b: FiniteBialgebra | FiniteCoalgebra) -> bool:
    found = grouplike_elements(b)
    dim = b.dim
    return linearly_independent(found, dim)


def diagonal_coalgebra(dim: int) -> FiniteCoalgebra:
    """Every basis element grouplike: comult b -> b(x)b, counit b -> 1."""
    return FiniteCoalgebra(
        dim,
        {i: SparseTensor({(i, i): ONE}) for i in range(dim)},
        {i: ONE for i in range(dim)},
    )


def quaternion_fixture() -> FiniteBialgebra:
    """Quaternions over the rationals with the diagonal coalgebra on {1, i, j, k}."""
    one, i, j, k = range(4)
    table = {
        (one, one): {one: 1}, (one, i): {i: 1}, (one, j): {j: 1}, (one, k): {k: 1},
        (i, one): {i: 1}, (j, one): {j: 1}, (k, one): {k: 1},
        (i, i): {one: -1}, (j, j): {one: -1}, (k, k): {one: -1},
        (i, j): {k: 1}, (j, i): {k: -1},
        (j, k): {i: 1}, (k, j): {i: -1},
        (k, i): {j: 1}, (i, k): {j: -1},
    }
    mult = {key: SparseVector({b: Fraction(c) for b, c in val.items()}) for key, val in table.items()}
    algebra = FiniteAlgebra(4, mult, SparseVector.unit(one))
    return FiniteBialgebra(algebra, diagonal_coalgebra(4))


def matrix_bialgebra(n: int) -> FiniteBialgebra:
    """The n x n matrix-unit algebra paired with the matrix coalgebra.

    Basis B[i][j] at flat index i*n + j; products follow
    B[i][j] B[k][l] = delta(j,k) B[i][l]; the coproduct of B[i][j] sums
    B[i][k] (x) B[k][j] and the counit reads off the trace coefficient.
    """
    if n < 1 or n > MATRIX_FIXTURE_MAX:
        raise BoundExceeded(f"matrix fixture size must be within 1..{MATRIX_FIXTURE_MAX}")
    flat = lambda i, j: i * n + j
    dim = n * n
    mult = {}
    for i in range(n):
        for j in range(n):
            for l in range(n):
                mult[(flat(i, j), flat(j, l))] = SparseVector.unit(flat(i, l))
    unit = SparseVector({flat(i, i): ONE for i in range(n)})
    comult = {
        flat(i, j): SparseTensor({(flat(i, k), flat(k, j)): ONE for k in range(n)})
        for i in range(n)
        for j in range(n)
    }
    counit = {flat(i, j): ONE if i == j else ZERO for i in range(n) for j in range(n)}
    return FiniteBialgebra(
        FiniteAlgebra(dim, mult, unit), FiniteCoalgebra(dim, comult, counit)
    )


def complex_coalgebra_fixture() -> FiniteCoalgebra:
    """Two-dimensional coalgebra on {1, i} dual to complex multiplication."""
    one, i = 0, 1
    comult = {
        one: SparseTensor({(one, one): ONE, (i, i): -ONE}),
        i: SparseTensor({(one, i): ONE, (i, one): ONE}),
    }
    return FiniteCoalgebra(2, comult, {one: ONE, i: ZERO})


def complex_algebra_fixture() -> FiniteAlgebra:
    """Complex numbers as a two-dimensional algebra on {1, i}."""
    one, i = 0, 1
    mult = {
        (one, one): SparseVector.unit(one),
        (one, i): SparseVector.unit(i),
        (i, one): SparseVector.unit(i),
        (i, i): SparseVector({one: -ONE}),
    }
    return FiniteAlgebra(2, mult, SparseVector.unit(one))
