"""Incidence functions on interval classes: convolution, inversion, zeta/Mobius,
and the hat embedding into linear operators.

The convolution of two incidence functions is evaluated by splitting the
canonical representative of each class; delta-compatibility makes the value
independent of the representative (and ``star(..., audit=True)`` re-checks
that on every member).  Inversion runs the standard triangular recursion
over classes ordered by representative size and verifies both one-sided
products before returning.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Optional

from .algebra import LinearOperator, convolve_ops
from .errors import DimensionMismatch, EngineError, IncompatibleRelation
from .interval_bialgebra import IntervalBialgebra, check_interval_product_condition
from .linalg import ONE, ZERO, Rational, format_rational
from .posets import interval_elements
from .relations import IntervalRelation


class IncidenceFunction:
    """A total map from interval classes to rationals."""

    __slots__ = ("relation", "values")

    def __init__(self, relation: IntervalRelation, values: dict[int, Rational]):
        self.relation = relation
        self.values = {cid: Fraction(values.get(cid, ZERO)) for cid in range(relation.num_classes)}

    @classmethod
    def from_callable(
        cls, relation: IntervalRelation, fn: Callable[[str], Rational]
    ) -> "IncidenceFunction":
        return cls(relation, {cid: Fraction(fn(c.key)) for cid, c in enumerate(relation.classes)})

    @classmethod
    def constant(cls, relation: IntervalRelation, value: Rational) -> "IncidenceFunction":
        return cls(relation, {cid: Fraction(value) for cid in range(relation.num_classes)})

    def value(self, cid: int) -> Rational:
        return self.values[cid]

    def by_key(self, key: str) -> Rational:
        for cid, c in enumerate(self.relation.classes):
            if c.key == key:
                return self.values[cid]
        raise EngineError(f"no class keyed {key!r}")

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, IncidenceFunction)
            and self.relation.same_as(other.relation)
            and self.values == other.values
        )

    def to_json(self) -> dict:
        return {
            "relation": self.relation.to_json(),
            "values": {
                c.key: format_rational(self.values[cid])
                for cid, c in enumerate(self.relation.classes)
            },
        }

    def to_csv(self) -> list[tuple[str, str]]:
        return [
            (c.key, format_rational(self.values[cid]))
            for cid, c in enumerate(self.relation.classes)
        ]

    def __repr__(self):
        return f"IncidenceFunction({ {self.relation.key_of(c): str(v) for c, v in self.values.items()} })"


def zeta(r: IntervalRelation) -> IncidenceFunction:
    """The constant function 1."""
    return IncidenceFunction.constant(r, ONE)


def unit_function(r: IntervalRelation) -> IncidenceFunction:
    """The convolution unit: 1 on one-point classes, 0 elsewhere."""
    points = set(r.point_class_ids())
    return IncidenceFunction(r, {cid: (ONE if cid in points else ZERO) for cid in range(r.num_classes)})


def _star_on(r: IntervalRelation, phi: IncidenceFunction, psi: IncidenceFunction, lo: int, hi: int) -> Rational:
    total = ZERO
    for x in interval_elements(r.poset, lo, hi):
        total += phi.value(r.cid(lo, x)) * psi.value(r.cid(x, hi))
    return total


def star(
    phi: IncidenceFunction, psi: IncidenceFunction, audit: bool = False
) -> IncidenceFunction:
    """Convolution, evaluated on the canonical representative of each class.

    With ``audit=True`` the value is recomputed on every member of every
    class and a mismatch raises (a delta-compatibility violation).
    """
    if not phi.relation.same_as(psi.relation):
        raise DimensionMismatch("incidence functions live on different relations")
    r = phi.relation
    out: dict[int, Rational] = {}
    for cid, cls in enumerate(r.classes):
        out[cid] = _star_on(r, phi, psi, cls.rep.lo, cls.rep.hi)
        if audit:
            for member in cls.members:
                if _star_on(r, phi, psi, member.lo, member.hi) != out[cid]:
                    raise IncompatibleRelation(
                        f"convolution value differs across class {cls.key}: "
                        f"relation is not delta-compatible"
                    )
    return IncidenceFunction(r, out)


def star_inverse(phi: IncidenceFunction) -> Optional[IncidenceFunction]:
    """Two-sided convolution inverse, or None when a point-class value is 0.

    Recursion over classes ordered by representative size (the class order),
    peeling the top element of each representative; both products against
    the unit are verified before returning.
    """
    r = phi.relation
    points = r.point_class_ids()
    if any(phi.value(cid) == 0 for cid in points):
        return None
    psi: dict[int, Rational] = {}
    for cid, cls in enumerate(r.classes):
        lo, hi = cls.rep
        if lo == hi:
            psi[cid] = ONE / phi.value(cid)
            continue
        top = phi.value(r.cid(hi, hi))
        acc = ZERO
        for x in interval_elements(r.poset, lo, hi):
            if x == hi:
                continue
            lower = r.cid(lo, x)
            if lower not in psi:  # only possible when class sizes are not graded
                raise IncompatibleRelation(
                    "inversion schedule broken: relation classes are not "
                    "graded by interval size (not delta-compatible)"
                )
            acc += psi[lower] * phi.value(r.cid(x, hi))
        psi[cid] = -acc / top
    inv = IncidenceFunction(r, psi)
    u = unit_function(r)
    if star(inv, phi) != u or star(phi, inv) != u:
        return None
    return inv


def mobius(r: IntervalRelation) -> IncidenceFunction:
    """The convolution inverse of zeta; always defined."""
    inv = star_inverse(zeta(r))
    if inv is None:  # zeta is 1 on points, so this cannot happen
        raise EngineError("zeta function failed to invert")
    return inv


def hat(phi: IncidenceFunction) -> LinearOperator:
    """Diagonal operator on the class basis with eigenvalues phi(class)."""
    r = phi.relation
    return LinearOperator.diagonal([phi.value(cid) for cid in range(r.num_classes)])


def check_hat_homomorphism(
    ib: IntervalBialgebra, phi: IncidenceFunction, psi: IncidenceFunction
) -> bool:
    """hat(phi * psi) == hat(phi) * hat(psi) (operator convolution), exactly.

    Requires the interval-product condition; without it the hat map is not
    multiplicative and the call refuses with the condition's witness.
    """
    condition = check_interval_product_condition(ib)
    if not condition.ok:
        raise EngineError(
            "hat embedding needs products of intervals to be intervals; "
            f"failing witness: {condition.witness}"
        )
    lhs = hat(star(phi, psi))
    rhs = convolve_ops(ib.bialgebra.coalgebra, ib.bialgebra.algebra, hat(phi), hat(psi))
    return lhs == rhs


def check_atom_additivity(
    ib: IntervalBialgebra, phi: IncidenceFunction, psi: IncidenceFunction
) -> bool:
    """(phi * psi) = phi + psi on every class [0^, a] with a an atom.

    Requires both functions to preserve the unit (value 1 on the point
    class).
    """
    from .posets import atoms, minimum

    r = ib.relation
    point = ib.point_class
    if phi.value(point) != ONE or psi.value(point) != ONE:
        raise EngineError("atom additivity needs unit-preserving functions (value 1 on points)")
    zero = minimum(r.poset)
    conv = star(phi, psi)
    for a in atoms(r.poset):
        cid = r.cid(zero, a)
        if conv.value(cid) != phi.value(cid) + psi.value(cid):
            return False
    return True


def function_product(phi: IncidenceFunction, psi: IncidenceFunction) -> IncidenceFunction:
    """Pointwise product; the hat map sends it to operator composition."""
    if not phi.relation.same_as(psi.relation):
        raise DimensionMismatch("incidence functions live on different relations")
    return IncidenceFunction(
        phi.relation, {cid: phi.value(cid) * psi.value(cid) for cid in phi.values}
    )
