"""The interval bialgebra of a poset modulo a compatible relation.

Structure constants on the class basis:

* product: class(a,x) . class(x,b) = n * class(a,b), where n counts the
  decomposition points x inside the representative of the composite class;
* coproduct of a class: sum of class(a,x) (x) class(x,b) over the points x
  of its representative interval;
* unit: the one-point class; counit: indicator of the one-point class.

Construction computes every constant from the canonical representative and
then audits it against every other member, turning the compatibility
guarantees into a runtime cross-check.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .algebra import FiniteAlgebra, FiniteBialgebra, FiniteCoalgebra
from .errors import IncompatibleRelation, InternalConsistencyError
from .linalg import ONE, Rational, SparseTensor, SparseVector
from .posets import interval_elements
from .relations import CheckOutcome, CompatibilityVerdict, IntervalRelation, check_compatibility


def _decomposition_counts(r: IntervalRelation, lo: int, hi: int) -> dict[tuple[int, int], int]:
    counts: dict[tuple[int, int], int] = {}
    for x in interval_elements(r.poset, lo, hi):
        key = (r.cid(lo, x), r.cid(x, hi))
        counts[key] = counts.get(key, 0) + 1
    return counts


def comult_constants(r: IntervalRelation) -> dict[int, dict[tuple[int, int], int]]:
    """Coproduct constants per class, computed on each representative.

    Well defined whenever the relation is delta-compatible; callers that
    pass merely point-respecting relations (e.g. the trivial one) get the
    representative-level constants, which is exactly the delta-compatible
    meaning.
    """
    return {
        cid: _decomposition_counts(r, cls.rep.lo, cls.rep.hi)
        for cid, cls in enumerate(r.classes)
    }


@dataclass(frozen=True)
class IntervalBialgebra:
    relation: IntervalRelation
    bialgebra: FiniteBialgebra
    multiplicities: dict[tuple[int, int], int]
    point_class: int

    @property
    def dim(self) -> int:
        return self.bialgebra.dim

    def to_json(self) -> dict:
        r = self.relation
        mult_json: dict[str, dict[str, str]] = {}
        for (i, j), vec in sorted(self.bialgebra.algebra.mult.items()):
            cell = {r.key_of(k): str(v) for k, v in vec.items()}
            mult_json[f"{r.key_of(i)},{r.key_of(j)}"] = cell
        comult_json: dict[str, dict[str, str]] = {}
        for i in range(self.dim):
            tensor = self.bialgebra.coalgebra.comult.get(i, SparseTensor())
            comult_json[r.key_of(i)] = {
                f"{r.key_of(p)},{r.key_of(q)}": str(v) for (p, q), v in tensor.items()
            }
        return {
            "classes": [cls.key for cls in r.classes],
            "mult": mult_json,
            "comult": comult_json,
        }


def build_interval_bialgebra(
    r: IntervalRelation, verdict: CompatibilityVerdict | None = None
) -> IntervalBialgebra:
    """Builds the class-basis bialgebra; the relation must be fully compatible."""
    if verdict is None:
        verdict = check_compatibility(r)
    if not verdict.ok:
        raise IncompatibleRelation("relation is not bialgebra compatible", verdict)

    rep_counts = comult_constants(r)

    # audit: every member of every class must decompose with the same counts
    for cid, cls in enumerate(r.classes):
        for member in cls.members:
            if member == cls.rep:
                continue
            if _decomposition_counts(r, member.lo, member.hi) != rep_counts[cid]:
                raise InternalConsistencyError(
                    f"class {cls.key} decomposes differently at "
                    f"{r.interval_label(member)} than at its representative"
                )

    mult: dict[tuple[int, int], SparseVector] = {}
    multiplicities: dict[tuple[int, int], int] = {}
    for cid, counts in rep_counts.items():
        for legs, n in counts.items():
            if legs in multiplicities:
                if mult[legs].get(cid) == 0:
                    raise InternalConsistencyError(
                        f"legs {legs} concatenate into two distinct classes"
                    )
                continue
            multiplicities[legs] = n
            mult[legs] = SparseVector({cid: Fraction(n)})

    points = r.point_class_ids()
    if len(points) != 1:
        raise IncompatibleRelation("relation is not unitary", verdict)
    point_class = points[0]

    comult = {
        cid: SparseTensor({legs: Fraction(n) for legs, n in counts.items()})
        for cid, counts in rep_counts.items()
    }
    counit = {cid: (ONE if cid == point_class else Fraction(0)) for cid in range(r.num_classes)}

    bialgebra = FiniteBialgebra(
        FiniteAlgebra(r.num_classes, mult, SparseVector.unit(point_class)),
        FiniteCoalgebra(r.num_classes, comult, counit),
    )
    return IntervalBialgebra(r, bialgebra, multiplicities, point_class)


def hopf_square(ib: IntervalBialgebra, cid: int) -> tuple[Rational, int]:
    """Eigenvalue of the multiply-after-comultiply square map on a class.

    Evaluated on the representative interval, where concatenating each
    splitting returns the interval itself once, so the eigenvalue is the
    interval cardinality.  (Composing the class-level structure maps instead
    multiplies each splitting by its concatenation multiplicity; the two
    agree exactly when products of intervals are intervals, see
    check_interval_product_condition.)
    """
    rep = ib.relation.classes[cid].rep
    size = len(interval_elements(ib.relation.poset, rep.lo, rep.hi))
    return Fraction(size), cid


def hopf_square_class_level(ib: IntervalBialgebra, cid: int) -> SparseVector:
    """The class-level composition: multiply the coproduct of the class."""
    a = ib.bialgebra.algebra
    out = SparseVector()
    for (i, j), v in ib.bialgebra.coalgebra.comult.get(cid, SparseTensor()).entries.items():
        out = out + a.product_units(i, j).scale(v)
    return out


def check_interval_product_condition(ib: IntervalBialgebra) -> CheckOutcome:
    """Do products of intervals stay intervals (all multiplicities 1)?

    Scans every composable triple a <= x <= b of the underlying poset and
    reports the first splitting whose concatenation multiplicity is not 1.
    """
    r = ib.relation
    p = r.poset
    for a in range(p.n):
        for b in range(p.n):
            if not p.leq(a, b):
                continue
            for x in interval_elements(p, a, b):
                legs = (r.cid(a, x), r.cid(x, b))
                n = ib.multiplicities.get(legs, 0)
                if n != 1:
                    return CheckOutcome(
                        False,
                        {
                            "triple": [p.labels[a], p.labels[x], p.labels[b]],
                            "legs": [r.key_of(legs[0]), r.key_of(legs[1])],
                            "multiplicity": n,
                        },
                    )
    return CheckOutcome(True)
