"""Maps between interval-class spaces and the induced pullbacks of incidence
functions.

Two constructions are supported: the projection from a finer relation onto a
coarser one on the same poset, and the embedding of a squarefree divisor
lattice into the subset lattice of its primes.  Both induce pullbacks that
multiply: pullback(phi * psi) = pullback(phi) * pullback(psi).
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from .errors import BoundExceeded, EngineError
from .incidence import IncidenceFunction, mobius, star, unit_function
from .posets import Interval, divisor_lattice, subset_poset
from .relations import IntervalRelation, relation_from_key


@dataclass(frozen=True)
class ClassMap:
    source: IntervalRelation
    target: IntervalRelation
    mapping: dict[int, int]

    def to_json(self) -> dict:
        return {
            "map": {
                self.source.key_of(s): self.target.key_of(t)
                for s, t in sorted(self.mapping.items())
            }
        }


def refinement_projection(
    fine: IntervalRelation, coarse: IntervalRelation
) -> ClassMap:
    """Class map induced by the identity on intervals; fine must refine coarse."""
    if fine.poset is not coarse.poset and (
        fine.poset.labels != coarse.poset.labels or fine.poset.up != coarse.poset.up
    ):
        raise EngineError("refinement projection needs relations on the same poset")
    mapping: dict[int, int] = {}
    for cid, cls in enumerate(fine.classes):
        target = coarse.class_of[cls.rep]
        for member in cls.members:
            if coarse.class_of[member] != target:
                raise EngineError(
                    "not a refinement: "
                    f"{fine.interval_label(cls.rep)} and {fine.interval_label(member)} "
                    f"share a class but land in {coarse.key_of(target)} and "
                    f"{coarse.key_of(coarse.class_of[member])}"
                )
        mapping[cid] = target
    return ClassMap(fine, coarse, mapping)


def dual_pullback(g: ClassMap, phi_target: IncidenceFunction) -> IncidenceFunction:
    """Compose an incidence function on the target with the class map."""
    if not phi_target.relation.same_as(g.target):
        raise EngineError("function lives on a different relation than the map target")
    return IncidenceFunction(
        g.source, {s: phi_target.value(t) for s, t in g.mapping.items()}
    )


def _random_function(r: IntervalRelation, rng: random.Random) -> IncidenceFunction:
    return IncidenceFunction(
        r,
        {
            cid: Fraction(rng.randint(-6, 6), rng.randint(1, 4))
            for cid in range(r.num_classes)
        },
    )


def check_pullback_morphism(
    g: ClassMap, samples: int | None = None, seed: int = 0
) -> bool:
    """pullback(phi * psi) == pullback(phi) * pullback(psi), and unit to unit.

    With ``samples=None`` the check is exhaustive over all pairs of
    indicator functions of target classes (which spans all pairs by
    bilinearity); otherwise it runs the requested number of random pairs.
    """
    if dual_pullback(g, unit_function(g.target)) != unit_function(g.source):
        return False

    def holds(phi: IncidenceFunction, psi: IncidenceFunction) -> bool:
        return dual_pullback(g, star(phi, psi)) == star(
            dual_pullback(g, phi), dual_pullback(g, psi)
        )

    if samples is None:
        for i in range(g.target.num_classes):
            phi = IncidenceFunction(g.target, {i: Fraction(1)})
            for j in range(g.target.num_classes):
                psi = IncidenceFunction(g.target, {j: Fraction(1)})
                if not holds(phi, psi):
                    return False
        return True
    rng = random.Random(seed)
    return all(
        holds(_random_function(g.target, rng), _random_function(g.target, rng))
        for _ in range(samples)
    )


def extension_along(g: ClassMap, phi_source: IncidenceFunction) -> IncidenceFunction:
    """Inverse transport along a bijective class map (squarefree matching)."""
    if not phi_source.relation.same_as(g.source):
        raise EngineError("function lives on a different relation than the map source")
    inverse: dict[int, int] = {}
    for s, t in g.mapping.items():
        if t in inverse:
            raise EngineError("class map is not injective; extension undefined")
        inverse[t] = s
    if len(inverse) != g.target.num_classes:
        raise EngineError("class map is not surjective; extension undefined")
    return IncidenceFunction(
        g.target, {t: phi_source.value(s) for t, s in inverse.items()}
    )


def _prime_factors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def squarefree_restriction(n: int) -> tuple[ClassMap, dict]:
    """Match the ratio classes of a squarefree divisor lattice with the
    setdiff classes of the subset lattice of its primes (P -> product of P),
    and verify the induced pullback behaves like restriction.

    Returns the class map (subset side as source, divisor side as target)
    and a verification report: multiplicativity of the pullback (exhaustive
    over class pairs), Mobius restricting to Mobius, and pullback after
    extension being the identity.
    """
    primes = _prime_factors(n)
    prod = 1
    for p in primes:
        prod *= p
    if prod != n:
        raise BoundExceeded(f"{n} is not squarefree")

    divisor_rel = relation_from_key(divisor_lattice(n), "ratio")
    subset_rel = relation_from_key(subset_poset(primes), "setdiff")

    # map each subset class via the image of its representative interval
    divisor_poset = divisor_rel.poset
    subset_poset_ = subset_rel.poset
    from .relations import _parse_subset  # label structure shared with setdiff keys

    mapping: dict[int, int] = {}
    for cid, cls in enumerate(subset_rel.classes):
        images = set()
        for member in cls.members:
            lo = _parse_subset(subset_poset_.labels[member.lo])
            hi = _parse_subset(subset_poset_.labels[member.hi])
            lo_i = divisor_poset.index(str(_product(lo)))
            hi_i = divisor_poset.index(str(_product(hi)))
            images.add(divisor_rel.class_of[Interval(lo_i, hi_i)])
        if len(images) != 1:
            raise EngineError(
                f"subset class {cls.key} maps to several ratio classes: not interval-closed"
            )
        mapping[cid] = images.pop()
    gamma = ClassMap(subset_rel, divisor_rel, mapping)

    report = {
        "pullback_morphism": check_pullback_morphism(gamma),
        "mobius_matches": dual_pullback(gamma, mobius(divisor_rel)) == mobius(subset_rel),
        "roundtrip_identity": _roundtrip_identity(gamma),
    }
    return gamma, report


def _product(values) -> int:
    out = 1
    for v in values:
        out *= v
    return out


def _roundtrip_identity(g: ClassMap, cases: int = 20, seed: int = 7) -> bool:
    rng = random.Random(seed)
    for _ in range(cases):
        phi = _random_function(g.source, rng)
        if dual_pullback(g, extension_along(g, phi)) != phi:
            return False
    return True
