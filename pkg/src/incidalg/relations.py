"""Equivalence relations on the interval set of a poset, with canonical keys.

A relation partitions all nonempty intervals into classes.  Each class gets
a canonical key string, a representative (its lexicographically smallest
member) and the class list is ordered by (representative interval size,
natural key), which keeps every downstream serialization stable.

The three compatibility checks decide whether the quotient carries the
interval bialgebra structure:

* unitary          - all one-point intervals share a class;
* nabla-compatible - equivalent composable leg pairs concatenate into
                     equivalent intervals (checked via the induced map
                     (leg class, leg class) -> composite class);
* delta-compatible - equivalent intervals admit a bijection matching lower
                     and upper sub-interval classes pointwise (decided by
                     bipartite matching, one certificate per member against
                     the class representative).
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Callable, NamedTuple, Optional

from .errors import BoundExceeded, EngineError, LabelStructureError
from .posets import Interval, Poset, all_intervals, interval_elements

ISOTYPE_MAX_INTERVAL = 8

BUILTIN_RELATIONS = (
    "trivial",
    "points",
    "setdiff",
    "cardinality",
    "diff",
    "ratio",
    "isotype",
)


class IntervalClass(NamedTuple):
    key: str
    sort_key: tuple
    rep: Interval
    members: tuple[Interval, ...]


class IntervalRelation:
    """A partition of Intv(P) into keyed classes with a total class_of map."""

    __slots__ = ("poset", "classes", "class_of", "name", "spec")

    def __init__(
        self,
        poset: Poset,
        classes: list[IntervalClass],
        name: Optional[str] = None,
        spec: Optional[dict] = None,
    ):
        self.poset = poset
        self.classes = list(classes)
        self.class_of: dict[Interval, int] = {}
        for cid, cls in enumerate(self.classes):
            for member in cls.members:
                self.class_of[member] = cid
        self.name = name
        self.spec = spec or ({"builtin": name} if name else None)

    @property
    def num_classes(self) -> int:
        return len(self.classes)

    def same_as(self, other: "IntervalRelation") -> bool:
        """Structural equality: same poset data, same partition, same order."""
        return self is other or (
            self.poset.labels == other.poset.labels
            and self.poset.up == other.poset.up
            and [c.members for c in self.classes] == [c.members for c in other.classes]
        )

    def cid(self, a: int, b: int) -> int:
        return self.class_of[Interval(a, b)]

    def key_of(self, cid: int) -> str:
        return self.classes[cid].key

    def rep_elements(self, cid: int) -> list[int]:
        rep = self.classes[cid].rep
        return interval_elements(self.poset, rep.lo, rep.hi)

    def point_class_ids(self) -> list[int]:
        seen = []
        for a in range(self.poset.n):
            cid = self.cid(a, a)
            if cid not in seen:
                seen.append(cid)
        return sorted(seen)

    def interval_label(self, iv: Interval) -> str:
        return self.poset.interval_label(iv)

    def to_json(self) -> dict:
        return self.spec or {
            "partition": [
                [[self.poset.labels[m.lo], self.poset.labels[m.hi]] for m in cls.members]
                for cls in self.classes
            ]
        }

    def __repr__(self):
        return f"IntervalRelation({self.name or 'partition'}, classes={self.num_classes})"


def _group_classes(
    poset: Poset,
    key_fn: Callable[[Interval], tuple],
    name: Optional[str],
    spec: Optional[dict] = None,
) -> IntervalRelation:
    """Group intervals by key; key_fn returns (natural sort key, display string)."""
    groups: dict[tuple, list[Interval]] = {}
    display: dict[tuple, str] = {}
    for iv in all_intervals(poset):
        sort_key, text = key_fn(iv)
        groups.setdefault(sort_key, []).append(iv)
        display[sort_key] = text
    classes = []
    for sort_key, members in groups.items():
        members.sort()
        rep = members[0]
        size = len(interval_elements(poset, rep.lo, rep.hi))
        classes.append(
            IntervalClass(display[sort_key], (size,) + sort_key, rep, tuple(members))
        )
    classes.sort(key=lambda c: c.sort_key)
    return IntervalRelation(poset, classes, name=name, spec=spec)


_SUBSET_RE = re.compile(r"^\{([^{}]*)\}$")


def _parse_subset(label: str) -> frozenset[int]:
    m = _SUBSET_RE.match(label)
    if m is None:
        raise LabelStructureError(
            f"label {label!r} is not a subset label like '{{1,3}}'"
        )
    body = m.group(1).strip()
    if not body:
        return frozenset()
    return frozenset(int(x) for x in body.split(","))


def _parse_int(label: str) -> int:
    try:
        return int(label)
    except ValueError:
        raise LabelStructureError(f"label {label!r} is not an integer") from None


def _subset_key(poset: Poset):
    sets = [_parse_subset(lab) for lab in poset.labels]

    def key(iv: Interval) -> tuple:
        diff = sets[iv.hi] - sets[iv.lo]
        ordered = tuple(sorted(diff))
        return ((len(ordered), ordered), "{" + ",".join(map(str, ordered)) + "}")

    return key


def _cardinality_key(poset: Poset):
    sets = [_parse_subset(lab) for lab in poset.labels]

    def key(iv: Interval) -> tuple:
        n = len(sets[iv.hi] - sets[iv.lo])
        return ((n,), str(n))

    return key


def _diff_key(poset: Poset):
    values = [_parse_int(lab) for lab in poset.labels]

    def key(iv: Interval) -> tuple:
        n = values[iv.hi] - values[iv.lo]
        return ((n,), str(n))

    return key


def _ratio_key(poset: Poset):
    values = [_parse_int(lab) for lab in poset.labels]
    if any(v <= 0 for v in values):
        raise LabelStructureError("ratio needs positive integer labels")

    def key(iv: Interval) -> tuple:
        a, b = values[iv.lo], values[iv.hi]
        if b % a != 0:
            raise LabelStructureError(
                f"ratio needs divisibility-ordered labels; {b} is not a multiple of {a}"
            )
        q = b // a
        return ((q,), str(q))

    return key


def _trivial_key(poset: Poset):
    def key(iv: Interval) -> tuple:
        text = poset.interval_label(iv)
        return ((iv.lo, iv.hi), text)

    return key


def _points_key(poset: Poset):
    def key(iv: Interval) -> tuple:
        if iv.lo == iv.hi:
            return ((-1, -1), "point")
        text = poset.interval_label(iv)
        return ((iv.lo, iv.hi), text)

    return key


def _isotype_canonical(poset: Poset, elements: list[int], cache: dict) -> str:
    """Minimal adjacency bitstring of the induced subposet over all relabelings."""
    k = len(elements)
    if k > ISOTYPE_MAX_INTERVAL:
        raise BoundExceeded(
            f"isotype canonical form limited to intervals of size {ISOTYPE_MAX_INTERVAL}"
        )
    local = tuple(
        tuple(1 if poset.leq(elements[i], elements[j]) else 0 for j in range(k))
        for i in range(k)
    )
    if local in cache:
        return cache[local]
    from itertools import permutations

    best = None
    for perm in permutations(range(k)):
        bits = "".join(
            str(local[perm[i]][perm[j]]) for i in range(k) for j in range(k)
        )
        if best is None or bits < best:
            best = bits
    result = f"{k}:{best}"
    cache[local] = result
    return result


def _isotype_key(poset: Poset):
    cache: dict = {}

    def key(iv: Interval) -> tuple:
        text = _isotype_canonical(poset, interval_elements(poset, iv.lo, iv.hi), cache)
        return ((text,), text)

    return key


_KEY_BUILDERS = {
    "trivial": _trivial_key,
    "points": _points_key,
    "setdiff": _subset_key,
    "cardinality": _cardinality_key,
    "diff": _diff_key,
    "ratio": _ratio_key,
    "isotype": _isotype_key,
}


def relation_from_key(poset: Poset, key: str) -> IntervalRelation:
    """One of the builtin relations; raises when the poset labels do not fit."""
    if key not in _KEY_BUILDERS:
        raise EngineError(
            f"unknown relation {key!r}; builtins: {', '.join(BUILTIN_RELATIONS)}"
        )
    return _group_classes(poset, _KEY_BUILDERS[key](poset), name=key)


def relation_from_partition(
    poset: Poset, groups: list[list[tuple[str, str]]]
) -> IntervalRelation:
    """Relation given as an explicit partition of intervals (label pairs)."""
    assigned: dict[Interval, int] = {}
    member_lists: list[list[Interval]] = []
    for gid, group in enumerate(groups):
        members = []
        for lo_lab, hi_lab in group:
            iv = Interval(poset.index(lo_lab), poset.index(hi_lab))
            if not poset.leq(iv.lo, iv.hi):
                raise EngineError(f"pair {(lo_lab, hi_lab)} is not an interval")
            if iv in assigned:
                raise EngineError(f"interval {poset.interval_label(iv)} listed twice")
            assigned[iv] = gid
            members.append(iv)
        if not members:
            raise EngineError("empty partition block")
        member_lists.append(members)
    missing = [iv for iv in all_intervals(poset) if iv not in assigned]
    if missing:
        raise EngineError(
            f"partition misses interval {poset.interval_label(missing[0])}"
        )
    classes = []
    for members in member_lists:
        members.sort()
        rep = members[0]
        size = len(interval_elements(poset, rep.lo, rep.hi))
        key = poset.interval_label(rep)
        classes.append(IntervalClass(key, (size, key), rep, tuple(members)))
    classes.sort(key=lambda c: c.sort_key)
    spec = {
        "partition": [
            [[poset.labels[m.lo], poset.labels[m.hi]] for m in cls.members]
            for cls in classes
        ]
    }
    return IntervalRelation(poset, classes, name=None, spec=spec)


@dataclass(frozen=True)
class CheckOutcome:
    ok: bool
    witness: Optional[dict] = None

    def to_json(self) -> dict:
        return {"ok": self.ok, "witness": self.witness}


@dataclass(frozen=True)
class CompatibilityVerdict:
    unitary: CheckOutcome
    nabla: CheckOutcome
    delta: CheckOutcome

    @property
    def ok(self) -> bool:
        return self.unitary.ok and self.nabla.ok and self.delta.ok

    def to_json(self) -> dict:
        return {
            "compatible": self.ok,
            "unitary": self.unitary.to_json(),
            "nabla": self.nabla.to_json(),
            "delta": self.delta.to_json(),
        }


def check_unitary(r: IntervalRelation) -> CheckOutcome:
    """All one-point intervals must share a single class."""
    points = r.point_class_ids()
    if len(points) <= 1:
        return CheckOutcome(True)
    first = r.classes[points[0]].rep
    for a in range(r.poset.n):
        if r.cid(a, a) != points[0]:
            return CheckOutcome(
                False,
                {
                    "intervals": [r.interval_label(first), r.interval_label(Interval(a, a))],
                    "reason": "one-point intervals in distinct classes",
                },
            )
    raise AssertionError("unreachable")


def _composable_triples(p: Poset):
    for a in range(p.n):
        up_a = p.up[a]
        rest = up_a
        while rest:
            b = (rest & -rest).bit_length() - 1
            rest &= rest - 1
            up_b = p.up[b]
            while up_b:
                c = (up_b & -up_b).bit_length() - 1
                up_b &= up_b - 1
                yield (a, b, c)


def check_nabla_compatible(r: IntervalRelation) -> CheckOutcome:
    """Concatenation must descend to classes.

    Equivalent formulation used here: over all composable triples a<=b<=c,
    the map (class[a,b], class[b,c]) -> class[a,c] is well defined.  The
    witness is the lexicographically smallest conflicting pair of triples.
    """
    p = r.poset
    triples = list(_composable_triples(p))
    first_seen: dict[tuple[int, int], tuple] = {}
    conflicted: set[tuple[int, int]] = set()
    for t in triples:
        a, b, c = t
        legs = (r.cid(a, b), r.cid(b, c))
        comp = r.cid(a, c)
        if legs not in first_seen:
            first_seen[legs] = (t, comp)
        elif first_seen[legs][1] != comp:
            conflicted.add(legs)
    if not conflicted:
        return CheckOutcome(True)
    # every triple of a conflicted group has a conflict partner, so the
    # smallest witness pair starts at the smallest first-seen triple among
    # conflicted groups and pairs it with that group's first dissenter
    legs = min(conflicted, key=lambda g: first_seen[g][0])
    base_t, base_comp = first_seen[legs]
    for t in triples:
        a, b, c = t
        if (r.cid(a, b), r.cid(b, c)) == legs and r.cid(a, c) != base_comp:
            labels = p.labels
            return CheckOutcome(
                False,
                {
                    "triples": [
                        [labels[base_t[0]], labels[base_t[1]], labels[base_t[2]]],
                        [labels[t[0]], labels[t[1]], labels[t[2]]],
                    ],
                    "composites": [r.key_of(base_comp), r.key_of(r.cid(t[0], t[2]))],
                },
            )
    raise AssertionError("unreachable")


def _matching(left: list[int], right: list[int], allowed: Callable[[int, int], bool]) -> Optional[dict[int, int]]:
    """Perfect matching in the bipartite graph, by augmenting paths."""
    if len(left) != len(right):
        return None
    match_right: dict[int, int] = {}

    def augment(u: int, seen: set[int]) -> bool:
        for v in right:
            if v in seen or not allowed(u, v):
                continue
            seen.add(v)
            if v not in match_right or augment(match_right[v], seen):
                match_right[v] = u
                return True
        return False

    for u in left:
        if not augment(u, set()):
            return None
    return {u: v for v, u in match_right.items()}


def delta_bijection(
    r: IntervalRelation, first: Interval, second: Interval
) -> Optional[dict[int, int]]:
    """A bijection between the two intervals matching lower and upper classes.

    Returns a map element-of-first -> element-of-second, or None when no
    such bijection exists.  The two intervals need not be equivalent under
    ``r`` for the call to make sense, but compatible relations admit a
    bijection exactly for equivalent pairs.
    """
    p = r.poset
    xs = interval_elements(p, first.lo, first.hi)
    ys = interval_elements(p, second.lo, second.hi)

    def allowed(x: int, y: int) -> bool:
        return (
            r.cid(first.lo, x) == r.cid(second.lo, y)
            and r.cid(x, first.hi) == r.cid(y, second.hi)
        )

    return _matching(xs, ys, allowed)


def check_delta_compatible(r: IntervalRelation) -> CheckOutcome:
    """Each member of each class must match its representative.

    Matching against the representative suffices: the defining bijections
    compose through it, and a member with no matching to the representative
    is itself one half of a failing pair.
    """
    for cls in r.classes:
        for member in cls.members:
            if member == cls.rep:
                continue
            if delta_bijection(r, cls.rep, member) is None:
                return CheckOutcome(
                    False,
                    {
                        "intervals": [r.interval_label(cls.rep), r.interval_label(member)],
                        "class": cls.key,
                        "reason": "no class-preserving bijection",
                    },
                )
    return CheckOutcome(True)


def check_compatibility(r: IntervalRelation) -> CompatibilityVerdict:
    return CompatibilityVerdict(
        unitary=check_unitary(r),
        nabla=check_nabla_compatible(r),
        delta=check_delta_compatible(r),
    )


def find_nabla_incompatible_poset(max_size: int = 7):
    """Smallest naturally-labelled poset whose isotype relation fails the
    concatenation check; exhaustive over posets admitting the identity as a
    linear extension (every finite poset does, up to relabelling).

    Returns (poset, outcome) with a failing witness, or None below the bound.
    """
    from .posets import Poset as _Poset

    for n in range(1, max_size + 1):
        pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
        for bits in range(1 << len(pairs)):
            up = [1 << i for i in range(n)]
            for idx, (i, j) in enumerate(pairs):
                if (bits >> idx) & 1:
                    up[i] |= 1 << j
            # transitivity filter
            ok = True
            for i in range(n):
                mask = up[i]
                rest = mask
                while rest:
                    j = (rest & -rest).bit_length() - 1
                    rest &= rest - 1
                    if up[j] & ~mask:
                        ok = False
                        break
                if not ok:
                    break
            if not ok:
                continue
            poset = _Poset([f"p{i}" for i in range(n)], up)
            rel = relation_from_key(poset, "isotype")
            outcome = check_nabla_compatible(rel)
            if not outcome.ok:
                return poset, outcome
    return None
