"""Finite posets: construction, interval enumeration, linear extensions, atoms.

Elements are dense indices 0..n-1 with a label table; the order is kept as
one bitmask per element (``up[i]`` has bit j set iff i <= j), so order
queries are O(1) word operations.  Posets validate reflexivity,
antisymmetry and transitivity on construction and are immutable afterwards.
"""

from __future__ import annotations

from typing import NamedTuple

from .errors import BoundExceeded, OrderError

BOOLEAN_MAX = 12
DIVISOR_MAX = 10_000


class Interval(NamedTuple):
    lo: int
    hi: int


class Poset:
    """Finite partial order over labelled elements."""

    __slots__ = ("labels", "up", "down", "label_index")

    def __init__(self, labels: list[str], up: list[int]):
        n = len(labels)
        if len(set(labels)) != n:
            raise OrderError("duplicate label")
        if len(up) != n:
            raise OrderError("order matrix size does not match label count")
        down = [0] * n
        for i in range(n):
            mask = up[i]
            if not (mask >> i) & 1:
                raise OrderError(f"not reflexive at {labels[i]}")
            rest = mask & ~(1 << i)
            while rest:
                j = (rest & -rest).bit_length() - 1
                rest &= rest - 1
                if (up[j] >> i) & 1:
                    raise OrderError("not a partial order")  # antisymmetry
                if up[j] & ~mask:
                    raise OrderError(f"not transitive at {labels[i]} <= {labels[j]}")
            rest = mask
            while rest:
                j = (rest & -rest).bit_length() - 1
                rest &= rest - 1
                down[j] |= 1 << i
        self.labels = list(labels)
        self.up = list(up)
        self.down = down
        self.label_index = {lab: i for i, lab in enumerate(labels)}

    @property
    def n(self) -> int:
        return len(self.labels)

    def leq(self, a: int, b: int) -> bool:
        return bool((self.up[a] >> b) & 1)

    def index(self, label: str) -> int:
        try:
            return self.label_index[label]
        except KeyError:
            raise OrderError(f"unknown element {label!r}") from None

    def interval_label(self, iv: Interval) -> str:
        return f"[{self.labels[iv.lo]},{self.labels[iv.hi]}]"

    def covers(self) -> list[tuple[str, str]]:
        """Hasse edges: the transitive reduction of the strict order."""
        out = []
        for a in range(self.n):
            for b in range(self.n):
                if a == b or not self.leq(a, b):
                    continue
                between = self.up[a] & self.down[b] & ~(1 << a) & ~(1 << b)
                if between == 0:
                    out.append((self.labels[a], self.labels[b]))
        return out

    def to_json(self) -> dict:
        return {"elements": list(self.labels), "covers": [list(c) for c in self.covers()]}

    def __repr__(self):
        return f"Poset({self.labels!r})"


def poset_from_covers(labels: list[str], covers: list[tuple[str, str]]) -> Poset:
    """Poset given by its Hasse diagram; leq is the reflexive-transitive closure."""
    n = len(labels)
    if len(set(labels)) != n:
        raise OrderError("duplicate label")
    index = {lab: i for i, lab in enumerate(labels)}
    up = [1 << i for i in range(n)]
    for a, b in covers:
        if a not in index or b not in index:
            raise OrderError(f"cover ({a!r},{b!r}) references unknown label")
        up[index[a]] |= 1 << index[b]
    changed = True
    while changed:
        changed = False
        for i in range(n):
            mask = up[i]
            rest = mask
            acc = mask
            while rest:
                j = (rest & -rest).bit_length() - 1
                rest &= rest - 1
                acc |= up[j]
            if acc != mask:
                up[i] = acc
                changed = True
    for i in range(n):
        for j in range(i + 1, n):
            if (up[i] >> j) & 1 and (up[j] >> i) & 1:
                raise OrderError("not a partial order")
    return Poset(labels, up)


def interval_elements(p: Poset, a: int, b: int) -> list[int]:
    """All x with a <= x <= b, in index order; contains a and b."""
    if not p.leq(a, b):
        raise OrderError(
            f"empty interval: {p.labels[a]} is not below {p.labels[b]}"
        )
    mask = p.up[a] & p.down[b]
    out = []
    while mask:
        x = (mask & -mask).bit_length() - 1
        mask &= mask - 1
        out.append(x)
    return out


def all_intervals(p: Poset) -> list[Interval]:
    """Every pair (a, b) with a <= b, in lexicographic order."""
    out = []
    for a in range(p.n):
        mask = p.up[a]
        while mask:
            b = (mask & -mask).bit_length() - 1
            mask &= mask - 1
            out.append(Interval(a, b))
    return out


def linear_extension(p: Poset) -> list[int]:
    """Topological order of the elements; ties broken by original index."""
    n = p.n
    remaining = (1 << n) - 1
    order = []
    placed = 0
    while remaining:
        for i in range(n):
            if (remaining >> i) & 1 and (p.down[i] & remaining) == (1 << i):
                order.append(i)
                remaining &= ~(1 << i)
                break
        if len(order) == placed:  # no minimal element left: cannot happen on a poset
            raise OrderError("not a partial order")
        placed = len(order)
    return order


def minimum(p: Poset) -> int:
    """The unique minimal element, or an error when there is none."""
    mins = [i for i in range(p.n) if p.down[i] == (1 << i)]
    if len(mins) != 1:
        raise OrderError(f"poset has {len(mins)} minimal elements, need exactly one")
    return mins[0]


def atoms(p: Poset) -> list[int]:
    """Elements a with |[0^, a]| = 2 over the unique minimum 0^."""
    zero = minimum(p)
    return [
        a
        for a in range(p.n)
        if a != zero and p.leq(zero, a) and len(interval_elements(p, zero, a)) == 2
    ]


def _subset_label(mask: int, ground: list[int]) -> str:
    members = [ground[i] for i in range(len(ground)) if (mask >> i) & 1]
    return "{" + ",".join(str(m) for m in sorted(members)) + "}"


def subset_poset(ground: list[int]) -> Poset:
    """All subsets of ``ground`` ordered by inclusion; elements in bitmask order."""
    n = len(ground)
    if n > BOOLEAN_MAX:
        raise BoundExceeded(f"subset poset ground set limited to {BOOLEAN_MAX} elements")
    size = 1 << n
    labels = [_subset_label(m, ground) for m in range(size)]
    up = [0] * size
    full = size - 1
    for a in range(size):
        free = full & ~a
        mask = 0
        s = free
        while True:  # submask walk: supersets of a are a|s for submasks s of free
            mask |= 1 << (a | s)
            if s == 0:
                break
            s = (s - 1) & free
        up[a] = mask
    return Poset(labels, up)


def boolean_lattice(n: int) -> Poset:
    """Subsets of {1..n} under inclusion."""
    if n < 0 or n > BOOLEAN_MAX:
        raise BoundExceeded(f"boolean lattice size must be within 0..{BOOLEAN_MAX}")
    return subset_poset(list(range(1, n + 1)))


def chain(n: int) -> Poset:
    """The total order 0 <= 1 <= ... <= n."""
    if n < 0:
        raise BoundExceeded("chain length must be nonnegative")
    labels = [str(i) for i in range(n + 1)]
    up = [((1 << (n + 1)) - 1) & ~((1 << i) - 1) for i in range(n + 1)]
    return Poset(labels, up)


def divisors_of(n: int) -> list[int]:
    out = [d for d in range(1, n + 1) if n % d == 0]
    return out


def divisor_lattice(n: int) -> Poset:
    """Divisors of n ordered by divisibility."""
    if n < 1 or n > DIVISOR_MAX:
        raise BoundExceeded(f"divisor lattice argument must be within 1..{DIVISOR_MAX}")
    divs = divisors_of(n)
    labels = [str(d) for d in divs]
    up = [0] * len(divs)
    for i, a in enumerate(divs):
        for j, b in enumerate(divs):
            if b % a == 0:
                up[i] |= 1 << j
    return Poset(labels, up)


def antichain_with_zero(n: int) -> Poset:
    """n pairwise incomparable elements above a common minimum 0^."""
    if n < 0:
        raise BoundExceeded("antichain size must be nonnegative")
    labels = ["0"] + [f"a{i}" for i in range(1, n + 1)]
    full = (1 << (n + 1)) - 1
    up = [full] + [1 << i for i in range(1, n + 1)]
    return Poset(labels, up)
