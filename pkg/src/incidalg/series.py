"""Truncated formal power series and Dirichlet series with exact coefficients.

Realizes the generating-function views of incidence functions on the three
classic families (chains, subset lattices with the cardinality relation,
divisor lattices with the ratio relation), Bernoulli numbers two independent
ways, and the classical Mobius function by Dirichlet inversion cross-checked
against the factorization formula.

Truncation rule: power-series results are valid modulo X^(N+1), Dirichlet
results modulo coefficients beyond the bound N.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .errors import BoundExceeded, DimensionMismatch, EngineError
from .incidence import IncidenceFunction, star_inverse
from .linalg import ONE, ZERO, Rational, format_rational

BERNOULLI_MAX = 60
BERNOULLI_LATTICE_LIMIT = 10
CLASSICAL_MOBIUS_MAX = 1_000_000


@dataclass(frozen=True)
class TruncatedPowerSeries:
    """Coefficients c0..cN of a power series mod X^(N+1)."""

    coeffs: tuple[Rational, ...]

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, n: int) -> Rational:
        return self.coeffs[n]

    def to_json(self) -> list[str]:
        return [format_rational(c) for c in self.coeffs]


def power_series(coeffs) -> TruncatedPowerSeries:
    return TruncatedPowerSeries(tuple(Fraction(c) for c in coeffs))


def ps_one(order: int) -> TruncatedPowerSeries:
    return power_series([ONE] + [ZERO] * order)


def ps_mul(f: TruncatedPowerSeries, g: TruncatedPowerSeries) -> TruncatedPowerSeries:
    """Cauchy product truncated at the common order."""
    if f.order != g.order:
        raise DimensionMismatch("power series orders differ")
    n = f.order
    out = [ZERO] * (n + 1)
    for i, a in enumerate(f.coeffs):
        if a == 0:
            continue
        for j in range(n + 1 - i):
            b = g.coeffs[j]
            if b != 0:
                out[i + j] += a * b
    return power_series(out)


def ps_inverse(f: TruncatedPowerSeries) -> Optional[TruncatedPowerSeries]:
    """Multiplicative inverse mod X^(N+1); None when the constant term is 0."""
    if f.coeffs[0] == 0:
        return None
    n = f.order
    inv0 = ONE / f.coeffs[0]
    out = [inv0] + [ZERO] * n
    for m in range(1, n + 1):
        acc = ZERO
        for k in range(1, m + 1):
            if f.coeffs[k] != 0:
                acc += f.coeffs[k] * out[m - k]
        out[m] = -inv0 * acc
    return power_series(out)


@dataclass(frozen=True)
class TruncatedDirichletSeries:
    """Coefficients phi_1..phi_N of a formal Dirichlet series."""

    coeffs: tuple[Rational, ...]

    @property
    def bound(self) -> int:
        return len(self.coeffs)

    def coeff(self, n: int) -> Rational:
        if not 1 <= n <= self.bound:
            raise DimensionMismatch(f"Dirichlet index {n} outside 1..{self.bound}")
        return self.coeffs[n - 1]

    def to_json(self) -> list[str]:
        return [format_rational(c) for c in self.coeffs]


def dirichlet_series(coeffs) -> TruncatedDirichletSeries:
    return TruncatedDirichletSeries(tuple(Fraction(c) for c in coeffs))


def dirichlet_unit(bound: int) -> TruncatedDirichletSeries:
    return dirichlet_series([ONE] + [ZERO] * (bound - 1))


def dirichlet_mul(
    f: TruncatedDirichletSeries, g: TruncatedDirichletSeries
) -> TruncatedDirichletSeries:
    """(f.g)_n = sum over d | n of f_d g_(n/d)."""
    if f.bound != g.bound:
        raise DimensionMismatch("Dirichlet series bounds differ")
    n = f.bound
    out = [ZERO] * n
    for d in range(1, n + 1):
        a = f.coeff(d)
        if a == 0:
            continue
        for m in range(d, n + 1, d):
            b = g.coeff(m // d)
            if b != 0:
                out[m - 1] += a * b
    return dirichlet_series(out)


def dirichlet_inverse(
    f: TruncatedDirichletSeries,
) -> Optional[TruncatedDirichletSeries]:
    """Inverse for the Dirichlet product; None when phi_1 = 0."""
    if f.coeff(1) == 0:
        return None
    n = f.bound
    divisors: list[list[int]] = [[] for _ in range(n + 1)]
    for d in range(1, n + 1):
        for m in range(d, n + 1, d):
            divisors[m].append(d)
    inv1 = ONE / f.coeff(1)
    out = [ZERO] * (n + 1)
    out[1] = inv1
    for m in range(2, n + 1):
        acc = ZERO
        for d in divisors[m]:
            if d < m and out[d] != 0:
                acc += out[d] * f.coeff(m // d)
        out[m] = -inv1 * acc
    return dirichlet_series(out[1:])


def _bernoulli_by_series(n: int) -> list[Rational]:
    # inverse of (e^X - 1)/X, coefficients X^k/(k+1)!, then scale back by k!
    f = power_series([Fraction(1, math.factorial(k + 1)) for k in range(n + 1)])
    g = ps_inverse(f)
    assert g is not None
    return [g[k] * math.factorial(k) for k in range(n + 1)]


def _bernoulli_by_incidence(n: int) -> list[Rational]:
    # invert phi(I_k) = 1/(k+1) inside the subset-lattice incidence algebra,
    # continuing with the same binomial-convolution recursion past the
    # lattice truncation
    from .posets import boolean_lattice
    from .relations import relation_from_key

    m = min(n, BERNOULLI_LATTICE_LIMIT)
    relation = relation_from_key(boolean_lattice(m), "cardinality")
    phi = IncidenceFunction.from_callable(relation, lambda key: Fraction(1, int(key) + 1))
    psi = star_inverse(phi)
    assert psi is not None
    values = [psi.by_key(str(k)) for k in range(m + 1)]
    for k in range(m + 1, n + 1):
        acc = ZERO
        for i in range(1, k + 1):
            acc += math.comb(k, i) * Fraction(1, i + 1) * values[k - i]
        values.append(-acc)
    return values


def bernoulli(n: int) -> list[Rational]:
    """Bernoulli numbers b0..bn, computed two independent ways and compared."""
    if n < 0 or n > BERNOULLI_MAX:
        raise BoundExceeded(f"bernoulli bound must be within 0..{BERNOULLI_MAX}")
    via_series = _bernoulli_by_series(n)
    via_incidence = _bernoulli_by_incidence(n)
    if via_series != via_incidence:
        raise EngineError("bernoulli computations disagree")
    return via_series


def _smallest_prime_factors(n: int) -> list[int]:
    spf = list(range(n + 1))
    for p in range(2, int(n**0.5) + 1):
        if spf[p] == p:
            for m in range(p * p, n + 1, p):
                if spf[m] == m:
                    spf[m] = p
    return spf


def mobius_by_factorization(n: int) -> list[int]:
    """mu_1..mu_n from the factorization formula: (-1)^k on squarefree, else 0."""
    spf = _smallest_prime_factors(n)
    out = [0] * (n + 1)
    out[1] = 1
    for m in range(2, n + 1):
        p = spf[m]
        rest = m // p
        out[m] = 0 if rest % p == 0 else -out[rest]
    return out[1:]


def classical_mobius(n: int) -> list[Rational]:
    """mu_1..mu_n by Dirichlet inversion of all-ones, checked against the formula."""
    if n < 1 or n > CLASSICAL_MOBIUS_MAX:
        raise BoundExceeded(f"classical mobius bound must be within 1..{CLASSICAL_MOBIUS_MAX}")
    inv = dirichlet_inverse(dirichlet_series([ONE] * n))
    assert inv is not None
    formula = mobius_by_factorization(n)
    if [int(c) for c in inv.coeffs] != formula:
        raise EngineError("Dirichlet inversion disagrees with the factorization formula")
    return list(inv.coeffs)


SERIES_FAMILIES = ("chain", "boolean-cardinality", "divisor-ratio")


def incidence_to_series(
    phi: IncidenceFunction, family: str, bound: Optional[int] = None
):
    """Generating-function image of an incidence function.

    chain:                coefficient of X^n is phi(I_n)
    boolean-cardinality:  coefficient of X^n is phi(I_n)/n!
    divisor-ratio:        Dirichlet coefficient at n is phi([[1,n]]),
                          zero when n is not a lattice ratio

    The map turns convolution into the corresponding series product at
    truncation; for the divisor family that holds at every index whose
    factorizations only involve lattice ratios.
    """
    r = phi.relation
    if family not in SERIES_FAMILIES:
        raise EngineError(f"unknown series family {family!r}; one of {SERIES_FAMILIES}")
    if family == "chain":
        if r.name != "diff":
            raise EngineError("chain family needs the diff relation")
        keys = sorted(int(c.key) for c in r.classes)
        top = keys[-1]
        order = top if bound is None else bound
        if order > top:
            raise BoundExceeded(f"chain truncation {order} exceeds largest class {top}")
        return power_series([phi.by_key(str(k)) for k in range(order + 1)])
    if family == "boolean-cardinality":
        if r.name != "cardinality":
            raise EngineError("boolean family needs the cardinality relation")
        keys = sorted(int(c.key) for c in r.classes)
        top = keys[-1]
        order = top if bound is None else bound
        if order > top:
            raise BoundExceeded(f"series truncation {order} exceeds largest class {top}")
        return power_series(
            [phi.by_key(str(k)) / math.factorial(k) for k in range(order + 1)]
        )
    if r.name != "ratio":
        raise EngineError("divisor family needs the ratio relation")
    ratios = {int(c.key): cid for cid, c in enumerate(r.classes)}
    top = max(ratios)
    limit = top if bound is None else bound
    coeffs = [phi.value(ratios[m]) if m in ratios else ZERO for m in range(1, limit + 1)]
    return dirichlet_series(coeffs)
