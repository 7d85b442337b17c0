import math
import random
from fractions import Fraction

import pytest

from conftest import rand_incidence
from incidalg import (
    BoundExceeded,
    bernoulli,
    chain,
    classical_mobius,
    dirichlet_inverse,
    dirichlet_mul,
    dirichlet_series,
    divisor_lattice,
    incidence_to_series,
    mobius,
    mobius_by_factorization,
    power_series,
    ps_inverse,
    ps_mul,
    relation_from_key,
    star,
    zeta,
)
from incidalg.errors import EngineError
from incidalg.series import dirichlet_unit, ps_one

N = 10


def test_geometric_series_inverse():
    one_minus_x = power_series([1, -1] + [0] * (N - 1))
    geo = ps_inverse(one_minus_x)
    assert geo.coeffs == tuple(Fraction(1) for _ in range(N + 1))
    assert ps_mul(one_minus_x, geo) == ps_one(N)


def test_exponential_inverse_alternates():
    e = power_series([Fraction(1, math.factorial(k)) for k in range(N + 1)])
    inv = ps_inverse(e)
    assert inv.coeffs == tuple(Fraction((-1) ** k, math.factorial(k)) for k in range(N + 1))


def test_ps_inverse_of_one():
    assert ps_inverse(ps_one(5)) == ps_one(5)


def test_ps_inverse_absent_when_constant_term_zero():
    assert ps_inverse(power_series([0, 1, 0])) is None


def test_bernoulli_values():
    values = bernoulli(10)
    expected = [
        Fraction(1), Fraction(-1, 2), Fraction(1, 6), Fraction(0), Fraction(-1, 30),
        Fraction(0), Fraction(1, 42), Fraction(0), Fraction(-1, 30), Fraction(0),
        Fraction(5, 66),
    ]
    assert values == expected


def test_bernoulli_beyond_lattice_truncation():
    values = bernoulli(14)
    assert values[12] == Fraction(-691, 2730)
    assert values[14] == Fraction(7, 6)


def test_bernoulli_bound():
    with pytest.raises(BoundExceeded):
        bernoulli(61)


from hypothesis import given
from hypothesis import strategies as st

small_series = st.lists(
    st.fractions(max_denominator=6), min_size=6, max_size=6
).map(power_series)


@given(small_series, small_series, small_series)
def test_power_series_ring_laws(f, g, h):
    assert ps_mul(f, g) == ps_mul(g, f)
    assert ps_mul(ps_mul(f, g), h) == ps_mul(f, ps_mul(g, h))
    assert ps_mul(f, ps_one(5)) == f


def test_dirichlet_unit_and_commutativity():
    rng = random.Random(18)
    u = dirichlet_unit(20)
    for _ in range(10):
        f = dirichlet_series([Fraction(rng.randint(-4, 4), rng.randint(1, 3)) for _ in range(20)])
        g = dirichlet_series([Fraction(rng.randint(-4, 4), rng.randint(1, 3)) for _ in range(20)])
        assert dirichlet_mul(u, f) == f == dirichlet_mul(f, u)
        assert dirichlet_mul(f, g) == dirichlet_mul(g, f)


def test_dirichlet_inverse_of_ones():
    ones = dirichlet_series([Fraction(1)] * 30)
    inv = dirichlet_inverse(ones)
    assert dirichlet_mul(ones, inv) == dirichlet_unit(30)
    assert [int(c) for c in inv.coeffs[:10]] == [1, -1, -1, 0, -1, 1, -1, 0, 0, 1]


def test_dirichlet_inverse_absent():
    assert dirichlet_inverse(dirichlet_series([0, 1, 1])) is None


def test_classical_mobius_small_values():
    mu = classical_mobius(30)
    assert [int(x) for x in mu[:10]] == [1, -1, -1, 0, -1, 1, -1, 0, 0, 1]
    assert mu[29] == -1  # 30 = 2*3*5
    assert sum(int(mu[d - 1]) for d in (1, 2, 3, 4, 6, 12)) == 0


def test_classical_mobius_matches_formula_to_10k():
    mu = classical_mobius(10_000)
    assert [int(x) for x in mu] == mobius_by_factorization(10_000)


def test_chain_family_series():
    r = relation_from_key(chain(N), "diff")
    z = incidence_to_series(zeta(r), "chain")
    assert z.coeffs == tuple(Fraction(1) for _ in range(N + 1))
    m = incidence_to_series(mobius(r), "chain")
    assert m.coeffs == (Fraction(1), Fraction(-1)) + tuple(Fraction(0) for _ in range(N - 1))
    assert ps_mul(z, m) == ps_one(N)


def test_boolean_family_series(boolean12_cardinality_relation):
    r = boolean12_cardinality_relation
    z = incidence_to_series(zeta(r), "boolean-cardinality")
    assert z.coeffs == tuple(Fraction(1, math.factorial(k)) for k in range(13))
    m = incidence_to_series(mobius(r), "boolean-cardinality")
    assert m.coeffs == tuple(Fraction((-1) ** k, math.factorial(k)) for k in range(13))


def test_divisor_family_series():
    r = relation_from_key(divisor_lattice(360), "ratio")
    z = incidence_to_series(zeta(r), "divisor-ratio", bound=6)
    assert z.coeffs == tuple(Fraction(1) for _ in range(6))
    full = incidence_to_series(mobius(r), "divisor-ratio")
    assert full.bound == 360
    assert full.coeff(30) == -1
    assert full.coeff(7) == 0  # not a ratio of the lattice


def test_family_mismatch_errors():
    r = relation_from_key(chain(4), "diff")
    with pytest.raises(EngineError, match="cardinality"):
        incidence_to_series(zeta(r), "boolean-cardinality")
    with pytest.raises(EngineError, match="unknown series family"):
        incidence_to_series(zeta(r), "nope")


def test_series_map_is_algebra_morphism_chain():
    r = relation_from_key(chain(12), "diff")
    rng = random.Random(19)
    for _ in range(50):
        phi = rand_incidence(rng, r)
        psi = rand_incidence(rng, r)
        assert incidence_to_series(star(phi, psi), "chain") == ps_mul(
            incidence_to_series(phi, "chain"), incidence_to_series(psi, "chain")
        )


def test_series_map_is_algebra_morphism_boolean(boolean12_cardinality_relation):
    r = boolean12_cardinality_relation
    rng = random.Random(20)
    for _ in range(50):
        phi = rand_incidence(rng, r)
        psi = rand_incidence(rng, r)
        assert incidence_to_series(star(phi, psi), "boolean-cardinality") == ps_mul(
            incidence_to_series(phi, "boolean-cardinality"),
            incidence_to_series(psi, "boolean-cardinality"),
        )


def test_series_map_is_algebra_morphism_divisor():
    # at bound 12 over the divisors of 360 every index <= 12 factors only
    # through lattice ratios (7 and 11 are absent on both sides)
    r = relation_from_key(divisor_lattice(360), "ratio")
    rng = random.Random(21)
    for _ in range(50):
        phi = rand_incidence(rng, r)
        psi = rand_incidence(rng, r)
        assert incidence_to_series(star(phi, psi), "divisor-ratio", bound=12) == dirichlet_mul(
            incidence_to_series(phi, "divisor-ratio", bound=12),
            incidence_to_series(psi, "divisor-ratio", bound=12),
        )


def test_divisor_count_identity():
    # equal-variable specialization of the coproduct counts divisors
    from incidalg import build_interval_bialgebra, hopf_square

    ib = build_interval_bialgebra(relation_from_key(divisor_lattice(360), "ratio"))
    for cid, cls in enumerate(ib.relation.classes):
        n = int(cls.key)
        value, _ = hopf_square(ib, cid)
        assert value == sum(1 for d in range(1, n + 1) if n % d == 0)
