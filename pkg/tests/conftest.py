"""Shared fixtures and random-value helpers for the test suite.

Heavy constructions (large lattices, antipode solves) are session-scoped so
unit tests and the acceptance suite share them.  All randomness is seeded.
"""

from __future__ import annotations

import random
from fractions import Fraction

import pytest

from incidalg import (
    DenseMatrix,
    FiniteAlgebra,
    FiniteBialgebra,
    IncidenceFunction,
    LinearOperator,
    SparseVector,
    boolean_lattice,
    build_interval_bialgebra,
    chain,
    diagonal_coalgebra,
    divisor_lattice,
    relation_from_key,
)


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


def rand_fraction(rng: random.Random, span: int = 5) -> Fraction:
    return Fraction(rng.randint(-span, span), rng.randint(1, 3))


def rand_operator(rng: random.Random, dim: int) -> LinearOperator:
    return LinearOperator(
        DenseMatrix(dim, dim, [rand_fraction(rng) for _ in range(dim * dim)])
    )


def rand_incidence(rng: random.Random, relation) -> IncidenceFunction:
    return IncidenceFunction(
        relation,
        {cid: rand_fraction(rng) for cid in range(relation.num_classes)},
    )


def group_bialgebra(elements: list, multiply) -> FiniteBialgebra:
    """Group algebra with the diagonal coalgebra: a strong Hopf fixture."""
    index = {g: i for i, g in enumerate(elements)}
    mult = {
        (i, j): SparseVector.unit(index[multiply(a, b)])
        for i, a in enumerate(elements)
        for j, b in enumerate(elements)
    }
    identity = next(g for g in elements if all(multiply(g, h) == h for h in elements))
    algebra = FiniteAlgebra(len(elements), mult, SparseVector.unit(index[identity]))
    return FiniteBialgebra(algebra, diagonal_coalgebra(len(elements)))


def cyclic4_bialgebra() -> FiniteBialgebra:
    return group_bialgebra(list(range(4)), lambda a, b: (a + b) % 4)


def klein4_bialgebra() -> FiniteBialgebra:
    return group_bialgebra(list(range(4)), lambda a, b: a ^ b)


def sym3_bialgebra() -> FiniteBialgebra:
    perms = [(0, 1, 2), (0, 2, 1), (1, 0, 2), (1, 2, 0), (2, 0, 1), (2, 1, 0)]
    compose = lambda p, q: tuple(p[q[i]] for i in range(3))
    return group_bialgebra(perms, compose)


@pytest.fixture(scope="session")
def chain4_ib():
    return build_interval_bialgebra(relation_from_key(chain(4), "diff"))


@pytest.fixture(scope="session")
def chain8_ib():
    return build_interval_bialgebra(relation_from_key(chain(8), "diff"))


@pytest.fixture(scope="session")
def boolean3_card_ib():
    return build_interval_bialgebra(relation_from_key(boolean_lattice(3), "cardinality"))


@pytest.fixture(scope="session")
def boolean4_card_ib():
    return build_interval_bialgebra(relation_from_key(boolean_lattice(4), "cardinality"))


@pytest.fixture(scope="session")
def divisor60_ib():
    return build_interval_bialgebra(relation_from_key(divisor_lattice(60), "ratio"))


@pytest.fixture(scope="session")
def divisor360_ib():
    return build_interval_bialgebra(relation_from_key(divisor_lattice(360), "ratio"))


@pytest.fixture(scope="session")
def boolean12_cardinality_relation():
    return relation_from_key(boolean_lattice(12), "cardinality")
