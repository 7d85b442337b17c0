"""Service handlers: one function per endpoint, shared verbatim by the CLI.

Handlers take a request model, run the engine, and return a response model;
domain failures surface as EngineError, which the HTTP layer maps to 400
and the CLI to exit code 1.
"""

from __future__ import annotations

import random
from fractions import Fraction

from ..algebra import (
    check_algebra,
    check_coalgebra,
    check_mweak,
    check_strong,
    convolution_unit,
    convolve_ops,
    is_cocommutative,
    matrix_bialgebra,
    quaternion_fixture,
    solve_antipode,
)
from ..errors import EngineError
from ..incidence import hat, mobius
from ..interval_bialgebra import (
    build_interval_bialgebra,
    check_interval_product_condition,
    hopf_square,
)
from ..linalg import format_rational
from ..morphisms import squarefree_restriction
from ..posets import (
    Poset,
    all_intervals,
    antichain_with_zero,
    atoms,
    boolean_lattice,
    chain,
    divisor_lattice,
    minimum,
    poset_from_covers,
)
from ..relations import check_compatibility, relation_from_key, relation_from_partition
from ..series import bernoulli, classical_mobius
from .schemas import (
    AntipodeRequest,
    AntipodeResponse,
    AxiomCheckModel,
    BernoulliRequest,
    BernoulliResponse,
    BialgebraVerifyRequest,
    BialgebraVerifyResponse,
    CheckOutcomeModel,
    ClassicalMobiusRequest,
    ClassicalMobiusResponse,
    DemoRequest,
    DemoResponse,
    MobiusRequest,
    MobiusResponse,
    PosetCheckRequest,
    PosetCheckResponse,
    PosetSpec,
    RelationCheckRequest,
    RelationCheckResponse,
    RelationSpec,
)

GENERATORS = ("boolean", "chain", "divisors", "fan")


def poset_from_generator(spec: str) -> Poset:
    name, sep, arg = spec.partition(":")
    if not sep or not arg.lstrip("-").isdigit():
        raise EngineError(
            f"bad generator {spec!r}; use name:param with name in {', '.join(GENERATORS)}"
        )
    value = int(arg)
    if name == "boolean":
        return boolean_lattice(value)
    if name == "chain":
        return chain(value)
    if name == "divisors":
        return divisor_lattice(value)
    if name == "fan":
        return antichain_with_zero(value)
    raise EngineError(f"unknown generator {name!r}; one of {', '.join(GENERATORS)}")


def build_poset(spec: PosetSpec) -> Poset:
    if spec.generator is not None:
        return poset_from_generator(spec.generator)
    return poset_from_covers(list(spec.elements or []), [tuple(c) for c in spec.covers or []])


def build_relation(poset: Poset, spec: RelationSpec):
    if spec.builtin is not None:
        return relation_from_key(poset, spec.builtin)
    return relation_from_partition(poset, [list(map(tuple, g)) for g in spec.partition])


def poset_check(req: PosetCheckRequest) -> PosetCheckResponse:
    p = build_poset(req.poset)
    try:
        zero = minimum(p)
        min_label = p.labels[zero]
        atom_labels = [p.labels[a] for a in atoms(p)]
    except EngineError:
        min_label, atom_labels = None, []
    return PosetCheckResponse(
        ok=True,
        elements=p.n,
        intervals=len(all_intervals(p)),
        minimum=min_label,
        atoms=atom_labels,
    )


def relation_check(req: RelationCheckRequest) -> RelationCheckResponse:
    r = build_relation(build_poset(req.poset), req.relation)
    verdict = check_compatibility(r)
    return RelationCheckResponse(
        compatible=verdict.ok,
        classes=r.num_classes,
        unitary=CheckOutcomeModel(**verdict.unitary.to_json()),
        nabla=CheckOutcomeModel(**verdict.nabla.to_json()),
        delta=CheckOutcomeModel(**verdict.delta.to_json()),
    )


def mobius_table(req: MobiusRequest) -> MobiusResponse:
    r = build_relation(build_poset(req.poset), req.relation)
    mu = mobius(r)
    payload = mu.to_json()
    return MobiusResponse(relation=payload["relation"], values=payload["values"])


def antipode(req: AntipodeRequest) -> AntipodeResponse:
    r = build_relation(build_poset(req.poset), req.relation)
    ib = build_interval_bialgebra(r)
    s = solve_antipode(ib.bialgebra)
    if s is None:
        return AntipodeResponse(exists=False, classes=[c.key for c in r.classes], matrix=[])
    comparable = check_interval_product_condition(ib).ok
    equals = (s == hat(mobius(r))) if comparable else None
    return AntipodeResponse(
        exists=True,
        classes=[c.key for c in r.classes],
        matrix=s.to_json(),
        equals_mobius_hat=equals,
    )


def bialgebra_verify(req: BialgebraVerifyRequest) -> BialgebraVerifyResponse:
    r = build_relation(build_poset(req.poset), req.relation)
    ib = build_interval_bialgebra(r)
    checks = []
    for report in (
        check_algebra(ib.bialgebra.algebra),
        check_coalgebra(ib.bialgebra.coalgebra),
        check_mweak(ib.bialgebra),
        check_strong(ib.bialgebra),
    ):
        checks.extend(AxiomCheckModel(**c.to_json()) for c in report.checks)
    return BialgebraVerifyResponse(checks=checks)


def bernoulli_table(req: BernoulliRequest) -> BernoulliResponse:
    return BernoulliResponse(values=[format_rational(b) for b in bernoulli(req.n)])


def classical_mobius_table(req: ClassicalMobiusRequest) -> ClassicalMobiusResponse:
    return ClassicalMobiusResponse(values=[int(m) for m in classical_mobius(req.max)])


def _axiom_lines(title: str, reports) -> list[str]:
    lines = [title]
    for report in reports:
        for c in report.checks:
            mark = "ok" if c.ok else f"FAIL witness={c.witness}"
            lines.append(f"  {c.axiom}: {mark}")
    return lines


def _demo_interval(poset: Poset, relation_name: str) -> list[str]:
    r = relation_from_key(poset, relation_name)
    verdict = check_compatibility(r)
    lines = [
        f"poset elements={poset.n} intervals={len(all_intervals(poset))}",
        f"relation={relation_name} classes={r.num_classes} compatible={verdict.ok}",
    ]
    if not verdict.ok:
        return lines
    ib = build_interval_bialgebra(r, verdict)
    lines += _axiom_lines(
        "axioms:", [check_mweak(ib.bialgebra), check_strong(ib.bialgebra)]
    )
    mu = mobius(r)
    lines.append("mobius: " + ", ".join(f"{k}={v}" for k, v in mu.to_csv()))
    squares = [f"{c.key}:{hopf_square(ib, cid)[0]}" for cid, c in enumerate(r.classes)]
    lines.append("hopf square eigenvalues: " + ", ".join(squares))
    s = solve_antipode(ib.bialgebra)
    if s is None:
        lines.append("antipode: absent")
    else:
        diag = all(
            s.matrix.get(i, j) == 0
            for i in range(s.dim)
            for j in range(s.dim)
            if i != j
        )
        lines.append(
            "antipode diag: "
            + ", ".join(format_rational(s.matrix.get(i, i)) for i in range(s.dim))
            if diag
            else "antipode: non-diagonal"
        )
        if check_interval_product_condition(ib).ok:
            lines.append(f"antipode equals mobius hat: {s == hat(mobius(r))}")
    return lines


def _demo_convolution_spotcheck(bialgebra, seed: int, cases: int = 3) -> list[str]:
    from ..algebra import LinearOperator
    from ..linalg import DenseMatrix

    rng = random.Random(seed)
    c, a = bialgebra.coalgebra, bialgebra.algebra
    u = convolution_unit(c, a)
    lines = []
    for case in range(cases):
        m = DenseMatrix(
            a.dim,
            a.dim,
            [Fraction(rng.randint(-3, 3)) for _ in range(a.dim * a.dim)],
        )
        f = LinearOperator(m)
        ok = convolve_ops(c, a, u, f) == f == convolve_ops(c, a, f, u)
        lines.append(f"unit law spot check {case}: {'ok' if ok else 'FAIL'}")
    return lines


def _demo_size(name: str, arg: str) -> int:
    if not arg.isdigit():
        raise EngineError(f"demo {name} needs a numeric size, e.g. {name}:3")
    return int(arg)


def demo(req: DemoRequest) -> DemoResponse:
    name, sep, arg = req.name.partition(":")
    lines: list[str]
    if name == "hamilton":
        b = quaternion_fixture()
        lines = _axiom_lines(
            "quaternions over the diagonal coalgebra:",
            [check_algebra(b.algebra), check_coalgebra(b.coalgebra), check_mweak(b), check_strong(b)],
        )
        s = solve_antipode(b)
        lines.append("antipode is conjugation: " + str(s is not None and s.to_json() == [
            ["1", "0", "0", "0"], ["0", "-1", "0", "0"], ["0", "0", "-1", "0"], ["0", "0", "0", "-1"],
        ]))
        lines += _demo_convolution_spotcheck(b, req.seed)
    elif name == "matrix":
        b = matrix_bialgebra(_demo_size(name, arg))
        lines = _axiom_lines(
            f"matrix pair n={arg}:",
            [check_algebra(b.algebra), check_coalgebra(b.coalgebra), check_mweak(b), check_strong(b)],
        )
        lines.append(f"cocommutative: {is_cocommutative(b.coalgebra)}")
        lines.append(f"antipode exists: {solve_antipode(b) is not None}")
    elif name == "boolean":
        lines = _demo_interval(boolean_lattice(_demo_size(name, arg)), "cardinality")
    elif name == "chain":
        lines = _demo_interval(chain(_demo_size(name, arg)), "diff")
    elif name == "divisors":
        lines = _demo_interval(divisor_lattice(_demo_size(name, arg)), "ratio")
    elif name == "fan":
        lines = _demo_interval(antichain_with_zero(_demo_size(name, arg)), "points")
    elif name == "squarefree":
        gamma, report = squarefree_restriction(_demo_size(name, arg))
        lines = [f"classes matched: {len(gamma.mapping)}"]
        lines += [f"{k}: {v}" for k, v in sorted(gamma.to_json()["map"].items())]
        lines += [f"{k}: {v}" for k, v in report.items()]
    else:
        raise EngineError(
            "unknown demo; one of hamilton, matrix:n, boolean:n, chain:n, "
            "divisors:N, fan:n, squarefree:N"
        )
    return DemoResponse(name=req.name, lines=lines)
