"""Command-line front end: a thin client over the service handlers.

Parses argv into the same request models the HTTP service consumes, calls
the shared handlers in-process, and renders the response as CSV (default)
or JSON (--json).  Exit codes: 0 success, 1 domain error, 2 usage error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from typing import Optional

from .errors import EngineError
from .service import handlers
from .service.schemas import (
    AntipodeRequest,
    BernoulliRequest,
    BialgebraVerifyRequest,
    ClassicalMobiusRequest,
    DemoRequest,
    MobiusRequest,
    PosetCheckRequest,
    PosetSpec,
    RelationCheckRequest,
    RelationSpec,
)

USAGE = """incidalg [--json] [--out PATH] [--seed INT] COMMAND ...

commands:
  poset check <poset>                validate a poset and report its shape
  relation check <poset> <relation>  compatibility verdict for a relation
  mobius <poset> <relation>          Mobius function table
  antipode <poset> <relation>        antipode matrix of the interval bialgebra
  bialgebra verify <poset> <relation>  full axiom report including bi1
  bernoulli --n N                    Bernoulli numbers b0..bN
  classical-mobius --max N           classical Mobius values mu(1..N)
  demo <name>                        worked example (hamilton, matrix:n,
                                     boolean:n, chain:n, divisors:N, fan:n,
                                     squarefree:N)

<poset> is a generator spec (boolean:n, chain:n, divisors:N, fan:n) or a
JSON file {"elements": [...], "covers": [...]}; <relation> is a builtin name
(trivial, points, setdiff, cardinality, diff, ratio, isotype) or a JSON file
{"builtin": ...} / {"partition": [...]}.
"""

BUILTIN_NAMES = ("trivial", "points", "setdiff", "cardinality", "diff", "ratio", "isotype")


def _load_json(path: str) -> dict:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise EngineError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise EngineError(f"{path} is not valid JSON: {exc}") from exc


def parse_poset_arg(arg: str) -> PosetSpec:
    if os.path.exists(arg) or arg.endswith(".json"):
        return PosetSpec(**_load_json(arg))
    return PosetSpec(generator=arg)


def parse_relation_arg(arg: str) -> RelationSpec:
    if arg in BUILTIN_NAMES:
        return RelationSpec(builtin=arg)
    if os.path.exists(arg) or arg.endswith(".json"):
        return RelationSpec(**_load_json(arg))
    return RelationSpec(builtin=arg)  # let the engine report the unknown name


def _csv(rows: list[tuple]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerows(rows)
    return buf.getvalue()


def _render_poset_check(resp) -> str:
    rows = [("field", "value"), ("ok", str(resp.ok).lower()),
            ("elements", resp.elements), ("intervals", resp.intervals)]
    if resp.minimum is not None:
        rows.append(("minimum", resp.minimum))
        rows.append(("atoms", " ".join(resp.atoms)))
    return _csv(rows)


def _render_relation_check(resp) -> str:
    rows = [("check", "ok", "witness")]
    for name in ("unitary", "nabla", "delta"):
        outcome = getattr(resp, name)
        rows.append((name, str(outcome.ok).lower(),
                     "" if outcome.witness is None else json.dumps(outcome.witness, sort_keys=True)))
    rows.append(("compatible", str(resp.compatible).lower(), ""))
    return _csv(rows)


def _render_mobius(resp) -> str:
    rows = [("class_key", "value")] + [(k, v) for k, v in resp.values.items()]
    return _csv(rows)


def _render_antipode(resp) -> str:
    rows = [("exists", str(resp.exists).lower())]
    if resp.equals_mobius_hat is not None:
        rows.append(("equals_mobius_hat", str(resp.equals_mobius_hat).lower()))
    for key, row in zip(resp.classes, resp.matrix):
        rows.append((key, *row))
    return _csv(rows)


def _render_verify(resp) -> str:
    rows = [("axiom", "ok", "witness")]
    for c in resp.checks:
        rows.append((c.axiom, str(c.ok).lower(),
                     "" if c.witness is None else json.dumps(c.witness, sort_keys=True)))
    return _csv(rows)


def _render_series(values: list) -> str:
    return _csv([("n", "coefficient")] + list(enumerate(values)))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="incidalg", add_help=True, usage=USAGE)
    parser.add_argument("--json", action="store_true", dest="as_json")
    parser.add_argument("--out", type=str, default=None)
    parser.add_argument("--seed", type=int, default=0)
    sub = parser.add_subparsers(dest="command", required=True)

    poset = sub.add_parser("poset")
    poset_sub = poset.add_subparsers(dest="action", required=True)
    poset_check = poset_sub.add_parser("check")
    poset_check.add_argument("poset")

    relation = sub.add_parser("relation")
    relation_sub = relation.add_subparsers(dest="action", required=True)
    relation_check = relation_sub.add_parser("check")
    relation_check.add_argument("poset")
    relation_check.add_argument("relation")

    for name in ("mobius", "antipode"):
        cmd = sub.add_parser(name)
        cmd.add_argument("poset")
        cmd.add_argument("relation")

    bialgebra = sub.add_parser("bialgebra")
    bialgebra_sub = bialgebra.add_subparsers(dest="action", required=True)
    verify = bialgebra_sub.add_parser("verify")
    verify.add_argument("poset")
    verify.add_argument("relation")

    bern = sub.add_parser("bernoulli")
    bern.add_argument("--n", type=int, required=True)

    cm = sub.add_parser("classical-mobius")
    cm.add_argument("--max", type=int, required=True)

    demo = sub.add_parser("demo")
    demo.add_argument("name")
    return parser


def _dispatch(args) -> tuple[object, str]:
    """Returns (response model, CSV rendering)."""
    if args.command == "poset":
        resp = handlers.poset_check(PosetCheckRequest(poset=parse_poset_arg(args.poset)))
        return resp, _render_poset_check(resp)
    if args.command == "relation":
        resp = handlers.relation_check(
            RelationCheckRequest(
                poset=parse_poset_arg(args.poset), relation=parse_relation_arg(args.relation)
            )
        )
        return resp, _render_relation_check(resp)
    if args.command == "mobius":
        resp = handlers.mobius_table(
            MobiusRequest(poset=parse_poset_arg(args.poset), relation=parse_relation_arg(args.relation))
        )
        return resp, _render_mobius(resp)
    if args.command == "antipode":
        resp = handlers.antipode(
            AntipodeRequest(poset=parse_poset_arg(args.poset), relation=parse_relation_arg(args.relation))
        )
        return resp, _render_antipode(resp)
    if args.command == "bialgebra":
        resp = handlers.bialgebra_verify(
            BialgebraVerifyRequest(
                poset=parse_poset_arg(args.poset), relation=parse_relation_arg(args.relation)
            )
        )
        return resp, _render_verify(resp)
    if args.command == "bernoulli":
        resp = handlers.bernoulli_table(BernoulliRequest(n=args.n))
        return resp, _render_series(resp.values)
    if args.command == "classical-mobius":
        resp = handlers.classical_mobius_table(ClassicalMobiusRequest(max=args.max))
        return resp, _render_series(resp.values)
    if args.command == "demo":
        resp = handlers.demo(DemoRequest(name=args.name, seed=args.seed))
        return resp, "\n".join(resp.lines) + "\n"
    raise EngineError(f"unknown command {args.command!r}")


def run(argv: Optional[list[str]] = None, stdout=None, stderr=None) -> int:
    stdout = stdout if stdout is not None else sys.stdout
    stderr = stderr if stderr is not None else sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        if exc.code not in (0, None):
            print(USAGE, file=stderr)
            return 2
        return 0
    try:
        resp, rendered = _dispatch(args)
    except EngineError as exc:
        print(f"error: {exc}", file=stderr)
        verdict = getattr(exc, "verdict", None)
        if verdict is not None:
            print(json.dumps(verdict.to_json(), sort_keys=True), file=stderr)
        return 1
    except ValueError as exc:  # bad request model (e.g. malformed spec file)
        print(f"error: {exc}", file=stderr)
        return 1
    payload = (
        json.dumps(resp.model_dump(exclude_none=True), sort_keys=True) + "\n"
        if args.as_json
        else rendered
    )
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(payload)
    else:
        stdout.write(payload)
    return 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
