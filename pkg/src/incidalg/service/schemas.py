"""Request/response models for the HTTP service; the CLI shares them.

PosetSpec and RelationSpec double as the on-disk JSON formats: a poset is
either a generator spec like "divisors:12" or an explicit
{"elements": [...], "covers": [...]}; a relation is {"builtin": "ratio"} or
an explicit {"partition": [[[lo, hi], ...], ...]} of intervals as label
pairs.
"""

from __future__ import annotations

from typing import Any, Optional

from pydantic import BaseModel, Field, model_validator


class PosetSpec(BaseModel):
    generator: Optional[str] = None
    elements: Optional[list[str]] = None
    covers: Optional[list[tuple[str, str]]] = None

    @model_validator(mode="after")
    def _one_form(self):
        if self.generator is None and self.elements is None:
            raise ValueError("poset spec needs either a generator or elements/covers")
        if self.generator is not None and self.elements is not None:
            raise ValueError("poset spec takes a generator or elements, not both")
        return self


class RelationSpec(BaseModel):
    builtin: Optional[str] = None
    partition: Optional[list[list[tuple[str, str]]]] = None

    @model_validator(mode="after")
    def _one_form(self):
        if (self.builtin is None) == (self.partition is None):
            raise ValueError("relation spec needs exactly one of builtin/partition")
        return self


class PosetCheckRequest(BaseModel):
    poset: PosetSpec


class PosetCheckResponse(BaseModel):
    ok: bool
    elements: int
    intervals: int
    minimum: Optional[str] = None
    atoms: list[str] = Field(default_factory=list)


class RelationCheckRequest(BaseModel):
    poset: PosetSpec
    relation: RelationSpec


class CheckOutcomeModel(BaseModel):
    ok: bool
    witness: Optional[dict[str, Any]] = None


class RelationCheckResponse(BaseModel):
    compatible: bool
    classes: int
    unitary: CheckOutcomeModel
    nabla: CheckOutcomeModel
    delta: CheckOutcomeModel


class MobiusRequest(BaseModel):
    poset: PosetSpec
    relation: RelationSpec


class MobiusResponse(BaseModel):
    relation: dict[str, Any]
    values: dict[str, str]


class AntipodeRequest(BaseModel):
    poset: PosetSpec
    relation: RelationSpec


class AntipodeResponse(BaseModel):
    exists: bool
    classes: list[str]
    matrix: list[list[str]]
    equals_mobius_hat: Optional[bool] = None


class BialgebraVerifyRequest(BaseModel):
    poset: PosetSpec
    relation: RelationSpec


class AxiomCheckModel(BaseModel):
    axiom: str
    ok: bool
    witness: Optional[dict[str, Any]] = None


class BialgebraVerifyResponse(BaseModel):
    checks: list[AxiomCheckModel]


class BernoulliRequest(BaseModel):
    n: int


class BernoulliResponse(BaseModel):
    values: list[str]


class ClassicalMobiusRequest(BaseModel):
    max: int


class ClassicalMobiusResponse(BaseModel):
    values: list[int]


class DemoRequest(BaseModel):
    name: str
    seed: int = 0


class DemoResponse(BaseModel):
    name: str
    lines: list[str]
