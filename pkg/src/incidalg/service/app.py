"""FastAPI application wrapping the engine as a stateless compute service."""

from __future__ import annotations

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse

from .. import __version__
from ..errors import EngineError
from . import handlers
from .schemas import (
    AntipodeRequest,
    AntipodeResponse,
    BernoulliRequest,
    BernoulliResponse,
    BialgebraVerifyRequest,
    BialgebraVerifyResponse,
    ClassicalMobiusRequest,
    ClassicalMobiusResponse,
    DemoRequest,
    DemoResponse,
    MobiusRequest,
    MobiusResponse,
    PosetCheckRequest,
    PosetCheckResponse,
    RelationCheckRequest,
    RelationCheckResponse,
)


def create_app() -> FastAPI:
    app = FastAPI(
        title="incidalg",
        version=__version__,
        description="Incidence algebras, interval bialgebras and Mobius functions, exactly.",
    )

    @app.exception_handler(EngineError)
    async def engine_error(_request: Request, exc: EngineError):
        payload = {"detail": str(exc)}
        verdict = getattr(exc, "verdict", None)
        if verdict is not None:
            payload["verdict"] = verdict.to_json()
        return JSONResponse(status_code=400, content=payload)

    @app.get("/health")
    def health() -> dict:
        return {"status": "ok", "version": __version__}

    @app.post("/poset/check", response_model=PosetCheckResponse)
    def poset_check(req: PosetCheckRequest):
        return handlers.poset_check(req)

    @app.post("/relation/check", response_model=RelationCheckResponse)
    def relation_check(req: RelationCheckRequest):
        return handlers.relation_check(req)

    @app.post("/mobius", response_model=MobiusResponse)
    def mobius_table(req: MobiusRequest):
        return handlers.mobius_table(req)

    @app.post("/antipode", response_model=AntipodeResponse)
    def antipode(req: AntipodeRequest):
        return handlers.antipode(req)

    @app.post("/bialgebra/verify", response_model=BialgebraVerifyResponse)
    def bialgebra_verify(req: BialgebraVerifyRequest):
        return handlers.bialgebra_verify(req)

    @app.post("/bernoulli", response_model=BernoulliResponse)
    def bernoulli(req: BernoulliRequest):
        return handlers.bernoulli_table(req)

    @app.post("/classical-mobius", response_model=ClassicalMobiusResponse)
    def classical_mobius(req: ClassicalMobiusRequest):
        return handlers.classical_mobius_table(req)

    @app.post("/demo", response_model=DemoResponse)
    def demo(req: DemoRequest):
        return handlers.demo(req)

    return app


app = create_app()
