"""Stateless HTTP facade over parsing, scoring, what-if, and recommendation.

Every request carries the full model (they are small), every handler is a
pure function of its body, and every response is rendered through the same
canonical JSON writer the CLI uses, so repeating a request returns
byte-identical bytes and the CLI's ``--format structured`` output matches the
wire exactly.

Errors follow one envelope: each non-2xx response body is a single object
``{"code", "message", "details"}`` with code ``BAD_REQUEST`` (malformed or
oversized envelope, unknown scope), ``PARSE_ERROR`` (model text/document did
not parse), or ``DOMAIN_ERROR`` (valid envelope, invalid model or moves).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Literal, Optional, Union

from fastapi import FastAPI, Request, Response
from fastapi.exceptions import RequestValidationError
from fastapi.middleware.cors import CORSMiddleware
from pydantic import BaseModel, Field

from . import __version__, delegation
from .delegation import DelegationMove, PlanError, Policy, RecommendConfig
from .dsl import parse_model
from .metrics import hotspots, metrics_table
from .model import ModelDocument, ModelError, resolve_scope, validate_model
from .reporting import (
    analysis_payload,
    parse_error_payload,
    plan_payload,
    violation_payload,
)
from .structured import canonical_json, from_document, loads as loads_structured, to_document

BAD_REQUEST = "BAD_REQUEST"
PARSE_ERROR = "PARSE_ERROR"
DOMAIN_ERROR = "DOMAIN_ERROR"


@dataclass(frozen=True)
class ServiceConfig:
    max_body_bytes: int = 2_000_000
    cors_origins: tuple[str, ...] = ("*",)
    static_dir: Optional[str] = None


class ApiException(Exception):
    """Carries one ApiError envelope to the exception handler."""

    def __init__(self, status: int, code: str, message: str, details: Any = None):
        super().__init__(message)
        self.status = status
        self.code = code
        self.message = message
        self.details = details

    def response(self) -> Response:
        payload = {"code": self.code, "message": self.message, "details": self.details}
        return Response(
            content=canonical_json(payload),
            status_code=self.status,
            media_type="application/json",
        )


class MoveBody(BaseModel):
    dependency: str
    endpoint: Literal["depender", "dependee"]
    new_actor: str
    rationale: Optional[str] = None

    def to_move(self) -> DelegationMove:
        return DelegationMove(
            dependency=self.dependency,
            endpoint=self.endpoint,
            new_actor=self.new_actor,
            rationale=self.rationale,
        )


class PolicyBody(BaseModel):
    skip_infeasible: bool = True
    override_knowledge: bool = False
    strict_argmax: bool = False

    def to_policy(self) -> Policy:
        return Policy(
            skip_infeasible=self.skip_infeasible,
            override_knowledge=self.override_knowledge,
            strict_argmax=self.strict_argmax,
        )


class RecommendBody(BaseModel):
    max_moves: int = Field(default=10, ge=0, le=1000)


ScopeArg = Union[str, list[str], None]


class AnalyzeRequest(BaseModel):
    model: dict
    scope: ScopeArg = None


class WhatifRequest(BaseModel):
    model: dict
    scope: ScopeArg = None
    moves: list[MoveBody]
    policy: PolicyBody = PolicyBody()


class RecommendRequest(BaseModel):
    model: dict
    scope: ScopeArg = None
    config: RecommendBody = RecommendBody()


def _json_response(payload: Any, status: int = 200) -> Response:
    return Response(
        content=canonical_json(payload), status_code=status, media_type="application/json"
    )


def _load_model(payload: dict) -> ModelDocument:
    result = from_document(payload)
    if not result.ok:
        raise ApiException(
            422,
            PARSE_ERROR,
            "model document did not parse",
            [parse_error_payload(error) for error in result.errors],
        )
    document = result.document
    violations = validate_model(document.model, document.boundaries, document.scopes)
    if violations:
        raise ApiException(
            422,
            DOMAIN_ERROR,
            "model is structurally invalid",
            [violation_payload(v) for v in violations],
        )
    return document


def _resolve(document: ModelDocument, scope: ScopeArg) -> tuple[str, ...]:
    try:
        return resolve_scope(document, None if scope == "all" else scope)
    except ModelError as exc:
        raise ApiException(400, BAD_REQUEST, str(exc)) from exc


def create_app(config: ServiceConfig = ServiceConfig()) -> FastAPI:
    app = FastAPI(title="charter-deps service", version=__version__, docs_url="/v1/docs")

    app.add_middleware(
        CORSMiddleware,
        allow_origins=list(config.cors_origins),
        allow_methods=["*"],
        allow_headers=["*"],
    )

    @app.middleware("http")
    async def enforce_body_limit(request: Request, call_next):
        declared = request.headers.get("content-length")
        if declared is not None and declared.isdigit() and int(declared) > config.max_body_bytes:
            return ApiException(
                413, BAD_REQUEST, f"request body exceeds {config.max_body_bytes} bytes"
            ).response()
        return await call_next(request)

    @app.exception_handler(ApiException)
    async def handle_api_exception(_request: Request, exc: ApiException):
        return exc.response()

    @app.exception_handler(RequestValidationError)
    async def handle_validation_error(_request: Request, exc: RequestValidationError):
        details = [
            {"path": ".".join(str(part) for part in err.get("loc", ())), "message": err.get("msg", "")}
            for err in exc.errors()
        ]
        return ApiException(400, BAD_REQUEST, "malformed request envelope", details).response()

    @app.get("/v1/health")
    async def health() -> Response:
        return _json_response({"status": "ok", "version": __version__})

    @app.post("/v1/validate")
    async def validate(request: Request) -> Response:
        body = await request.body()
        if len(body) > config.max_body_bytes:
            raise ApiException(413, BAD_REQUEST, f"request body exceeds {config.max_body_bytes} bytes")
        try:
            text = body.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise ApiException(
                422, PARSE_ERROR, "request body is not valid UTF-8", [{"message": str(exc)}]
            ) from exc
        content_type = request.headers.get("content-type", "")
        if content_type.split(";")[0].strip() == "application/json":
            result = loads_structured(text)
        else:
            result = parse_model(text)
        if not result.ok:
            raise ApiException(
                422,
                PARSE_ERROR,
                "model did not parse",
                [parse_error_payload(error) for error in result.errors],
            )
        document = result.document
        violations = validate_model(document.model, document.boundaries, document.scopes)
        return _json_response(
            {
                "model": to_document(document),
                "violations": [violation_payload(v) for v in violations],
            }
        )

    @app.post("/v1/analyze")
    async def analyze(body: AnalyzeRequest) -> Response:
        document = _load_model(body.model)
        scope_ids = _resolve(document, body.scope)
        rows = metrics_table(document.model, scope_ids)
        spots = hotspots(document.model, scope_ids)
        return _json_response(analysis_payload(scope_ids, rows, spots))

    @app.post("/v1/whatif")
    async def whatif(body: WhatifRequest) -> Response:
        document = _load_model(body.model)
        scope_ids = _resolve(document, body.scope)
        moves = [move.to_move() for move in body.moves]
        try:
            plan = delegation.evaluate_plan(
                document.model, scope_ids, moves, body.policy.to_policy()
            )
        except PlanError as exc:
            raise ApiException(
                422, DOMAIN_ERROR, str(exc), {"move_index": exc.move_index}
            ) from exc
        return _json_response(plan_payload(plan))

    @app.post("/v1/recommend")
    async def recommend(body: RecommendRequest) -> Response:
        document = _load_model(body.model)
        scope_ids = _resolve(document, body.scope)
        plan = delegation.recommend(
            document.model, scope_ids, RecommendConfig(max_moves=body.config.max_moves)
        )
        return _json_response(plan_payload(plan))

    if config.static_dir is not None:
        from fastapi.staticfiles import StaticFiles

        app.mount("/", StaticFiles(directory=config.static_dir, html=True), name="workbench")

    return app


app = create_app()
