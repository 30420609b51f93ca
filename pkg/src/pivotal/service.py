"""Stateless HTTP JSON API.

Every request carries the full problem document; the server holds no
session state, so any number of clients can interleave requests without
affecting each other.  Responses either return the engine output directly
or an error envelope {"error": {"code", "message", "detail"}} using the
engine's machine-readable codes.

POST bodies share one shape: {"document": <problem document>, "config":
{...}} with config optional and operation-specific.  Unknown body or
config fields are rejected, mirroring the strict document schema.
"""

from __future__ import annotations

from typing import Any, Callable

from fastapi import FastAPI, Request
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse
from starlette.concurrency import run_in_threadpool

from . import __version__
from .io_format import (
    DocumentError,
    complexity_to_dict,
    front_to_dict,
    gaps_to_dict,
    problem_from_document,
    recommendation_to_dict,
    serialize_problem,
    tradeoffs_to_dict,
)
from .moo import SearchConfig, solve_continuous, solve_discrete, tradeoff_summary
from .problem_model import DecisionProblem, SpaceKind, ValidationFailedError, validate
from .recommender import gap_report, recommend
from .scoring import ResolutionConfig, complexity
from .taxonomy import catalog_as_dict

EVALUATION_BUDGET = 10**6


class _RequestError(Exception):
    """Maps straight to a 400 response."""

    def __init__(self, code: str, message: str, detail: Any = None):
        self.code = code
        self.message = message
        self.detail = detail
        super().__init__(message)


def _error_response(status: int, code: str, message: str, detail: Any = None) -> JSONResponse:
    return JSONResponse(
        status_code=status,
        content={"error": {"code": code, "message": message, "detail": detail}},
    )


def _body_fields(body: Any, allowed: tuple[str, ...]) -> dict:
    if not isinstance(body, dict):
        raise _RequestError("MALFORMED_DOCUMENT", "request body must be a JSON object")
    unknown = sorted(set(body) - set(allowed))
    if unknown:
        raise _RequestError("UNKNOWN_FIELD", "unknown request field(s): " + ", ".join(unknown))
    return body


def _document_of(body: dict) -> Any:
    if "document" not in body:
        raise _RequestError("MALFORMED_DOCUMENT", "request body needs a 'document' field")
    return body["document"]


def _config_of(body: dict, allowed: tuple[str, ...]) -> dict:
    config = body.get("config", {})
    if not isinstance(config, dict):
        raise _RequestError("MALFORMED_DOCUMENT", "'config' must be a JSON object")
    unknown = sorted(set(config) - set(allowed))
    if unknown:
        raise _RequestError("UNKNOWN_FIELD", "unknown config field(s): " + ", ".join(unknown))
    return config


def _load_problem(document: Any) -> DecisionProblem:
    try:
        return problem_from_document(document)
    except DocumentError as exc:
        raise _RequestError(exc.code, str(exc)) from exc
    except ValidationFailedError as exc:
        raise _RequestError(
            "VALIDATION_FAILED",
            "problem failed validation",
            detail=[
                {"code": d.code, "message": d.message, "where": d.where}
                for d in exc.diagnostics
            ],
        ) from exc


def _resolution_config(config: dict) -> ResolutionConfig:
    try:
        return ResolutionConfig(
            default_c=config.get("c", 0.5),
            count_scale=config.get("count_scale", 10.0),
        )
    except (TypeError, ValueError) as exc:
        raise _RequestError("BAD_CONFIG", str(exc)) from exc


def _search_config(config: dict) -> SearchConfig:
    try:
        return SearchConfig(
            population=config.get("population", 64),
            generations=config.get("generations", 100),
            seed=config.get("seed", 0),
            mutation_rate=config.get("mutation_rate", 0.1),
            mutation_sigma_fraction=config.get("mutation_sigma", 0.05),
            crossover_rate=config.get("crossover_rate", 0.9),
        )
    except (TypeError, ValueError) as exc:
        raise _RequestError("BAD_CONFIG", str(exc)) from exc


def _handle_validate(body: Any) -> Any:
    body = _body_fields(body, ("document",))
    try:
        problem = problem_from_document(_document_of(body), check=False)
    except DocumentError as exc:
        raise _RequestError(exc.code, str(exc)) from exc
    diagnostics = validate(problem)
    if diagnostics:
        return {
            "valid": False,
            "diagnostics": [
                {"code": d.code, "message": d.message, "where": d.where} for d in diagnostics
            ],
            "canonical": None,
        }
    return {"valid": True, "diagnostics": [], "canonical": serialize_problem(problem)}


def _handle_score(body: Any) -> Any:
    body = _body_fields(body, ("document", "config"))
    problem = _load_problem(_document_of(body))
    config = _resolution_config(_config_of(body, ("c", "count_scale")))
    return complexity_to_dict(complexity(problem, config))


def _handle_recommend(body: Any) -> Any:
    body = _body_fields(body, ("document", "config"))
    problem = _load_problem(_document_of(body))
    raw = _config_of(body, ("c", "count_scale", "top"))
    config = _resolution_config({k: raw[k] for k in ("c", "count_scale") if k in raw})
    top = raw.get("top")
    if top is not None and (isinstance(top, bool) or not isinstance(top, int) or top < 0):
        raise _RequestError("BAD_CONFIG", "'top' must be a non-negative integer")
    return {
        "recommendations": [
            recommendation_to_dict(r) for r in recommend(problem, config, top=top)
        ],
        "gaps": gaps_to_dict(gap_report(problem, config)),
    }


def _handle_optimize(body: Any) -> Any:
    body = _body_fields(body, ("document", "config"))
    problem = _load_problem(_document_of(body))
    config = _search_config(
        _config_of(
            body,
            ("population", "generations", "seed", "mutation_rate", "mutation_sigma",
             "crossover_rate"),
        )
    )
    if problem.action_space.kind is SpaceKind.DISCRETE:
        if len(problem.action_space.actions) > EVALUATION_BUDGET:
            raise _RequestError(
                "EVALUATION_BUDGET",
                f"action count exceeds the {EVALUATION_BUDGET} evaluation budget",
            )
        front = solve_discrete(problem)
    else:
        evaluations = config.population * config.generations
        if evaluations > EVALUATION_BUDGET:
            raise _RequestError(
                "EVALUATION_BUDGET",
                f"population * generations = {evaluations} exceeds the "
                f"{EVALUATION_BUDGET} evaluation budget",
            )
        front = solve_continuous(problem, config)
    tradeoffs = tradeoff_summary(front) if front.members else None
    return {
        "front": front_to_dict(front),
        "tradeoffs": tradeoffs_to_dict(tradeoffs) if tradeoffs is not None else None,
    }


def _endpoint(handler: Callable[[Any], Any]) -> Callable:
    async def endpoint(request: Request) -> Any:
        try:
            body = await request.json()
        except Exception:
            return _error_response(400, "MALFORMED_DOCUMENT", "request body is not valid JSON")
        try:
            result = await run_in_threadpool(handler, body)
        except _RequestError as exc:
            return _error_response(400, exc.code, exc.message, exc.detail)
        except Exception as exc:
            return _error_response(500, "INTERNAL", f"{type(exc).__name__}: {exc}")
        return JSONResponse(result)

    return endpoint


def create_app() -> FastAPI:
    app = FastAPI(title="pivotal workbench", version=__version__, docs_url=None, redoc_url=None)
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["*"],
        allow_headers=["*"],
    )

    @app.get("/api/v1/health")
    async def health() -> dict:
        return {"status": "ok", "version": __version__}

    @app.get("/api/v1/taxonomy")
    async def taxonomy() -> Any:
        return JSONResponse(catalog_as_dict())

    app.add_api_route("/api/v1/validate", _endpoint(_handle_validate), methods=["POST"])
    app.add_api_route("/api/v1/score", _endpoint(_handle_score), methods=["POST"])
    app.add_api_route("/api/v1/recommend", _endpoint(_handle_recommend), methods=["POST"])
    app.add_api_route("/api/v1/optimize", _endpoint(_handle_optimize), methods=["POST"])
    return app


app = create_app()


def run(port: int = 8000, host: str = "127.0.0.1") -> None:
    """Start a blocking development server."""
    import uvicorn

    uvicorn.run(app, host=host, port=port, log_level="info")
