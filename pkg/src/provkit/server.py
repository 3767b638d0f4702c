"""HTTP surface: one FastAPI app hosting every public endpoint plus the
internal analyzer dispatch routes used in HTTP dispatch mode."""

from __future__ import annotations

from contextlib import asynccontextmanager
from datetime import datetime, timezone

from fastapi import Body, FastAPI, Request
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse

from .bootstrap import Stack
from .errors import ProvKitError, ValidationError
from .ingestion import RawFeedItem, asset_from_dict, asset_id_for_url, asset_to_dict

SCHEMA_VERSION = "1"


class Utf8JSONResponse(JSONResponse):
    media_type = "application/json; charset=utf-8"


def _envelope(**payload) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "generated_at": datetime.now(timezone.utc).isoformat(),
        **payload,
    }


def _error(status_code: int, message: str) -> JSONResponse:
    return Utf8JSONResponse(status_code=status_code, content={"error": message})


def create_app(stack: Stack) -> FastAPI:
    @asynccontextmanager
    async def lifespan(_app: FastAPI):
        yield
        stack.store.flush()  # stores write through; flush is a formality

    app = FastAPI(
        title="content verification platform",
        version=SCHEMA_VERSION,
        lifespan=lifespan,
        default_response_class=Utf8JSONResponse,
    )
    ui_origin = stack.config.get("server.ui_origin")
    app.add_middleware(
        CORSMiddleware,
        allow_origins=[ui_origin] if ui_origin else ["*"],
        allow_methods=["*"],
        allow_headers=["*"],
    )
    api_token = stack.config.get("ingestion.api_token")

    @app.exception_handler(ValidationError)
    def handle_validation(request: Request, exc: ValidationError) -> JSONResponse:
        return _error(400, str(exc))

    @app.exception_handler(ProvKitError)
    def handle_platform_error(request: Request, exc: ProvKitError) -> JSONResponse:
        return _error(500, str(exc))

    @app.get("/api/v1/health")
    def health() -> dict:
        return {"status": "ok"}

    @app.post("/api/v1/assets")
    def register_asset(request: Request, item: dict = Body(...)):
        if api_token and request.headers.get("x-api-token") != api_token:
            return _error(401, "missing or invalid API token")
        asset, created = stack.registrar.register(
            RawFeedItem.from_dict(item), source="trusted_analyst"
        )
        return Utf8JSONResponse(status_code=201 if created else 200, content=asset_to_dict(asset))

    @app.get("/api/v1/assets/{asset_id}/status")
    def asset_status(asset_id: str) -> dict:
        return _envelope(asset_id=asset_id, status=stack.workflow.status(asset_id))

    @app.get("/api/v1/verification")
    def verification(url: str):
        record = stack.queries.verification_by_url(url)
        if record is None:
            return _error(404, f"no verification record for {url}")
        return _envelope(record=record.to_dict())

    @app.get("/api/v1/query/{name}")
    def canned(name: str, request: Request, limit: int = 100):
        params = {k: v for k, v in request.query_params.items() if k != "limit"}
        rows = stack.queries.canned(name, params, limit=limit)
        return _envelope(query=name, rows=rows)

    @app.post("/api/v1/raw")
    def raw(pattern: dict = Body(...), limit: int = 100):
        return _envelope(triples=stack.queries.raw(pattern, limit=limit))

    @app.get("/api/v1/presentation")
    def presentation(url: str, user: str = "anonymous"):
        asset_id = asset_id_for_url(url)
        record = stack.store.get_verification(asset_id)
        model = stack.user_store.get(user)
        pres = stack.presenter.present(record, model)
        return _envelope(url=url, user_id=user, presentation=pres.to_dict())

    @app.get("/api/v1/users/{user_id}")
    def get_user(user_id: str) -> dict:
        return stack.user_store.get(user_id).to_dict()

    @app.patch("/api/v1/users/{user_id}")
    def patch_user(user_id: str, patch: dict = Body(...)) -> dict:
        return stack.user_store.update(user_id, patch).to_dict()

    @app.post("/internal/analyzers/{name}")
    def dispatch_analyzer(name: str, asset: dict = Body(...)):
        analyzer = stack.analyzers.get(name)
        if analyzer is None:
            return _error(404, f"unknown analyzer: {name}")
        results = analyzer.run(asset_from_dict(asset))
        return {"results": [r.to_dict() for r in results]}

    return app
