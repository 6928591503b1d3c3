"""HTTP API exposing the catalog, matching, costing, and recommendations.

All read endpoints operate on a snapshot taken at the start of the
request, so concurrent upserts never bleed into an in-flight response.
Response bodies are serialized with the canonical encoder from ``wire``
so identical (catalog version, parameters) pairs are byte-identical.
"""

from __future__ import annotations

import json
from typing import Optional, Union

from fastapi import FastAPI, Request, Response
from fastapi.middleware.cors import CORSMiddleware

from .errors import CloudpickError, RejectedOfferError
from .matching import MatchQuery
from .ontology import export_ontology
from .repository import OFFER_KINDS, Catalog, CatalogStore
from . import wire

__all__ = ["create_app", "serve"]


def _json_response(payload, status_code: int = 200) -> Response:
    return Response(content=wire.dumps(payload), status_code=status_code,
                    media_type="application/json")


def _error_response(exc: CloudpickError) -> Response:
    if isinstance(exc, RejectedOfferError):
        return _json_response(wire.violations_payload(exc.reports), 400)
    return _json_response({"errors": [{"message": str(exc)}]}, 400)


def _parse_columns(raw: Optional[str]):
    if raw is None:
        return None
    return [c for c in raw.split(",") if c] if raw else []


def create_app(store: Union[CatalogStore, Catalog]) -> FastAPI:
    if isinstance(store, Catalog):
        store = CatalogStore(store)

    app = FastAPI(title="cloudpick", docs_url=None, redoc_url=None)
    app.add_middleware(
        CORSMiddleware, allow_origins=["*"], allow_methods=["*"], allow_headers=["*"],
    )

    @app.exception_handler(CloudpickError)
    async def _domain_error(_request: Request, exc: CloudpickError):
        return _error_response(exc)

    @app.get("/v1/providers")
    def providers():
        return _json_response(wire.providers_payload(store.snapshot()))

    @app.get("/v1/offers/compute")
    def offers_compute(
        min_cores: int = 0,
        min_memory_gb: float = 0.0,
        min_clock_ghz: Optional[float] = None,
        location: Optional[str] = None,
        name_regex: Optional[str] = None,
        sort: Optional[str] = None,
        order: str = "asc",
        columns: Optional[str] = None,
    ):
        query = MatchQuery(
            kind="compute",
            min_cores=min_cores,
            min_memory_gb=min_memory_gb,
            min_clock_ghz=min_clock_ghz,
            location=wire.parse_location(location) if location else None,
            name_regex=name_regex,
            sort_key=sort,
            sort_order=order,
        )
        payload = wire.offers_payload(store.snapshot(), query, _parse_columns(columns))
        return _json_response(payload)

    @app.get("/v1/offers/storage")
    def offers_storage(
        size_gb: Optional[float] = None,
        location: Optional[str] = None,
        name_regex: Optional[str] = None,
        sort: Optional[str] = None,
        order: str = "asc",
        columns: Optional[str] = None,
    ):
        query = MatchQuery(
            kind="storage",
            size_gb=size_gb,
            location=wire.parse_location(location) if location else None,
            name_regex=name_regex,
            sort_key=sort,
            sort_order=order,
        )
        payload = wire.offers_payload(store.snapshot(), query, _parse_columns(columns))
        return _json_response(payload)

    @app.get("/v1/offers/network")
    def offers_network(
        location: Optional[str] = None,
        name_regex: Optional[str] = None,
        sort: Optional[str] = None,
        order: str = "asc",
        columns: Optional[str] = None,
    ):
        query = MatchQuery(
            kind="network",
            location=wire.parse_location(location) if location else None,
            name_regex=name_regex,
            sort_key=sort,
            sort_order=order,
        )
        payload = wire.offers_payload(store.snapshot(), query, _parse_columns(columns))
        return _json_response(payload)

    @app.post("/v1/recommend")
    async def recommend_endpoint(request: Request):
        try:
            body = json.loads(await request.body() or b"{}")
        except json.JSONDecodeError as exc:
            return _json_response({"errors": [{"message": f"invalid JSON: {exc}"}]}, 400)
        scenario, top_k = wire.parse_scenario(body)
        payload = wire.recommend_payload(store.snapshot(), scenario, top_k)
        return _json_response(payload)

    @app.put("/v1/offers/{kind}/{offer_id}")
    async def upsert(kind: str, offer_id: str, request: Request):
        if kind not in OFFER_KINDS:
            return _json_response(
                {"errors": [{"message": f"unknown offer kind {kind!r}"}]}, 404)
        try:
            record = json.loads(await request.body() or b"{}")
        except json.JSONDecodeError as exc:
            return _json_response({"errors": [{"message": f"invalid JSON: {exc}"}]}, 400)
        if not isinstance(record, dict):
            return _json_response(
                {"errors": [{"message": "offer body must be a JSON object"}]}, 400)
        record.setdefault("id", offer_id)
        if record["id"] != offer_id:
            return _json_response(
                {"errors": [{"message": "body id does not match path id"}]}, 400)
        catalog = store.upsert_offer(kind, record)
        return _json_response({"catalog_version": catalog.version, "id": offer_id})

    @app.get("/v1/catalog/version")
    def version():
        return _json_response(wire.version_payload(store.snapshot()))

    @app.get("/v1/export/ontology")
    def ontology():
        return Response(content=export_ontology(store.snapshot()),
                        media_type="text/turtle")

    return app


def serve(store: Union[CatalogStore, Catalog], port: int, host: str = "127.0.0.1") -> None:
    """Run the API with uvicorn until interrupted."""
    import uvicorn

    uvicorn.run(create_app(store), host=host, port=port, log_level="warning")
