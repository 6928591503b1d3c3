"""JSON payloads shared by the HTTP service and the CLI.

Both front ends build their machine-readable output here so that a CLI
command and the matching HTTP endpoint emit byte-identical bodies for
the same catalog version and parameters.
"""

from __future__ import annotations

import dataclasses
import json
from enum import Enum
from typing import Any, List, Mapping, Optional, Tuple

from .errors import QueryError
from .matching import MatchQuery, match_offers, offer_fields, project_columns
from .model import (
    Continent,
    Location,
    Quantity,
    RequestVerb,
    UsageScenario,
)
from .recommend import DEFAULT_TOP_K, Recommendation, recommend
from .repository import Catalog

__all__ = [
    "dumps",
    "parse_location",
    "parse_scenario",
    "providers_payload",
    "offers_payload",
    "recommend_payload",
    "version_payload",
    "violations_payload",
    "DEFAULT_COLUMNS",
]

DEFAULT_COLUMNS = {
    "compute": ("id", "provider", "name", "cores", "clock_speed", "memory",
                "locations"),
    "storage": ("id", "provider", "name", "kind", "size_min", "size_max",
                "locations"),
    "network": ("id", "provider", "name", "cost_data_transfer_in",
                "cost_data_transfer_out", "locations"),
}


def dumps(payload: Any) -> str:
    """Canonical JSON text: sorted keys, no whitespace, stable bytes."""
    return json.dumps(payload, sort_keys=True, separators=(",", ":"))


def _jsonable(value: Any) -> Any:
    if isinstance(value, Quantity):
        return {"value": value.value, "unit": value.unit}
    if isinstance(value, Location):
        return str(value)
    if isinstance(value, Enum):
        return value.value
    if isinstance(value, (frozenset, set)):
        return sorted((_jsonable(v) for v in value), key=str)
    if isinstance(value, (tuple, list)):
        return [_jsonable(v) for v in value]
    if dataclasses.is_dataclass(value):
        return {f.name: _jsonable(getattr(value, f.name))
                for f in dataclasses.fields(value)}
    if isinstance(value, Mapping):
        return {str(k): _jsonable(v) for k, v in value.items()}
    return value


def parse_location(value: Any, path: str = "location") -> Location:
    """Accept "Europe", "Europe/eu-west-1", or the object form."""
    region: Optional[str] = None
    if isinstance(value, str):
        name, _, region_part = value.partition("/")
        region = region_part or None
    elif isinstance(value, Mapping):
        name = value.get("continent")
        region = value.get("region_name")
    else:
        raise QueryError(f"{path}: expected a location string or object")
    try:
        continent = Continent(name)
    except ValueError:
        raise QueryError(f"{path}: unknown continent {name!r}") from None
    return Location(continent, region)


def _num(body: Mapping, key: str, default: float = 0.0) -> float:
    value = body.get(key, default)
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise QueryError(f"{key}: expected a number")
    return float(value)


def _int(body: Mapping, key: str, default: int = 0) -> int:
    value = body.get(key, default)
    if isinstance(value, bool) or not isinstance(value, int):
        if isinstance(value, float) and value.is_integer():
            return int(value)
        raise QueryError(f"{key}: expected an integer")
    return value


def parse_scenario(body: Mapping) -> Tuple[UsageScenario, Optional[int]]:
    """Parse a scenario request body; returns (scenario, top_k)."""
    if not isinstance(body, Mapping):
        raise QueryError("scenario body must be a JSON object")
    counts = {}
    for raw_verb, count in (body.get("request_counts") or {}).items():
        try:
            verb = RequestVerb(str(raw_verb).upper())
        except ValueError:
            raise QueryError(f"request_counts: unknown verb {raw_verb!r}") from None
        if isinstance(count, bool) or not isinstance(count, (int, float)):
            raise QueryError(f"request_counts[{raw_verb}]: expected a number")
        counts[verb] = count
    location = None
    if body.get("location") is not None:
        location = parse_location(body["location"])
    min_clock = body.get("min_clock_ghz")
    if min_clock is not None and (isinstance(min_clock, bool)
                                  or not isinstance(min_clock, (int, float))):
        raise QueryError("min_clock_ghz: expected a number")
    name_regex = body.get("name_regex")
    if name_regex is not None and not isinstance(name_regex, str):
        raise QueryError("name_regex: expected a string")
    persistent = body.get("persistent_storage", False)
    if not isinstance(persistent, bool):
        raise QueryError("persistent_storage: expected a boolean")
    scenario = UsageScenario(
        compute_hours=_num(body, "compute_hours"),
        instance_count=_int(body, "instance_count"),
        min_cores=_int(body, "min_cores"),
        min_memory_gb=_num(body, "min_memory_gb"),
        min_clock_ghz=float(min_clock) if min_clock is not None else None,
        storage_gb=_num(body, "storage_gb"),
        storage_duration_days=_num(body, "storage_duration_days"),
        persistent_storage_required=persistent,
        request_counts=counts,
        transfer_in_gb=_num(body, "transfer_in_gb"),
        transfer_out_gb=_num(body, "transfer_out_gb"),
        location=location,
        name_regex=name_regex,
    )
    top_k = body.get("top_k", DEFAULT_TOP_K)
    if top_k is not None:
        top_k = _int({"top_k": top_k}, "top_k", DEFAULT_TOP_K)
    return scenario, top_k


def providers_payload(view: Catalog) -> dict:
    return {
        "catalog_version": view.version,
        "providers": [
            {
                "name": p.name,
                "currency": p.currency,
                "terminology": dict(p.terminology),
                "deployment_model": p.deployment_model,
            }
            for p in view.providers
        ],
    }


def offers_payload(
    view: Catalog, query: MatchQuery, columns: Optional[List[str]] = None
) -> dict:
    """Filtered, sorted, projected offers as a column/row table."""
    if columns is None:
        columns = list(DEFAULT_COLUMNS[query.kind])
    else:
        valid = set(offer_fields(query.kind))
        for column in columns:
            if column not in valid:
                raise QueryError(f"unknown column {column!r} for {query.kind}")
    rows = match_offers(view, query)
    table = project_columns(rows, columns)
    return {
        "catalog_version": view.version,
        "kind": query.kind,
        "columns": list(table.columns),
        "rows": [[_jsonable(cell) for cell in row] for row in table.rows],
        "count": len(table.rows),
    }


def _breakdown_payload(breakdown) -> dict:
    return {
        "currency": breakdown.currency,
        "label": breakdown.label,
        "line_items": [
            {
                "label": item.label,
                "quantity": item.quantity,
                "unit_rate": item.unit_rate,
                "amount": item.amount,
            }
            for item in breakdown.line_items
        ],
        "total": breakdown.total,
    }


def recommendation_payload(rec: Recommendation) -> dict:
    return {
        "rank": rec.rank,
        "provider": rec.bundle.provider,
        "bundle": {
            "compute": rec.bundle.compute.id,
            "storage": rec.bundle.storage.id if rec.bundle.storage else None,
            "network": rec.bundle.network.id if rec.bundle.network else None,
        },
        "breakdown": _breakdown_payload(rec.breakdown),
        "catalog_version": rec.catalog_version,
    }


def recommend_payload(
    view: Catalog,
    scenario: UsageScenario,
    top_k: Optional[int],
    month_length_days: Optional[int] = None,
) -> dict:
    recommendations = recommend(view, scenario, top_k, month_length_days)
    return {
        "catalog_version": view.version,
        "recommendations": [recommendation_payload(r) for r in recommendations],
    }


def version_payload(view: Catalog) -> dict:
    return {"version": view.version}


def violations_payload(reports) -> dict:
    """Machine-readable violation list for 4xx responses and CLI errors."""
    errors = []
    for offer_id, violations in reports:
        for v in violations:
            errors.append({
                "offer": offer_id,
                "field": v.field,
                "constraint": v.constraint,
                "observed": repr(v.observed),
            })
    return {"errors": errors}
