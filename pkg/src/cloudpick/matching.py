"""Constraint matching over catalog snapshots.

Filters are plain predicates over offer fields; results are ordered by
the requested sort key with a deterministic (provider, id) tie-break so
identical queries always return identical lists.

Name patterns use Python's regex syntax restricted in spirit to the
common core (literals, classes, ``.`` ``*`` ``+`` ``?`` ``|``, anchors).
A pattern must match the whole offer name; write ``.*foo.*`` to search
for a substring.
"""

from __future__ import annotations

import dataclasses
import re
from dataclasses import dataclass
from enum import Enum
from typing import List, Optional, Pattern, Tuple

from .errors import QueryError
from .model import (
    ComputeOffer,
    Location,
    NetworkOffer,
    Offer,
    Quantity,
    StorageOffer,
    location_matches,
)
from .repository import Catalog

__all__ = [
    "MatchQuery",
    "match_compute",
    "match_storage",
    "match_network",
    "match_offers",
    "attachable_pairs",
    "project_columns",
    "Table",
    "offer_fields",
]

_OFFER_TYPES = {
    "compute": ComputeOffer,
    "storage": StorageOffer,
    "network": NetworkOffer,
}


def offer_fields(kind: str) -> Tuple[str, ...]:
    """Field names of an offer kind, usable as sort keys and columns."""
    offer_type = _OFFER_TYPES.get(kind)
    if offer_type is None:
        raise QueryError(f"unknown offer kind {kind!r}")
    return tuple(f.name for f in dataclasses.fields(offer_type))


@dataclass(frozen=True)
class MatchQuery:
    """User constraints plus ordering for one offer kind."""

    kind: str = "compute"
    min_cores: int = 0
    min_memory_gb: float = 0.0
    min_clock_ghz: Optional[float] = None
    size_gb: Optional[float] = None
    location: Optional[Location] = None
    name_regex: Optional[str] = None
    sort_key: Optional[str] = None
    sort_order: str = "asc"


def _compiled_regex(query: MatchQuery) -> Optional[Pattern]:
    if query.name_regex is None:
        return None
    try:
        return re.compile(query.name_regex)
    except re.error as exc:
        raise QueryError(f"invalid name regex {query.name_regex!r}: {exc}") from None


def _common_filters(offer: Offer, query: MatchQuery, regex: Optional[Pattern]) -> bool:
    if query.location is not None:
        if not any(location_matches(query.location, loc) for loc in offer.locations):
            return False
    if regex is not None and regex.fullmatch(offer.name) is None:
        return False
    return True


def _sort_value(offer: Offer, key: str):
    value = getattr(offer, key)
    if isinstance(value, Quantity):
        value = value.value
    elif isinstance(value, Enum):
        value = value.value
    if value is None:
        return (0, 0.0, "")
    if isinstance(value, bool):
        return (1, float(value), "")
    if isinstance(value, (int, float)):
        return (1, float(value), "")
    if isinstance(value, str):
        return (2, 0.0, value)
    raise QueryError(f"field {key!r} is not sortable")


def _order(rows: List[Offer], query: MatchQuery) -> List[Offer]:
    if query.sort_order not in ("asc", "desc"):
        raise QueryError(f"sort order must be 'asc' or 'desc', got {query.sort_order!r}")
    rows = sorted(rows, key=lambda o: (o.provider, o.id))
    if query.sort_key is not None:
        if query.sort_key not in offer_fields(query.kind):
            raise QueryError(f"unknown sort key {query.sort_key!r} for {query.kind}")
        # Stable sort keeps the (provider, id) order between equal keys,
        # for ascending and descending alike.
        rows.sort(key=lambda o: _sort_value(o, query.sort_key),
                  reverse=query.sort_order == "desc")
    return rows


def match_compute(view: Catalog, query: MatchQuery) -> List[ComputeOffer]:
    """Compute offers meeting the query's minimums, ordered deterministically."""
    if query.kind != "compute":
        raise QueryError(f"query targets {query.kind!r}, expected 'compute'")
    regex = _compiled_regex(query)
    rows = []
    for offer in view.compute:
        if offer.cores < query.min_cores:
            continue
        if offer.memory.value < query.min_memory_gb:
            continue
        if query.min_clock_ghz is not None and \
                offer.clock_speed.value < query.min_clock_ghz:
            continue
        if not _common_filters(offer, query, regex):
            continue
        rows.append(offer)
    return _order(rows, query)


def match_storage(view: Catalog, query: MatchQuery) -> List[StorageOffer]:
    """Storage offers whose size bounds admit the requested volume (inclusive)."""
    if query.kind != "storage":
        raise QueryError(f"query targets {query.kind!r}, expected 'storage'")
    if query.size_gb is not None and query.size_gb < 0:
        raise QueryError("requested size must be >= 0")
    regex = _compiled_regex(query)
    rows = []
    for offer in view.storage:
        if query.size_gb is not None and \
                not (offer.size_min.value <= query.size_gb <= offer.size_max.value):
            continue
        if not _common_filters(offer, query, regex):
            continue
        rows.append(offer)
    return _order(rows, query)


def match_network(view: Catalog, query: MatchQuery) -> List[NetworkOffer]:
    """Network offers passing the location and name filters."""
    if query.kind != "network":
        raise QueryError(f"query targets {query.kind!r}, expected 'network'")
    regex = _compiled_regex(query)
    rows = [o for o in view.network if _common_filters(o, query, regex)]
    return _order(rows, query)


def match_offers(view: Catalog, query: MatchQuery) -> List[Offer]:
    if query.kind == "compute":
        return match_compute(view, query)
    if query.kind == "storage":
        return match_storage(view, query)
    if query.kind == "network":
        return match_network(view, query)
    raise QueryError(f"unknown offer kind {query.kind!r}")


def attachable_pairs(
    view: Catalog, compute_query: MatchQuery, storage_gb: float
) -> List[Tuple[ComputeOffer, StorageOffer]]:
    """Same-provider (compute, storage) pairs where the storage declares the
    compute attachable and its bounds admit the requested volume."""
    if storage_gb <= 0:
        raise QueryError("storage volume must be > 0 for attachability pairing")
    pairs = []
    storages = sorted(view.storage, key=lambda o: (o.provider, o.id))
    for compute in match_compute(view, compute_query):
        for storage in storages:
            if storage.provider != compute.provider:
                continue
            if not (storage.size_min.value <= storage_gb <= storage.size_max.value):
                continue
            if not any(re.fullmatch(p, compute.id) for p in storage.attachable_to):
                continue
            pairs.append((compute, storage))
    return pairs


@dataclass(frozen=True)
class Table:
    """A column projection of matched offers; duplicate columns are legal."""

    columns: Tuple[str, ...]
    rows: Tuple[tuple, ...]


def project_columns(rows: List[Offer], columns) -> Table:
    """Keep exactly the requested columns, in the requested order."""
    columns = tuple(columns)
    if rows:
        available = {f.name for f in dataclasses.fields(rows[0])}
        for column in columns:
            if column not in available:
                raise QueryError(f"unknown column {column!r}")
    projected = tuple(
        tuple(getattr(offer, column) for column in columns) for offer in rows
    )
    return Table(columns, projected)
