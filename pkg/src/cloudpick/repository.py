"""Catalog documents, the versioned offer store, and (de)serialization.

The external catalog format is a UTF-8 JSON document:

    {
      "providers": [{"name", "currency", "terminology", "deployment_model"?}],
      "compute":   [...offer records...],
      "storage":   [...],
      "network":   [...],
      "qos":       [...taxonomy entries...]
    }

Quantities are ``{"value": number, "unit": string}``; locations are
``"Europe"`` or ``"Europe/eu-west-1"`` strings (an object form with
``continent``/``region_name`` is accepted on input). Offer ids match
``[a-z0-9-]+`` and reference providers by name.

Loads are all-or-nothing: every offer is normalized and validated, and a
single RejectedOfferError reports all invalid offers at once.
"""

from __future__ import annotations

import dataclasses
import json
import threading
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Dict, List, Mapping, Optional, Tuple, Union

from .errors import IntegrityError, ParseError, RejectedOfferError
from . import model as m
from .model import (
    BillingUnit,
    ComputeOffer,
    Continent,
    FeeStatus,
    Location,
    MemoryAddressSize,
    NetworkOffer,
    Offer,
    PlanType,
    PricePlan,
    Provider,
    QosKind,
    QosTaxonomyEntry,
    Quantity,
    RegionalPrice,
    RequestCategory,
    RequestFeeRule,
    RequestVerb,
    StorageKind,
    StorageOffer,
    Violation,
    validate_taxonomy,
)
from .normalize import normalize_offer

__all__ = [
    "Catalog",
    "CatalogStore",
    "load_catalog",
    "parse_offer_record",
    "offer_to_record",
    "catalog_to_document",
    "OFFER_KINDS",
]

OFFER_KINDS = ("compute", "storage", "network")


class _FieldError(Exception):
    """Internal: a bad value at a known path, convertible to a Violation."""

    def __init__(self, path: str, constraint: str, observed: Any):
        self.violation = Violation(path, constraint, observed)
        super().__init__(str(self.violation))


def _require(record: Mapping, key: str, path: str) -> Any:
    if key not in record:
        raise _FieldError(f"{path}.{key}", "required field present", None)
    return record[key]


def _string(value: Any, path: str) -> str:
    if not isinstance(value, str):
        raise _FieldError(path, "string value", value)
    return value


def _number(value: Any, path: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise _FieldError(path, "numeric value", value)
    return float(value)


def _integer(value: Any, path: str) -> int:
    if isinstance(value, bool):
        raise _FieldError(path, "integer value", value)
    if isinstance(value, int):
        return value
    if isinstance(value, float) and value.is_integer():
        return int(value)
    raise _FieldError(path, "integer value", value)


def _boolean(value: Any, path: str) -> bool:
    if not isinstance(value, bool):
        raise _FieldError(path, "boolean value", value)
    return value


def _quantity(value: Any, path: str) -> Quantity:
    if not isinstance(value, Mapping):
        raise _FieldError(path, 'quantity object {"value", "unit"}', value)
    raw = _number(_require(value, "value", path), f"{path}.value")
    unit = _string(_require(value, "unit", path), f"{path}.unit")
    try:
        return Quantity(raw, unit)
    except ValueError as exc:
        raise _FieldError(path, "unit from the closed unit set", str(exc)) from None


def _location(value: Any, path: str) -> Location:
    region: Optional[str] = None
    if isinstance(value, str):
        name, _, region_part = value.partition("/")
        region = region_part or None
    elif isinstance(value, Mapping):
        name = _string(_require(value, "continent", path), f"{path}.continent")
        region = value.get("region_name")
        if region is not None:
            region = _string(region, f"{path}.region_name")
    else:
        raise _FieldError(path, m.LOCATION, value)
    try:
        continent = Continent(name)
    except ValueError:
        raise _FieldError(path, m.LOCATION, name) from None
    return Location(continent, region)


def _locations(value: Any, path: str) -> frozenset:
    if not isinstance(value, list):
        raise _FieldError(path, "list of locations", value)
    return frozenset(_location(v, f"{path}[{i}]") for i, v in enumerate(value))


def _enum(enum_cls, value: Any, path: str, constraint: str):
    try:
        return enum_cls(value)
    except ValueError:
        raise _FieldError(path, constraint, value) from None


def _regional_prices(value: Any, path: str) -> Tuple[RegionalPrice, ...]:
    if not isinstance(value, list):
        raise _FieldError(path, "list of regional prices", value)
    out = []
    for i, entry in enumerate(value):
        epath = f"{path}[{i}]"
        if not isinstance(entry, Mapping):
            raise _FieldError(epath, 'object {"locations", "price"}', entry)
        locs = entry.get("locations")
        if locs is None and "location" in entry:
            locs = [entry["location"]]
        if not isinstance(locs, list) or not locs:
            raise _FieldError(f"{epath}.locations", "non-empty location list", locs)
        price = _number(_require(entry, "price", epath), f"{epath}.price")
        out.append(RegionalPrice(
            frozenset(_location(l, f"{epath}.locations[{j}]") for j, l in enumerate(locs)),
            price,
        ))
    return tuple(out)


def _plan(record: Any, path: str, plan_type_constraint: str) -> PricePlan:
    if not isinstance(record, Mapping):
        raise _FieldError(path, "price plan object", record)
    plan_type = _enum(PlanType, _require(record, "plan_type", path),
                      f"{path}.plan_type", plan_type_constraint)
    billing = _enum(BillingUnit, _require(record, "billing_unit", path),
                    f"{path}.billing_unit",
                    "billingUnit in {per-hour, per-ram-hour, per-gb-month, "
                    "per-request, per-gb-transferred}")
    kwargs: Dict[str, Any] = {
        "plan_type": plan_type,
        "billing_unit": billing,
        "cost_per_period": _quantity(_require(record, "cost_per_period", path),
                                     f"{path}.cost_per_period"),
        "period_length": _quantity(_require(record, "period_length", path),
                                   f"{path}.period_length"),
    }
    if record.get("included_capacity") is not None:
        kwargs["included_capacity"] = _quantity(record["included_capacity"],
                                                f"{path}.included_capacity")
    if record.get("cost_over_limit") is not None:
        kwargs["cost_over_limit"] = _quantity(record["cost_over_limit"],
                                              f"{path}.cost_over_limit")
    if record.get("regional_prices") is not None:
        kwargs["regional_prices"] = _regional_prices(record["regional_prices"],
                                                     f"{path}.regional_prices")
    if record.get("month_length_days") is not None:
        kwargs["month_length_days"] = _integer(record["month_length_days"],
                                               f"{path}.month_length_days")
    if record.get("hour_rounding") is not None:
        rounding = _string(record["hour_rounding"], f"{path}.hour_rounding")
        if rounding not in ("ceil", "exact"):
            raise _FieldError(f"{path}.hour_rounding", "one of {ceil, exact}", rounding)
        kwargs["hour_rounding"] = rounding
    return PricePlan(**kwargs)


def _plans(record: Mapping, path: str, plan_type_constraint: str) -> Tuple[PricePlan, ...]:
    raw = record.get("plans", [])
    if not isinstance(raw, list):
        raise _FieldError(f"{path}.plans", "list of price plans", raw)
    return tuple(_plan(p, f"{path}.plans[{i}]", plan_type_constraint)
                 for i, p in enumerate(raw))


def _request_rules(record: Mapping, path: str) -> Tuple[RequestFeeRule, ...]:
    raw = record.get("request_pricing", [])
    if not isinstance(raw, list):
        raise _FieldError(f"{path}.request_pricing", "list of fee rules", raw)
    rules = []
    for i, entry in enumerate(raw):
        epath = f"{path}.request_pricing[{i}]"
        if not isinstance(entry, Mapping):
            raise _FieldError(epath, "fee rule object", entry)
        verbs_raw = _require(entry, "verbs", epath)
        if not isinstance(verbs_raw, list) or not verbs_raw:
            raise _FieldError(f"{epath}.verbs", "non-empty verb list", verbs_raw)
        verbs = frozenset(
            _enum(RequestVerb, v, f"{epath}.verbs[{j}]", m.REQUEST_TYPE)
            for j, v in enumerate(verbs_raw)
        )
        category = _enum(RequestCategory, _require(entry, "category", epath),
                         f"{epath}.category", "category in {Upload, Download, Other}")
        status = _enum(FeeStatus, _require(entry, "fee_status", epath),
                       f"{epath}.fee_status",
                       "feeStatus in {Charged, Free, Unspecified}")
        cost = None
        if entry.get("cost_per_request") is not None:
            cost = _quantity(entry["cost_per_request"], f"{epath}.cost_per_request")
        rules.append(RequestFeeRule(verbs, category, status, cost))
    return tuple(rules)


def _offer_header(record: Mapping, path: str) -> Tuple[str, str, str]:
    offer_id = _string(_require(record, "id", path), f"{path}.id")
    provider = _string(_require(record, "provider", path), f"{path}.provider")
    name = _string(_require(record, "name", path), f"{path}.name")
    return offer_id, provider, name


def _parse_compute(record: Mapping, path: str) -> ComputeOffer:
    offer_id, provider, name = _offer_header(record, path)
    kwargs: Dict[str, Any] = {
        "id": offer_id,
        "provider": provider,
        "name": name,
        "cores": _integer(_require(record, "cores", path), f"{path}.cores"),
        "clock_speed": _quantity(_require(record, "clock_speed", path),
                                 f"{path}.clock_speed"),
        "memory": _quantity(_require(record, "memory", path), f"{path}.memory"),
        "locations": _locations(record.get("locations", []), f"{path}.locations"),
        "plans": _plans(record, path, m.PLAN_TYPE_COMPUTE),
    }
    if record.get("memory_address_size") is not None:
        kwargs["memory_address_size"] = _enum(
            MemoryAddressSize, record["memory_address_size"],
            f"{path}.memory_address_size", "memory address size in {32-bit, 64-bit}")
    if record.get("local_storage") is not None:
        kwargs["local_storage"] = _quantity(record["local_storage"],
                                            f"{path}.local_storage")
    if record.get("virtualization") is not None:
        kwargs["virtualization"] = _string(record["virtualization"],
                                           f"{path}.virtualization")
    if record.get("clustered") is not None:
        kwargs["clustered"] = _boolean(record["clustered"], f"{path}.clustered")
    nets = record.get("supported_networks", [])
    if not isinstance(nets, list):
        raise _FieldError(f"{path}.supported_networks", "list of network offer ids", nets)
    kwargs["supported_networks"] = frozenset(
        _string(n, f"{path}.supported_networks[{i}]") for i, n in enumerate(nets))
    return ComputeOffer(**kwargs)


def _parse_storage(record: Mapping, path: str) -> StorageOffer:
    offer_id, provider, name = _offer_header(record, path)
    attach = record.get("attachable_to", [])
    if not isinstance(attach, list):
        raise _FieldError(f"{path}.attachable_to", "list of id patterns", attach)
    return StorageOffer(
        id=offer_id,
        provider=provider,
        name=name,
        kind=_enum(StorageKind, _require(record, "kind", path), f"{path}.kind",
                   "kind in {LocalStorage, NetworkStorage, BlockStorage, ObjectStorage}"),
        size_min=_quantity(_require(record, "size_min", path), f"{path}.size_min"),
        size_max=_quantity(_require(record, "size_max", path), f"{path}.size_max"),
        attachable_to=tuple(_string(p, f"{path}.attachable_to[{i}]")
                            for i, p in enumerate(attach)),
        locations=_locations(record.get("locations", []), f"{path}.locations"),
        request_pricing=_request_rules(record, path),
        plans=_plans(record, path, m.PLAN_TYPE_STORAGE),
    )


def _parse_network(record: Mapping, path: str) -> NetworkOffer:
    offer_id, provider, name = _offer_header(record, path)
    protocols = record.get("protocols", [])
    if not isinstance(protocols, list):
        raise _FieldError(f"{path}.protocols", "list of protocol names", protocols)
    bandwidth = None
    if record.get("bandwidth") is not None:
        bandwidth = _quantity(record["bandwidth"], f"{path}.bandwidth")
    return NetworkOffer(
        id=offer_id,
        provider=provider,
        name=name,
        cost_data_transfer_in=_quantity(_require(record, "cost_data_transfer_in", path),
                                        f"{path}.cost_data_transfer_in"),
        cost_data_transfer_out=_quantity(_require(record, "cost_data_transfer_out", path),
                                         f"{path}.cost_data_transfer_out"),
        bandwidth=bandwidth,
        protocols=frozenset(_string(p, f"{path}.protocols[{i}]")
                            for i, p in enumerate(protocols)),
        locations=_locations(record.get("locations", []), f"{path}.locations"),
    )


_PARSERS = {
    "compute": _parse_compute,
    "storage": _parse_storage,
    "network": _parse_network,
}


def parse_offer_record(kind: str, record: Mapping, path: str = "") -> Offer:
    """Parse one raw offer record of the given kind.

    Raises RejectedOfferError carrying a violation report when the
    record is structurally unusable (missing fields, bad enums).
    """
    if kind not in _PARSERS:
        raise ParseError(path or kind, f"unknown offer kind {kind!r}")
    path = path or kind
    try:
        return _PARSERS[kind](record, path)
    except _FieldError as exc:
        offer_id = record.get("id", "<unknown>") if isinstance(record, Mapping) else "<unknown>"
        raise RejectedOfferError([(offer_id, [exc.violation])]) from None


def _parse_provider(record: Any, path: str) -> Provider:
    if not isinstance(record, Mapping):
        raise ParseError(path, "provider must be an object")
    try:
        terminology = record.get("terminology", {})
        if not isinstance(terminology, Mapping):
            raise _FieldError(f"{path}.terminology", "object of concept -> name", terminology)
        deployment = record.get("deployment_model")
        if deployment is not None:
            deployment = _string(deployment, f"{path}.deployment_model")
        return Provider(
            name=_string(_require(record, "name", path), f"{path}.name"),
            currency=_string(_require(record, "currency", path), f"{path}.currency"),
            terminology=dict(terminology),
            deployment_model=deployment,
        )
    except (_FieldError, ValueError) as exc:
        raise ParseError(path, str(exc)) from None


def _parse_qos(record: Any, path: str) -> QosTaxonomyEntry:
    if not isinstance(record, Mapping):
        raise ParseError(path, "taxonomy entry must be an object")
    try:
        parent = record.get("parent")
        linked = record.get("linked_metric")
        return QosTaxonomyEntry(
            name=_string(_require(record, "name", path), f"{path}.name"),
            kind=_enum(QosKind, _require(record, "kind", path), f"{path}.kind",
                       "kind in {MeasurableAttribute, UnmeasurableAttribute, Metric}"),
            parent=_string(parent, f"{path}.parent") if parent is not None else None,
            linked_metric=_string(linked, f"{path}.linked_metric") if linked is not None else None,
        )
    except _FieldError as exc:
        raise ParseError(path, str(exc)) from None


@dataclass(frozen=True)
class Catalog:
    """An immutable snapshot of every provider, offer, and taxonomy entry."""

    providers: Tuple[Provider, ...] = ()
    compute: Tuple[ComputeOffer, ...] = ()
    storage: Tuple[StorageOffer, ...] = ()
    network: Tuple[NetworkOffer, ...] = ()
    qos: Tuple[QosTaxonomyEntry, ...] = ()
    version: int = 1

    def provider(self, name: str) -> Provider:
        for p in self.providers:
            if p.name == name:
                return p
        raise IntegrityError(f"unknown provider {name!r}")

    def offers(self, kind: str) -> Tuple[Offer, ...]:
        if kind not in OFFER_KINDS:
            raise ParseError(kind, "unknown offer kind")
        return getattr(self, kind)

    def all_offers(self) -> Tuple[Offer, ...]:
        return self.compute + self.storage + self.network

    def find_offer(self, offer_id: str) -> Optional[Offer]:
        for offer in self.all_offers():
            if offer.id == offer_id:
                return offer
        return None

    def currency_of(self, offer: Offer) -> str:
        return self.provider(offer.provider).currency


def _offer_price_currencies(offer: Offer):
    quantities = []
    if isinstance(offer, (ComputeOffer, StorageOffer)):
        for plan in offer.plans:
            quantities.append(plan.cost_per_period)
            if plan.cost_over_limit is not None:
                quantities.append(plan.cost_over_limit)
    if isinstance(offer, StorageOffer):
        for rule in offer.request_pricing:
            if rule.cost_per_request is not None:
                quantities.append(rule.cost_per_request)
    if isinstance(offer, NetworkOffer):
        quantities.extend([offer.cost_data_transfer_in, offer.cost_data_transfer_out])
    return {q.currency for q in quantities if q.is_price}


def _check_integrity(catalog: Catalog) -> None:
    names = [p.name for p in catalog.providers]
    if len(names) != len(set(names)):
        raise IntegrityError("provider names must be unique")
    provider_by_name = {p.name: p for p in catalog.providers}
    ids = [o.id for o in catalog.all_offers()]
    dupes = {i for i in ids if ids.count(i) > 1}
    if dupes:
        raise IntegrityError(f"duplicate offer ids: {sorted(dupes)}")
    network_ids = {o.id for o in catalog.network}
    for offer in catalog.all_offers():
        if offer.provider not in provider_by_name:
            raise IntegrityError(
                f"offer {offer.id} references unknown provider {offer.provider!r}")
        currencies = _offer_price_currencies(offer)
        expected = provider_by_name[offer.provider].currency
        if currencies - {expected}:
            raise IntegrityError(
                f"offer {offer.id} quotes {sorted(currencies)} but provider "
                f"{offer.provider} bills in {expected}")
    for offer in catalog.compute:
        missing = offer.supported_networks - network_ids
        if missing:
            raise IntegrityError(
                f"offer {offer.id} references unknown networks {sorted(missing)}")
    taxonomy_report = validate_taxonomy(catalog.qos)
    if taxonomy_report:
        raise IntegrityError("; ".join(str(v) for v in taxonomy_report))


def _ingest_offer(kind: str, record: Mapping, path: str) -> Offer:
    offer = parse_offer_record(kind, record, path)
    return normalize_offer(offer)


def load_catalog(source: Union[Mapping, str, Path]) -> Catalog:
    """Load, normalize, and validate a whole catalog document.

    The load is all-or-nothing: if any offer is invalid the whole
    document is rejected with a report covering every bad offer.
    """
    if isinstance(source, (str, Path)):
        text = Path(source).read_text(encoding="utf-8")
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ParseError(f"{source}:{exc.lineno}:{exc.colno}", exc.msg) from None
    else:
        doc = source
    if not isinstance(doc, Mapping):
        raise ParseError("$", "catalog document must be a JSON object")
    known = {"providers", "compute", "storage", "network", "qos"}
    unknown = set(doc) - known
    if unknown:
        raise ParseError("$", f"unknown top-level keys: {sorted(unknown)}")
    for key in known:
        if key in doc and not isinstance(doc[key], list):
            raise ParseError(key, "must be a JSON array")

    providers = tuple(_parse_provider(r, f"providers[{i}]")
                      for i, r in enumerate(doc.get("providers", [])))
    qos = tuple(_parse_qos(r, f"qos[{i}]") for i, r in enumerate(doc.get("qos", [])))

    offers: Dict[str, List[Offer]] = {kind: [] for kind in OFFER_KINDS}
    reports: List[Tuple[str, list]] = []
    for kind in OFFER_KINDS:
        for i, record in enumerate(doc.get(kind, [])):
            try:
                offers[kind].append(_ingest_offer(kind, record, f"{kind}[{i}]"))
            except RejectedOfferError as exc:
                reports.extend(exc.reports)
    if reports:
        raise RejectedOfferError(reports)

    catalog = Catalog(
        providers=providers,
        compute=tuple(offers["compute"]),
        storage=tuple(offers["storage"]),
        network=tuple(offers["network"]),
        qos=qos,
        version=1,
    )
    _check_integrity(catalog)
    return catalog


# ---------------------------------------------------------------------------
# Serialization back out to the document format.

def _quantity_record(q: Quantity) -> dict:
    return {"value": q.value, "unit": q.unit}

def _location_str(loc: Location) -> str:
    return str(loc)

def _plan_record(plan: PricePlan) -> dict:
    record: Dict[str, Any] = {
        "plan_type": plan.plan_type.value,
        "billing_unit": plan.billing_unit.value,
        "cost_per_period": _quantity_record(plan.cost_per_period),
        "period_length": _quantity_record(plan.period_length),
    }
    if plan.included_capacity is not None:
        record["included_capacity"] = _quantity_record(plan.included_capacity)
    if plan.cost_over_limit is not None:
        record["cost_over_limit"] = _quantity_record(plan.cost_over_limit)
    if plan.regional_prices:
        record["regional_prices"] = [
            {"locations": sorted(_location_str(l) for l in rp.locations),
             "price": rp.price}
            for rp in plan.regional_prices
        ]
    if plan.month_length_days != 31:
        record["month_length_days"] = plan.month_length_days
    if plan.hour_rounding != "ceil":
        record["hour_rounding"] = plan.hour_rounding
    return record


def offer_to_record(offer: Offer) -> dict:
    """Serialize an offer back to its document record form."""
    record: Dict[str, Any] = {
        "id": offer.id,
        "provider": offer.provider,
        "name": offer.name,
    }
    if isinstance(offer, ComputeOffer):
        record["cores"] = offer.cores
        record["clock_speed"] = _quantity_record(offer.clock_speed)
        record["memory"] = _quantity_record(offer.memory)
        if offer.memory_address_size is not None:
            record["memory_address_size"] = offer.memory_address_size.value
        if offer.local_storage is not None:
            record["local_storage"] = _quantity_record(offer.local_storage)
        if offer.virtualization is not None:
            record["virtualization"] = offer.virtualization
        record["clustered"] = offer.clustered
        record["locations"] = sorted(_location_str(l) for l in offer.locations)
        if offer.supported_networks:
            record["supported_networks"] = sorted(offer.supported_networks)
        record["plans"] = [_plan_record(p) for p in offer.plans]
    elif isinstance(offer, StorageOffer):
        record["kind"] = offer.kind.value
        record["size_min"] = _quantity_record(offer.size_min)
        record["size_max"] = _quantity_record(offer.size_max)
        if offer.attachable_to:
            record["attachable_to"] = list(offer.attachable_to)
        record["locations"] = sorted(_location_str(l) for l in offer.locations)
        if offer.request_pricing:
            record["request_pricing"] = [
                {
                    "verbs": sorted(v.value for v in rule.verbs),
                    "category": rule.category.value,
                    "fee_status": rule.fee_status.value,
                    **({"cost_per_request": _quantity_record(rule.cost_per_request)}
                       if rule.cost_per_request is not None else {}),
                }
                for rule in offer.request_pricing
            ]
        record["plans"] = [_plan_record(p) for p in offer.plans]
    elif isinstance(offer, NetworkOffer):
        if offer.bandwidth is not None:
            record["bandwidth"] = _quantity_record(offer.bandwidth)
        if offer.protocols:
            record["protocols"] = sorted(offer.protocols)
        record["cost_data_transfer_in"] = _quantity_record(offer.cost_data_transfer_in)
        record["cost_data_transfer_out"] = _quantity_record(offer.cost_data_transfer_out)
        record["locations"] = sorted(_location_str(l) for l in offer.locations)
    return record


def catalog_to_document(catalog: Catalog) -> dict:
    """Serialize a catalog back to the external JSON document form."""
    return {
        "providers": [
            {
                "name": p.name,
                "currency": p.currency,
                "terminology": dict(p.terminology),
                **({"deployment_model": p.deployment_model}
                   if p.deployment_model is not None else {}),
            }
            for p in catalog.providers
        ],
        "compute": [offer_to_record(o) for o in catalog.compute],
        "storage": [offer_to_record(o) for o in catalog.storage],
        "network": [offer_to_record(o) for o in catalog.network],
        "qos": [
            {
                "name": e.name,
                "kind": e.kind.value,
                **({"parent": e.parent} if e.parent is not None else {}),
                **({"linked_metric": e.linked_metric} if e.linked_metric is not None else {}),
            }
            for e in catalog.qos
        ],
    }


class CatalogStore:
    """Versioned, single-writer holder of the live catalog.

    Readers take snapshots (plain immutable Catalog values) with no
    coordination; writes are serialized behind a lock and never mutate
    snapshots already handed out. With a backing path configured, every
    successful write rewrites the catalog document.
    """

    def __init__(self, catalog: Catalog, path: Optional[Union[str, Path]] = None):
        self._catalog = catalog
        self._path = Path(path) if path is not None else None
        self._lock = threading.Lock()

    @classmethod
    def open(cls, path: Union[str, Path]) -> "CatalogStore":
        return cls(load_catalog(path), path=path)

    @property
    def version(self) -> int:
        return self._catalog.version

    def snapshot(self) -> Catalog:
        """The current immutable catalog; later writes never affect it."""
        return self._catalog

    def upsert_offer(self, kind: str, record: Mapping) -> Catalog:
        """Normalize, validate, and insert or replace one offer by id.

        Returns the new catalog version. On any failure the store (and
        every existing snapshot) is left untouched.
        """
        if kind not in OFFER_KINDS:
            raise ParseError(kind, "unknown offer kind")
        offer = _ingest_offer(kind, record, kind)
        with self._lock:
            current = self._catalog
            existing = current.find_offer(offer.id)
            if existing is not None and not isinstance(existing, type(offer)):
                raise IntegrityError(
                    f"offer id {offer.id} already used by a different offer kind")
            members = list(getattr(current, kind))
            for i, member in enumerate(members):
                if member.id == offer.id:
                    members[i] = offer
                    break
            else:
                members.append(offer)
            candidate = dataclasses.replace(
                current, **{kind: tuple(members)}, version=current.version + 1)
            _check_integrity(candidate)
            self._catalog = candidate
            if self._path is not None:
                self._write_back(candidate)
            return candidate

    def _write_back(self, catalog: Catalog) -> None:
        text = json.dumps(catalog_to_document(catalog), indent=2, sort_keys=True)
        self._path.write_text(text + "\n", encoding="utf-8")
