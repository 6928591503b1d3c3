"""Typed domain model for the multi-cloud IaaS catalog.

Everything here is an immutable value: offers, plans, locations, usage
scenarios. Range checking is deliberately *not* done in constructors;
``validate_offer`` turns every broken constraint into a ``Violation``
record so callers can report all problems at once. Only structural
impossibilities (unknown units, non-finite numbers) raise at
construction time.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Mapping, Optional, Union

__all__ = [
    "Quantity",
    "Continent",
    "Location",
    "Provider",
    "PlanType",
    "BillingUnit",
    "StorageKind",
    "MemoryAddressSize",
    "RequestVerb",
    "RequestCategory",
    "FeeStatus",
    "RegionalPrice",
    "RequestFeeRule",
    "PricePlan",
    "ComputeOffer",
    "StorageOffer",
    "NetworkOffer",
    "QosKind",
    "QosTaxonomyEntry",
    "UsageScenario",
    "Violation",
    "validate_offer",
    "validate_scenario",
    "validate_taxonomy",
    "location_matches",
]

OFFER_ID_RE = re.compile(r"^[a-z0-9-]+$")
_CURRENCY_RE = re.compile(r"^[A-Z]{3}$")

SIZE_UNITS = ("MB", "GB", "TB")
FREQUENCY_UNITS = ("GHz", "ECU")
TIME_UNITS = ("hour", "day", "month")
BASE_UNITS = SIZE_UNITS + FREQUENCY_UNITS + TIME_UNITS + ("count",)

# Denominators allowed in composite price units ("<CUR>/<denominator>").
PRICE_DENOMINATORS = ("hour", "day", "month", "RAM-hour", "GB-month", "request", "GB")
_PRICE_UNIT_RE = re.compile(
    r"^([A-Z]{3})/(hour|day|month|RAM-hour|GB-month|request|GB)$"
)


def is_valid_unit(unit: str) -> bool:
    return unit in BASE_UNITS or _PRICE_UNIT_RE.match(unit) is not None


@dataclass(frozen=True)
class Quantity:
    """A numeric value paired with a unit of measurement.

    Units are either base units (sizes, frequencies, times, count) or
    composite price units that name both a currency and a denominator,
    e.g. ``"USD/GB-month"``.
    """

    value: float
    unit: str

    def __post_init__(self):
        if not isinstance(self.value, (int, float)) or isinstance(self.value, bool):
            raise ValueError(f"quantity value must be numeric, got {self.value!r}")
        if not math.isfinite(self.value):
            raise ValueError(f"quantity value must be finite, got {self.value!r}")
        if not is_valid_unit(self.unit):
            raise ValueError(f"unknown unit {self.unit!r}")
        object.__setattr__(self, "value", float(self.value))

    @property
    def is_price(self) -> bool:
        return "/" in self.unit

    @property
    def currency(self) -> str:
        m = _PRICE_UNIT_RE.match(self.unit)
        if m is None:
            raise ValueError(f"{self.unit!r} is not a price unit")
        return m.group(1)

    @property
    def denominator(self) -> str:
        m = _PRICE_UNIT_RE.match(self.unit)
        if m is None:
            raise ValueError(f"{self.unit!r} is not a price unit")
        return m.group(2)

    def __str__(self) -> str:
        return f"{self.value:g} {self.unit}"


class Continent(Enum):
    NORTH_AMERICA = "NorthAmerica"
    SOUTH_AMERICA = "SouthAmerica"
    AFRICA = "Africa"
    EUROPE = "Europe"
    ASIA = "Asia"
    AUSTRALIA = "Australia"


@dataclass(frozen=True)
class Location:
    """A continent plus an optional provider region name."""

    continent: Continent
    region_name: Optional[str] = None

    def __str__(self) -> str:
        if self.region_name:
            return f"{self.continent.value}/{self.region_name}"
        return self.continent.value


def location_matches(constraint: Location, candidate: Location) -> bool:
    """True when ``candidate`` satisfies a user's location constraint.

    A constraint without a region name accepts any region on the same
    continent; with a region name it must match exactly.
    """
    if constraint.continent is not candidate.continent:
        return False
    if constraint.region_name is None:
        return True
    return constraint.region_name == candidate.region_name


@dataclass(frozen=True)
class Provider:
    """A cloud provider, including its marketing names for canonical concepts."""

    name: str
    currency: str
    terminology: Mapping[str, str] = field(default_factory=dict)
    deployment_model: Optional[str] = None

    def __post_init__(self):
        if not _CURRENCY_RE.match(self.currency):
            raise ValueError(f"currency must be an ISO-4217 code, got {self.currency!r}")


class PlanType(Enum):
    PAY_AS_YOU_GO = "pay-as-you-go"
    PREPAID = "prepaid"
    REDUCED_REDUNDANCY = "reduced-redundancy"


class BillingUnit(Enum):
    PER_HOUR = "per-hour"
    PER_RAM_HOUR = "per-ram-hour"
    PER_GB_MONTH = "per-gb-month"
    PER_REQUEST = "per-request"
    PER_GB_TRANSFERRED = "per-gb-transferred"


class StorageKind(Enum):
    LOCAL = "LocalStorage"
    NETWORK = "NetworkStorage"
    BLOCK = "BlockStorage"
    OBJECT = "ObjectStorage"


class MemoryAddressSize(Enum):
    BITS_32 = "32-bit"
    BITS_64 = "64-bit"


class RequestVerb(Enum):
    PUT = "PUT"
    COPY = "COPY"
    POST = "POST"
    LIST = "LIST"
    GET = "GET"
    HEAD = "HEAD"
    DELETE = "DELETE"
    SEARCH = "SEARCH"
    TRANSACTION = "TRANSACTION"


class RequestCategory(Enum):
    UPLOAD = "Upload"
    DOWNLOAD = "Download"
    OTHER = "Other"


class FeeStatus(Enum):
    CHARGED = "Charged"
    FREE = "Free"
    UNSPECIFIED = "Unspecified"


@dataclass(frozen=True)
class RegionalPrice:
    """A rate override shared by a group of locations."""

    locations: frozenset
    price: float


@dataclass(frozen=True)
class RequestFeeRule:
    """Fee status for a group of storage API verbs.

    A rule with verbs == {TRANSACTION} is a flat transaction rule that
    covers every verb (Azure-style per-operation pricing).
    """

    verbs: frozenset
    category: RequestCategory
    fee_status: FeeStatus
    cost_per_request: Optional[Quantity] = None


@dataclass(frozen=True)
class PricePlan:
    """Pricing semantics for one offer.

    ``included_capacity`` is interpreted in the measure implied by
    ``billing_unit``: instance hours for per-hour billing, RAM-hours for
    per-RAM-hour billing, GB-months for per-GB-month billing.
    ``hour_rounding`` controls whether started hours bill as whole hours
    ("ceil", the default) or exactly ("exact").
    """

    plan_type: PlanType
    billing_unit: BillingUnit
    cost_per_period: Quantity
    period_length: Quantity
    included_capacity: Optional[Quantity] = None
    cost_over_limit: Optional[Quantity] = None
    regional_prices: tuple = ()
    month_length_days: int = 31
    hour_rounding: str = "ceil"

    def __post_init__(self):
        if self.hour_rounding not in ("ceil", "exact"):
            raise ValueError(f"hour_rounding must be 'ceil' or 'exact', got {self.hour_rounding!r}")


@dataclass(frozen=True)
class ComputeOffer:
    """A purchasable compute resource in canonical or provider-native units."""

    id: str
    provider: str
    name: str
    cores: int
    clock_speed: Quantity
    memory: Quantity
    memory_address_size: Optional[MemoryAddressSize] = None
    local_storage: Optional[Quantity] = None
    virtualization: Optional[str] = None
    clustered: bool = False
    locations: frozenset = frozenset()
    supported_networks: frozenset = frozenset()
    plans: tuple = ()


@dataclass(frozen=True)
class StorageOffer:
    """A purchasable storage resource with size bounds and request fees."""

    id: str
    provider: str
    name: str
    kind: StorageKind
    size_min: Quantity
    size_max: Quantity
    attachable_to: tuple = ()
    locations: frozenset = frozenset()
    request_pricing: tuple = ()
    plans: tuple = ()


@dataclass(frozen=True)
class NetworkOffer:
    """A network resource with data transfer rates."""

    id: str
    provider: str
    name: str
    cost_data_transfer_in: Quantity
    cost_data_transfer_out: Quantity
    bandwidth: Optional[Quantity] = None
    protocols: frozenset = frozenset()
    locations: frozenset = frozenset()


Offer = Union[ComputeOffer, StorageOffer, NetworkOffer]


class QosKind(Enum):
    MEASURABLE = "MeasurableAttribute"
    UNMEASURABLE = "UnmeasurableAttribute"
    METRIC = "Metric"


@dataclass(frozen=True)
class QosTaxonomyEntry:
    """A node in the QoS attribute/metric taxonomy (data only, no reasoning)."""

    name: str
    kind: QosKind
    parent: Optional[str] = None
    linked_metric: Optional[str] = None


@dataclass(frozen=True)
class UsageScenario:
    """A user's demand profile used for matching and cost ranking."""

    compute_hours: float = 0.0
    instance_count: int = 0
    min_cores: int = 0
    min_memory_gb: float = 0.0
    min_clock_ghz: Optional[float] = None
    storage_gb: float = 0.0
    storage_duration_days: float = 0.0
    persistent_storage_required: bool = False
    request_counts: Mapping[RequestVerb, int] = field(default_factory=dict)
    transfer_in_gb: float = 0.0
    transfer_out_gb: float = 0.0
    location: Optional[Location] = None
    name_regex: Optional[str] = None


@dataclass(frozen=True)
class Violation:
    """One broken constraint: which field, which rule, what was seen."""

    field: str
    constraint: str
    observed: Any

    def __str__(self) -> str:
        return f"{self.field}: violates '{self.constraint}' (observed {self.observed!r})"


# Constraint strings, named after the configuration parameters they guard.
CORE = "Core >= 1"
CPU_CLOCK_SPEED = "CPUClockSpeed > 0"
HAS_MEMORY = "hasMemory > 0"
HAS_CAPACITY = "hasCapacity >= 0"
LOCATION = "Location in {NorthAmerica, SouthAmerica, Africa, Europe, Asia, Australia}"
COST_PER_PERIOD = "CostPerPeriod >= 0"
PERIOD_LENGTH = "PeriodLength > 0"
COST_OVER_LIMIT = "CostOverLimit >= 0"
PLAN_TYPE_COMPUTE = "PlanType in {Pay As You Go, Prepaid}"
PLAN_TYPE_STORAGE = "PlanType in {Pay As You Go, Prepaid, Reduced Redundancy}"
STORAGE_SIZE_MIN = "StorageSizeMin >= 0"
STORAGE_SIZE_MAX = "StorageSizeMax > 0"
STORAGE_SIZE_ORDER = "StorageSizeMin <= StorageSizeMax"
REQUEST_TYPE = (
    "RequestType in {PUT, COPY, POST, LIST, GET, HEAD, DELETE, SEARCH, TRANSACTION}"
)
COST_PER_REQUEST = "CostPerRequest >= 0"
COST_DATA_TRANSFER_IN = "CostDataTransferIn >= 0"
COST_DATA_TRANSFER_OUT = "CostDataTransferOut > 0"

OFFER_ID_RULE = "offer id matches [a-z0-9-]+"
PLANS_NON_EMPTY = "at least one PricePlan"
PREPAID_COMPLETE = "Prepaid requires hasCapacity and CostOverLimit"
REGIONAL_UNIQUE = "no two regional prices share a Location"
PRICE_UNIT_RULE = "price quantities use a currency/denominator unit"
ATTACHABLE_KIND = "attachableTo only on NetworkStorage or BlockStorage"
ATTACHABLE_PATTERN = "attachableTo patterns are valid regular expressions"
VERB_UNIQUE = "each verb maps to at most one rule"
CHARGED_HAS_COST = "CostPerRequest present iff feeStatus is Charged"
NON_NEGATIVE = "Value >= 0"
MONTH_LENGTH = "month length >= 1 day"


_COMPUTE_PLAN_TYPES = (PlanType.PAY_AS_YOU_GO, PlanType.PREPAID)
_STORAGE_PLAN_TYPES = (
    PlanType.PAY_AS_YOU_GO,
    PlanType.PREPAID,
    PlanType.REDUCED_REDUNDANCY,
)


def _check_price(q: Optional[Quantity], path: str, constraint: str, out: list,
                 allow_zero: bool = True) -> None:
    if q is None:
        return
    if not q.is_price:
        out.append(Violation(path, PRICE_UNIT_RULE, q.unit))
    if q.value < 0 or (not allow_zero and q.value == 0):
        out.append(Violation(path, constraint, q.value))


def _validate_plan(plan: PricePlan, allowed_types, type_constraint: str,
                   path: str, out: list) -> None:
    if plan.plan_type not in allowed_types:
        out.append(Violation(f"{path}.plan_type", type_constraint, plan.plan_type.value))
    _check_price(plan.cost_per_period, f"{path}.cost_per_period", COST_PER_PERIOD, out)
    if plan.period_length.value <= 0:
        out.append(Violation(f"{path}.period_length", PERIOD_LENGTH, plan.period_length.value))
    if plan.included_capacity is not None and plan.included_capacity.value < 0:
        out.append(Violation(f"{path}.included_capacity", HAS_CAPACITY,
                             plan.included_capacity.value))
    _check_price(plan.cost_over_limit, f"{path}.cost_over_limit", COST_OVER_LIMIT, out)
    if plan.plan_type is PlanType.PREPAID:
        if plan.included_capacity is None or plan.cost_over_limit is None:
            out.append(Violation(path, PREPAID_COMPLETE,
                                 (plan.included_capacity, plan.cost_over_limit)))
    if plan.month_length_days < 1:
        out.append(Violation(f"{path}.month_length_days", MONTH_LENGTH,
                             plan.month_length_days))
    seen = set()
    for i, rp in enumerate(plan.regional_prices):
        if rp.price < 0:
            out.append(Violation(f"{path}.regional_prices[{i}]", COST_PER_PERIOD, rp.price))
        for loc in rp.locations:
            if loc in seen:
                out.append(Violation(f"{path}.regional_prices[{i}]", REGIONAL_UNIQUE,
                                     str(loc)))
            seen.add(loc)


def _validate_plans(plans, allowed_types, type_constraint, path, out) -> None:
    if not plans:
        out.append(Violation(path, PLANS_NON_EMPTY, 0))
    for i, plan in enumerate(plans):
        _validate_plan(plan, allowed_types, type_constraint, f"{path}[{i}]", out)


def _validate_compute(offer: ComputeOffer, out: list) -> None:
    if offer.cores < 1:
        out.append(Violation("cores", CORE, offer.cores))
    if offer.clock_speed.value <= 0:
        out.append(Violation("clock_speed", CPU_CLOCK_SPEED, offer.clock_speed.value))
    if offer.memory.value <= 0:
        out.append(Violation("memory", HAS_MEMORY, offer.memory.value))
    if offer.local_storage is not None and offer.local_storage.value < 0:
        out.append(Violation("local_storage", NON_NEGATIVE, offer.local_storage.value))
    _validate_plans(offer.plans, _COMPUTE_PLAN_TYPES, PLAN_TYPE_COMPUTE, "plans", out)


def _validate_storage(offer: StorageOffer, out: list) -> None:
    if offer.size_min.value < 0:
        out.append(Violation("size_min", STORAGE_SIZE_MIN, offer.size_min.value))
    if offer.size_max.value <= 0:
        out.append(Violation("size_max", STORAGE_SIZE_MAX, offer.size_max.value))
    # Cross-field comparison is only meaningful when both bounds share a
    # unit; mixed-unit offers get compared after normalization.
    if offer.size_min.unit == offer.size_max.unit and \
            offer.size_min.value > offer.size_max.value:
        out.append(Violation("size_min", STORAGE_SIZE_ORDER,
                             (offer.size_min.value, offer.size_max.value)))
    if offer.attachable_to and offer.kind not in (StorageKind.NETWORK, StorageKind.BLOCK):
        out.append(Violation("attachable_to", ATTACHABLE_KIND, offer.kind.value))
    for i, pattern in enumerate(offer.attachable_to):
        try:
            re.compile(pattern)
        except re.error as exc:
            out.append(Violation(f"attachable_to[{i}]", ATTACHABLE_PATTERN,
                                 f"{pattern!r}: {exc}"))
    seen_verbs = set()
    for i, rule in enumerate(offer.request_pricing):
        path = f"request_pricing[{i}]"
        covered = set(RequestVerb) if RequestVerb.TRANSACTION in rule.verbs else set(rule.verbs)
        if covered & seen_verbs:
            out.append(Violation(path, VERB_UNIQUE,
                                 sorted(v.value for v in covered & seen_verbs)))
        seen_verbs |= covered
        if (rule.fee_status is FeeStatus.CHARGED) != (rule.cost_per_request is not None):
            out.append(Violation(path, CHARGED_HAS_COST, rule.fee_status.value))
        _check_price(rule.cost_per_request, f"{path}.cost_per_request",
                     COST_PER_REQUEST, out)
    _validate_plans(offer.plans, _STORAGE_PLAN_TYPES, PLAN_TYPE_STORAGE, "plans", out)


def _validate_network(offer: NetworkOffer, out: list) -> None:
    _check_price(offer.cost_data_transfer_in, "cost_data_transfer_in",
                 COST_DATA_TRANSFER_IN, out)
    _check_price(offer.cost_data_transfer_out, "cost_data_transfer_out",
                 COST_DATA_TRANSFER_OUT, out, allow_zero=False)
    if offer.bandwidth is not None and offer.bandwidth.value < 0:
        out.append(Violation("bandwidth", NON_NEGATIVE, offer.bandwidth.value))


def validate_offer(offer: Offer) -> list:
    """Check every range constraint and type invariant on an offer.

    Returns an empty list when the offer is well formed. Violations are
    data, not failures: the function never raises for bad values, it is
    side-effect free, and repeated calls return identical reports.
    """
    out: list = []
    if not OFFER_ID_RE.match(offer.id):
        out.append(Violation("id", OFFER_ID_RULE, offer.id))
    if isinstance(offer, ComputeOffer):
        _validate_compute(offer, out)
    elif isinstance(offer, StorageOffer):
        _validate_storage(offer, out)
    elif isinstance(offer, NetworkOffer):
        _validate_network(offer, out)
    else:
        raise TypeError(f"not an offer: {type(offer).__name__}")
    return out


def validate_scenario(scenario: UsageScenario) -> list:
    """Check a usage scenario's invariants (non-negative numbers, valid regex)."""
    out: list = []
    numeric = [
        ("compute_hours", scenario.compute_hours),
        ("instance_count", scenario.instance_count),
        ("min_cores", scenario.min_cores),
        ("min_memory_gb", scenario.min_memory_gb),
        ("storage_gb", scenario.storage_gb),
        ("storage_duration_days", scenario.storage_duration_days),
        ("transfer_in_gb", scenario.transfer_in_gb),
        ("transfer_out_gb", scenario.transfer_out_gb),
    ]
    if scenario.min_clock_ghz is not None:
        numeric.append(("min_clock_ghz", scenario.min_clock_ghz))
    for name, value in numeric:
        if value < 0:
            out.append(Violation(name, NON_NEGATIVE, value))
    for verb, count in scenario.request_counts.items():
        if count < 0:
            out.append(Violation(f"request_counts[{verb.value}]", NON_NEGATIVE, count))
    if scenario.name_regex is not None:
        try:
            re.compile(scenario.name_regex)
        except re.error as exc:
            out.append(Violation("name_regex", "valid regular expression",
                                 f"{scenario.name_regex!r}: {exc}"))
    return out


def validate_taxonomy(entries) -> list:
    """Check that QoS entries form a forest and link attributes to metrics only."""
    out: list = []
    by_name = {}
    for entry in entries:
        if entry.name in by_name:
            out.append(Violation(entry.name, "taxonomy names are unique", entry.name))
        by_name[entry.name] = entry
    for entry in entries:
        if entry.parent is not None and entry.parent not in by_name:
            out.append(Violation(entry.name, "parent resolves", entry.parent))
        if entry.linked_metric is not None:
            target = by_name.get(entry.linked_metric)
            if target is None:
                out.append(Violation(entry.name, "linked metric resolves",
                                     entry.linked_metric))
            elif entry.kind is QosKind.METRIC or target.kind is not QosKind.METRIC:
                out.append(Violation(
                    entry.name,
                    "hasMetric links a non-Metric entry to a Metric entry",
                    (entry.kind.value, target.kind.value),
                ))
    # Walk parent chains; a repeat visit inside one chain is a cycle.
    for entry in entries:
        seen = {entry.name}
        node = entry
        while node.parent is not None:
            if node.parent in seen:
                out.append(Violation(entry.name, "parent relation forms a forest",
                                     node.parent))
                break
            seen.add(node.parent)
            node = by_name.get(node.parent)
            if node is None:
                break
    return out
