"""Unit conversion and offer homogenization.

Providers publish sizes in MB/GB/TB, CPU ratings in GHz or ECUs, and
prices split per region. Everything entering the catalog runs through
``normalize_offer`` so the rest of the engine only ever sees canonical
units: GB for sizes, GHz for clock speed, hours for compute billing
periods, days for storage billing periods.

Sizes use the binary ladder (1 GB = 1024 MB, 1 TB = 1024 GB); the ladder
lives in ``SIZE_SCALE`` so a decimal profile could be added later.
"""

from __future__ import annotations

import dataclasses
import math
from dataclasses import dataclass
from typing import Iterable, List, Sequence, Tuple

from .errors import (
    DuplicateRegionError,
    IncompatibleUnitsError,
    InvalidRatingError,
    RejectedOfferError,
)
from .model import (
    REGIONAL_UNIQUE,
    ComputeOffer,
    FeeStatus,
    Location,
    NetworkOffer,
    Offer,
    PricePlan,
    Provider,
    Quantity,
    RegionalPrice,
    RequestCategory,
    RequestVerb,
    StorageOffer,
    Violation,
    validate_offer,
)

SIZE_SCALE = 1024.0

# One ECU is rated equivalent to a 1.0-1.2 GHz 2007-era core; matching
# always uses the conservative lower bound.
ECU_CLOCK_RANGE = (1.0, 1.2)

# Days per month used when converting the bare "month" unit; individual
# price plans may override month length for billing proration.
DEFAULT_MONTH_DAYS = 31.0


@dataclass(frozen=True)
class ConversionRule:
    """A directed multiplicative conversion between two units."""

    from_unit: str
    to_unit: str
    factor: float


CONVERSION_RULES = (
    ConversionRule("MB", "GB", 1.0 / SIZE_SCALE),
    ConversionRule("GB", "TB", 1.0 / SIZE_SCALE),
    # ECU converts at its interval's lower bound; use
    # ecu_to_clock_interval for the full range.
    ConversionRule("ECU", "GHz", ECU_CLOCK_RANGE[0]),
    ConversionRule("hour", "day", 1.0 / 24.0),
    ConversionRule("day", "month", 1.0 / DEFAULT_MONTH_DAYS),
)

DIMENSIONS = {
    "size": ("MB", "GB", "TB"),
    "frequency": ("GHz", "ECU"),
    "time": ("hour", "day", "month"),
    "count": ("count",),
}


def _build_factors() -> dict:
    adjacency: dict = {}
    for rule in CONVERSION_RULES:
        adjacency.setdefault(rule.from_unit, {})[rule.to_unit] = rule.factor
        adjacency.setdefault(rule.to_unit, {})[rule.from_unit] = 1.0 / rule.factor
    factors = {}
    for units in DIMENSIONS.values():
        for start in units:
            # BFS composes factors across the dimension's rule graph.
            frontier = {start: 1.0}
            seen = {start: 1.0}
            while frontier:
                nxt = {}
                for unit, factor in frontier.items():
                    for neighbor, edge in adjacency.get(unit, {}).items():
                        if neighbor not in seen:
                            seen[neighbor] = factor * edge
                            nxt[neighbor] = factor * edge
                frontier = nxt
            for end, factor in seen.items():
                factors[(start, end)] = factor
    return factors


_FACTORS = _build_factors()
_DIMENSION_OF = {unit: dim for dim, units in DIMENSIONS.items() for unit in units}


def convert_quantity(q: Quantity, target: str) -> Quantity:
    """Convert a quantity to another unit of the same dimension.

    Raises IncompatibleUnitsError when the units do not share a
    dimension (price units only convert to themselves).
    """
    if q.unit == target:
        return q
    factor = _FACTORS.get((q.unit, target))
    if factor is None:
        raise IncompatibleUnitsError(
            f"cannot convert {q.unit} to {target}: "
            f"{_DIMENSION_OF.get(q.unit, 'price')} vs {_DIMENSION_OF.get(target, 'price')}"
        )
    return Quantity(q.value * factor, target)


@dataclass(frozen=True)
class ClockInterval:
    """The GHz range equivalent to an ECU rating."""

    low: Quantity
    high: Quantity


def ecu_to_clock_interval(ecus: float) -> ClockInterval:
    """Map an ECU rating to its equivalent clock-speed interval in GHz."""
    if not math.isfinite(ecus) or ecus <= 0:
        raise InvalidRatingError(f"ECU rating must be > 0, got {ecus!r}")
    return ClockInterval(
        low=Quantity(ECU_CLOCK_RANGE[0] * ecus, "GHz"),
        high=Quantity(ECU_CLOCK_RANGE[1] * ecus, "GHz"),
    )


def round_display(value: float) -> float:
    """Round for display to 3 fractional digits; internals keep full precision."""
    return round(value, 3)


# Canonical request category per verb, used when a flat transaction rule
# covers a concrete verb and so carries no verb-specific category.
CANONICAL_CATEGORY = {
    RequestVerb.PUT: RequestCategory.UPLOAD,
    RequestVerb.COPY: RequestCategory.UPLOAD,
    RequestVerb.POST: RequestCategory.UPLOAD,
    RequestVerb.LIST: RequestCategory.UPLOAD,
    RequestVerb.GET: RequestCategory.DOWNLOAD,
    RequestVerb.HEAD: RequestCategory.DOWNLOAD,
    RequestVerb.DELETE: RequestCategory.OTHER,
    RequestVerb.SEARCH: RequestCategory.OTHER,
    RequestVerb.TRANSACTION: RequestCategory.OTHER,
}


def lookup_request_rule(offer: StorageOffer, verb: RequestVerb):
    """Find the fee rule covering a verb, or None when nothing covers it."""
    for rule in offer.request_pricing:
        if verb in rule.verbs:
            return rule
    for rule in offer.request_pricing:
        if RequestVerb.TRANSACTION in rule.verbs:
            return rule
    return None


def categorize_request(
    provider: Provider, offer: StorageOffer, verb: RequestVerb
) -> Tuple[RequestCategory, FeeStatus, float]:
    """Resolve a verb against an offer's request fee rules.

    Returns (category, fee status, effective cost per request). Free and
    Unspecified rules cost nothing; a verb no rule covers is treated as
    Unspecified ("not specified, usually free").
    """
    if offer.provider != provider.name:
        raise ValueError(f"offer {offer.id} does not belong to provider {provider.name}")
    rule = lookup_request_rule(offer, verb)
    if rule is None:
        return (RequestCategory.OTHER, FeeStatus.UNSPECIFIED, 0.0)
    if verb in rule.verbs:
        category = rule.category
    else:
        category = CANONICAL_CATEGORY[verb]
    cost = 0.0
    if rule.fee_status is FeeStatus.CHARGED and rule.cost_per_request is not None:
        cost = rule.cost_per_request.value
    return (category, rule.fee_status, cost)


def merge_regional_prices(
    entries: Sequence[Tuple[Location, float]]
) -> List[RegionalPrice]:
    """Group locations that share a price into single entries.

    Group order follows each price's first appearance; membership is
    preserved exactly (flattening the output reproduces the input set).
    """
    seen = set()
    order: list = []
    groups: dict = {}
    for location, price in entries:
        if location in seen:
            raise DuplicateRegionError(f"duplicate region in price list: {location}")
        seen.add(location)
        if price not in groups:
            groups[price] = []
            order.append(price)
        groups[price].append(location)
    return [RegionalPrice(frozenset(groups[p]), p) for p in order]


def _flatten_regional(plan: PricePlan) -> Iterable[Tuple[Location, float]]:
    for rp in plan.regional_prices:
        for location in sorted(rp.locations, key=str):
            yield (location, rp.price)


def _normalize_plan(plan: PricePlan, period_unit: str) -> PricePlan:
    period = convert_quantity(plan.period_length, period_unit)
    included = plan.included_capacity
    if included is not None and included.unit in ("MB", "TB"):
        included = convert_quantity(included, "GB")
    merged = tuple(merge_regional_prices(list(_flatten_regional(plan))))
    return dataclasses.replace(
        plan,
        period_length=period,
        included_capacity=included,
        regional_prices=merged,
    )


def _canonical_clock(clock: Quantity) -> Quantity:
    if clock.unit == "ECU":
        if clock.value <= 0:
            # Invalid rating; carry the value through so validation can
            # report the CPUClockSpeed violation with what was observed.
            return Quantity(clock.value, "GHz")
        return ecu_to_clock_interval(clock.value).low
    return convert_quantity(clock, "GHz")


def normalize_offer(offer: Offer) -> Offer:
    """Convert an offer's quantities to canonical units and validate it.

    Idempotent: a canonical offer normalizes to an equal value. Raises
    RejectedOfferError (carrying the violation report) when the
    homogenized offer still breaks a range constraint.
    """
    try:
        if isinstance(offer, ComputeOffer):
            normalized = dataclasses.replace(
                offer,
                clock_speed=_canonical_clock(offer.clock_speed),
                memory=convert_quantity(offer.memory, "GB"),
                local_storage=(
                    convert_quantity(offer.local_storage, "GB")
                    if offer.local_storage is not None else None
                ),
                plans=tuple(_normalize_plan(p, "hour") for p in offer.plans),
            )
        elif isinstance(offer, StorageOffer):
            normalized = dataclasses.replace(
                offer,
                size_min=convert_quantity(offer.size_min, "GB"),
                size_max=convert_quantity(offer.size_max, "GB"),
                plans=tuple(_normalize_plan(p, "day") for p in offer.plans),
            )
        elif isinstance(offer, NetworkOffer):
            normalized = offer
        else:
            raise TypeError(f"not an offer: {type(offer).__name__}")
    except DuplicateRegionError as exc:
        raise RejectedOfferError(
            [(offer.id, [Violation("plans", REGIONAL_UNIQUE, str(exc))])]
        ) from exc
    report = validate_offer(normalized)
    if report:
        raise RejectedOfferError([(offer.id, report)])
    return normalized
