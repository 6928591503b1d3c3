"""Itemized cost computation for offers, plans, and bundles.

Billing formulas:

- per-hour:       instances x billed_hours x rate
- per-RAM-hour:   instances x memory_gb x billed_hours x rate
                  (a 2 GB machine running 1 hour consumes 2 RAM-hours)
- per-GB-month:   gb x (days / month_length_days) x rate
                  (2 GB for half a month costs the same as 1 GB for a month)
- requests:       sum over verbs of count x effective per-request cost
- transfer:       in_gb x in_rate + out_gb x out_rate
- prepaid plans:  periods = ceil(elapsed / period_length)
                  total = periods x period_fee
                          + max(0, usage - included_capacity x periods) x overage_rate

Started hours bill as whole hours unless the plan opts into exact
billing. ``included_capacity`` is measured in the same usage units the
billing unit defines (instance hours, RAM-hours, GB-months, requests).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import List, Mapping, Optional, Sequence, Tuple, Union

from .errors import (
    CapacityError,
    CostingError,
    CurrencyError,
    PlanMismatchError,
    QueryError,
)
from .model import (
    BillingUnit,
    ComputeOffer,
    Location,
    NetworkOffer,
    PlanType,
    PricePlan,
    RequestVerb,
    StorageOffer,
    UsageScenario,
    location_matches,
)
from .normalize import convert_quantity, lookup_request_rule
from .model import FeeStatus

__all__ = [
    "LineItem",
    "CostBreakdown",
    "Bundle",
    "compute_cost",
    "storage_cost",
    "request_cost",
    "transfer_cost",
    "bundle_cost",
    "savings",
    "SavingsEntry",
    "COMPUTE_BILLING_UNITS",
    "STORAGE_BILLING_UNITS",
]

COMPUTE_BILLING_UNITS = (BillingUnit.PER_HOUR, BillingUnit.PER_RAM_HOUR)
STORAGE_BILLING_UNITS = (BillingUnit.PER_GB_MONTH,)


@dataclass(frozen=True)
class LineItem:
    label: str
    quantity: float
    unit_rate: float
    amount: float


@dataclass(frozen=True)
class CostBreakdown:
    """An itemized cost: total always equals the sum of the line items."""

    currency: str
    line_items: Tuple[LineItem, ...]
    total: float
    label: str = ""


def _breakdown(currency: str, items: Sequence[LineItem], label: str = "") -> CostBreakdown:
    return CostBreakdown(currency, tuple(items), sum(i.amount for i in items), label)


def _ceil_units(x: float) -> int:
    # Unit composition can leave 1e-12 scale float noise; do not let it
    # start a whole extra billing period.
    return int(math.ceil(round(x, 9)))


def _effective_rate(plan: PricePlan, location: Optional[Location]) -> float:
    if location is not None:
        for rp in plan.regional_prices:
            if any(location_matches(location, member) for member in rp.locations):
                return rp.price
    return plan.cost_per_period.value


def _billed_hours(plan: PricePlan, hours: float) -> float:
    if plan.hour_rounding == "ceil":
        return float(_ceil_units(hours))
    return hours


def _prepaid_items(plan: PricePlan, elapsed: float, period_in_elapsed_units: float,
                   usage: float, usage_label: str, rate: float) -> List[LineItem]:
    periods = _ceil_units(elapsed / period_in_elapsed_units) if elapsed > 0 else 0
    items = [LineItem("prepaid periods", float(periods), rate, periods * rate)]
    included = plan.included_capacity.value * periods
    overage = max(0.0, usage - included)
    over_rate = plan.cost_over_limit.value
    items.append(LineItem(f"overage {usage_label}", overage, over_rate,
                          overage * over_rate))
    return items


def compute_cost(
    offer: ComputeOffer,
    plan: PricePlan,
    hours: float,
    instance_count: int,
    location: Optional[Location] = None,
) -> CostBreakdown:
    """Price running ``instance_count`` copies of a compute offer for ``hours``."""
    if plan not in offer.plans:
        raise PlanMismatchError(f"plan does not belong to offer {offer.id}")
    if hours < 0 or instance_count < 0:
        raise CostingError("hours and instance count must be >= 0")
    if plan.billing_unit not in COMPUTE_BILLING_UNITS:
        raise CostingError(
            f"billing unit {plan.billing_unit.value} not applicable to compute"
        )
    billed = _billed_hours(plan, hours)
    if plan.billing_unit is BillingUnit.PER_HOUR:
        usage = instance_count * billed
        usage_label = "instance-hours"
    else:
        usage = instance_count * offer.memory.value * billed
        usage_label = "RAM-hours"
    rate = _effective_rate(plan, location)
    currency = plan.cost_per_period.currency
    if plan.plan_type is PlanType.PREPAID:
        period_hours = convert_quantity(plan.period_length, "hour").value
        elapsed = hours if instance_count > 0 else 0.0
        items = _prepaid_items(plan, elapsed, period_hours, usage, usage_label, rate)
    else:
        items = [LineItem(usage_label, usage, rate, usage * rate)]
    return _breakdown(currency, items, label=offer.id)


def storage_cost(
    offer: StorageOffer,
    plan: PricePlan,
    gb: float,
    days: float,
    location: Optional[Location] = None,
    month_length_days: Optional[int] = None,
) -> CostBreakdown:
    """Price holding ``gb`` on a storage offer for ``days``, prorated by month."""
    if plan not in offer.plans:
        raise PlanMismatchError(f"plan does not belong to offer {offer.id}")
    if gb < 0 or days < 0:
        raise CostingError("gb and days must be >= 0")
    if plan.billing_unit not in STORAGE_BILLING_UNITS:
        raise CostingError(
            f"billing unit {plan.billing_unit.value} not applicable to storage"
        )
    if gb != 0 and not (offer.size_min.value <= gb <= offer.size_max.value):
        raise CapacityError(
            f"{gb} GB outside [{offer.size_min.value}, {offer.size_max.value}] "
            f"for offer {offer.id}"
        )
    month_days = month_length_days if month_length_days is not None else plan.month_length_days
    usage = gb * days / month_days
    rate = _effective_rate(plan, location)
    currency = plan.cost_per_period.currency
    if plan.plan_type is PlanType.PREPAID:
        period_days = convert_quantity(plan.period_length, "day").value
        elapsed = days if gb > 0 else 0.0
        items = _prepaid_items(plan, elapsed, period_days, usage, "GB-months", rate)
    else:
        items = [LineItem("GB-months", usage, rate, usage * rate)]
    return _breakdown(currency, items, label=offer.id)


def _coerce_verb(verb: Union[RequestVerb, str]) -> RequestVerb:
    if isinstance(verb, RequestVerb):
        return verb
    try:
        return RequestVerb(str(verb).upper())
    except ValueError:
        raise QueryError(f"unknown request verb {verb!r}") from None


def request_cost(
    offer: StorageOffer, counts: Mapping[Union[RequestVerb, str], float]
) -> CostBreakdown:
    """Price a batch of storage API requests against an offer's fee rules."""
    if not offer.plans:
        raise CostingError(f"offer {offer.id} has no plans to take a currency from")
    currency = offer.plans[0].cost_per_period.currency
    items: List[LineItem] = []
    for raw_verb, count in counts.items():
        verb = _coerce_verb(raw_verb)
        if count < 0:
            raise CostingError(f"request count for {verb.value} must be >= 0")
        if count == 0:
            continue
        rule = lookup_request_rule(offer, verb)
        rate = 0.0
        if rule is not None and rule.fee_status is FeeStatus.CHARGED:
            rate = rule.cost_per_request.value
            if rule.cost_per_request.currency != currency:
                raise CurrencyError(
                    f"request fee currency {rule.cost_per_request.currency} "
                    f"differs from plan currency {currency}"
                )
        items.append(LineItem(f"{verb.value} requests", float(count), rate,
                              count * rate))
    return _breakdown(currency, items, label=offer.id)


def transfer_cost(
    network: NetworkOffer, in_gb: float, out_gb: float
) -> CostBreakdown:
    """Price moving data in and out over a network offer."""
    if in_gb < 0 or out_gb < 0:
        raise CostingError("transfer volumes must be >= 0")
    in_rate = network.cost_data_transfer_in.value
    out_rate = network.cost_data_transfer_out.value
    currency = network.cost_data_transfer_out.currency
    if network.cost_data_transfer_in.currency != currency:
        raise CurrencyError("transfer rates quote different currencies")
    items = [
        LineItem("GB transferred in", in_gb, in_rate, in_gb * in_rate),
        LineItem("GB transferred out", out_gb, out_rate, out_gb * out_rate),
    ]
    return _breakdown(currency, items, label=network.id)


@dataclass(frozen=True)
class Bundle:
    """A same-provider selection of compute plus optional storage/network."""

    compute: ComputeOffer
    storage: Optional[StorageOffer] = None
    network: Optional[NetworkOffer] = None

    @property
    def provider(self) -> str:
        return self.compute.provider

    def ids(self) -> Tuple[str, str, str]:
        return (
            self.compute.id,
            self.storage.id if self.storage else "",
            self.network.id if self.network else "",
        )


def _cheapest(costs: Sequence[CostBreakdown]) -> CostBreakdown:
    best = costs[0]
    for c in costs[1:]:
        if c.total < best.total:
            best = c
    return best


def cheapest_compute_cost(
    offer: ComputeOffer, scenario: UsageScenario, location: Optional[Location]
) -> CostBreakdown:
    """Cost of the plan that minimizes this offer's price for the scenario."""
    candidates = [
        compute_cost(offer, p, scenario.compute_hours, scenario.instance_count, location)
        for p in offer.plans if p.billing_unit in COMPUTE_BILLING_UNITS
    ]
    if not candidates:
        raise CostingError(f"offer {offer.id} has no compute-billable plan")
    return _cheapest(candidates)


def cheapest_storage_cost(
    offer: StorageOffer,
    scenario: UsageScenario,
    location: Optional[Location],
    month_length_days: Optional[int] = None,
) -> CostBreakdown:
    """Capacity cost under the best plan, plus the scenario's request fees."""
    candidates = [
        storage_cost(offer, p, scenario.storage_gb, scenario.storage_duration_days,
                     location, month_length_days)
        for p in offer.plans if p.billing_unit in STORAGE_BILLING_UNITS
    ]
    if not candidates:
        raise CostingError(f"offer {offer.id} has no storage-billable plan")
    best = _cheapest(candidates)
    requests = request_cost(offer, scenario.request_counts)
    if requests.currency != best.currency:
        raise CurrencyError("request fees and storage plan quote different currencies")
    return _breakdown(best.currency, best.line_items + requests.line_items,
                      label=offer.id)


def bundle_cost(
    bundle: Bundle,
    scenario: UsageScenario,
    month_length_days: Optional[int] = None,
) -> CostBreakdown:
    """Total cost of a bundle, choosing the cheapest eligible plan per member."""
    location = scenario.location
    parts: List[CostBreakdown] = [
        cheapest_compute_cost(bundle.compute, scenario, location)
    ]
    if bundle.storage is not None:
        parts.append(cheapest_storage_cost(bundle.storage, scenario, location,
                                           month_length_days))
    if bundle.network is not None:
        parts.append(transfer_cost(bundle.network, scenario.transfer_in_gb,
                                   scenario.transfer_out_gb))
    currency = parts[0].currency
    items: List[LineItem] = []
    for part in parts:
        if part.currency != currency:
            raise CurrencyError(
                f"bundle mixes currencies: {part.currency} vs {currency}"
            )
        for item in part.line_items:
            items.append(LineItem(f"{part.label}: {item.label}", item.quantity,
                                  item.unit_rate, item.amount))
    return _breakdown(currency, items, label=bundle.provider)


@dataclass(frozen=True)
class SavingsEntry:
    option: str
    total: float
    delta: float


def savings(breakdowns: Sequence[CostBreakdown]) -> List[SavingsEntry]:
    """Rank breakdowns by total cost and report each one's delta vs the cheapest.

    All breakdowns must share a currency; ties order by option label.
    """
    if not breakdowns:
        raise CostingError("savings requires at least one breakdown")
    currencies = {b.currency for b in breakdowns}
    if len(currencies) > 1:
        raise CurrencyError(f"cannot rank across currencies: {sorted(currencies)}")
    ranked = sorted(breakdowns, key=lambda b: (b.total, b.label))
    cheapest = ranked[0].total
    return [SavingsEntry(b.label, b.total, b.total - cheapest) for b in ranked]
