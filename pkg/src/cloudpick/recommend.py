"""Ranked bundle recommendations against a catalog snapshot.

A bundle is same-provider end to end: a compute offer, plus a storage
offer when the scenario stores data or issues requests, plus a network
offer when it transfers data. Each member is priced with its cheapest
eligible plan and bundles are ranked by total cost with a deterministic
(provider, member ids) tie-break.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import List, Optional

from .costing import (
    COMPUTE_BILLING_UNITS,
    STORAGE_BILLING_UNITS,
    Bundle,
    CostBreakdown,
    bundle_cost,
)
from .errors import CurrencyError, QueryError
from .matching import MatchQuery, match_compute
from .model import (
    ComputeOffer,
    NetworkOffer,
    StorageOffer,
    UsageScenario,
    location_matches,
    validate_scenario,
)
from .repository import Catalog

__all__ = ["Recommendation", "recommend", "scenario_compute_query"]

DEFAULT_TOP_K = 10


@dataclass(frozen=True)
class Recommendation:
    """One ranked bundle with its itemized cost and catalog provenance."""

    rank: int
    bundle: Bundle
    breakdown: CostBreakdown
    catalog_version: int


def scenario_compute_query(scenario: UsageScenario) -> MatchQuery:
    return MatchQuery(
        kind="compute",
        min_cores=scenario.min_cores,
        min_memory_gb=scenario.min_memory_gb,
        min_clock_ghz=scenario.min_clock_ghz,
        location=scenario.location,
        name_regex=scenario.name_regex,
    )


def _needs_storage(scenario: UsageScenario) -> bool:
    return scenario.storage_gb > 0 or any(
        count > 0 for count in scenario.request_counts.values()
    )


def _needs_network(scenario: UsageScenario) -> bool:
    return scenario.transfer_in_gb > 0 or scenario.transfer_out_gb > 0


def _has_compute_plan(offer: ComputeOffer) -> bool:
    return any(p.billing_unit in COMPUTE_BILLING_UNITS for p in offer.plans)


def _has_storage_plan(offer: StorageOffer) -> bool:
    return any(p.billing_unit in STORAGE_BILLING_UNITS for p in offer.plans)


def _location_ok(scenario: UsageScenario, offer) -> bool:
    if scenario.location is None:
        return True
    return any(location_matches(scenario.location, loc) for loc in offer.locations)


def _storage_candidates(
    view: Catalog, scenario: UsageScenario, compute: ComputeOffer
) -> List[StorageOffer]:
    out = []
    for offer in sorted(view.storage, key=lambda o: o.id):
        if offer.provider != compute.provider:
            continue
        if not _has_storage_plan(offer):
            continue
        if not _location_ok(scenario, offer):
            continue
        if scenario.storage_gb > 0 and not (
            offer.size_min.value <= scenario.storage_gb <= offer.size_max.value
        ):
            continue
        if scenario.persistent_storage_required and not any(
            re.fullmatch(p, compute.id) for p in offer.attachable_to
        ):
            continue
        out.append(offer)
    return out


def _network_candidates(
    view: Catalog, scenario: UsageScenario, compute: ComputeOffer
) -> List[NetworkOffer]:
    return [
        offer
        for offer in sorted(view.network, key=lambda o: o.id)
        if offer.provider == compute.provider and _location_ok(scenario, offer)
    ]


def recommend(
    view: Catalog,
    scenario: UsageScenario,
    top_k: Optional[int] = DEFAULT_TOP_K,
    month_length_days: Optional[int] = None,
) -> List[Recommendation]:
    """Enumerate feasible bundles, price them, and return the cheapest.

    ``top_k=None`` returns every feasible bundle. The empty list means
    nothing in the catalog satisfies the scenario. Mixing currencies
    within one ranking is refused.
    """
    report = validate_scenario(scenario)
    if report:
        raise QueryError("; ".join(str(v) for v in report))
    if top_k is not None and top_k < 1:
        raise QueryError(f"top_k must be >= 1, got {top_k}")

    need_storage = _needs_storage(scenario)
    need_network = _needs_network(scenario)
    priced = []
    for compute in match_compute(view, scenario_compute_query(scenario)):
        if not _has_compute_plan(compute):
            continue
        storages = _storage_candidates(view, scenario, compute) if need_storage else [None]
        networks = _network_candidates(view, scenario, compute) if need_network else [None]
        if not storages or not networks:
            continue
        for storage in storages:
            for network in networks:
                bundle = Bundle(compute, storage, network)
                breakdown = bundle_cost(bundle, scenario, month_length_days)
                priced.append((breakdown.total, bundle.provider, bundle.ids(),
                               bundle, breakdown))
    currencies = {entry[4].currency for entry in priced}
    if len(currencies) > 1:
        raise CurrencyError(
            f"feasible bundles span currencies {sorted(currencies)}; "
            "constrain the scenario to one billing currency"
        )
    priced.sort(key=lambda entry: entry[:3])
    if top_k is not None:
        priced = priced[:top_k]
    return [
        Recommendation(rank=i + 1, bundle=bundle, breakdown=breakdown,
                       catalog_version=view.version)
        for i, (_, _, _, bundle, breakdown) in enumerate(priced)
    ]
