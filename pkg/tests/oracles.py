"""Brute-force reference implementations used as test oracles.

These re-derive expected results with plain linear scans and exhaustive
enumeration, independently of the library's matching and recommending
code paths (costing is shared deliberately: the oracle checks selection
and ranking, while costing has its own hand-computed tests).
"""

import itertools
import re

from cloudpick import BillingUnit, bundle_cost
from cloudpick.costing import Bundle


def _loc_ok(constraint, offer_locations):
    if constraint is None:
        return True
    for loc in offer_locations:
        if loc.continent is constraint.continent and (
            constraint.region_name is None
            or constraint.region_name == loc.region_name
        ):
            return True
    return False


def _name_ok(pattern, name):
    return pattern is None or re.fullmatch(pattern, name) is not None


def _sortable(offer, key):
    value = getattr(offer, key) if key else None
    if value is None:
        return (0, 0.0, "")
    if hasattr(value, "unit"):
        value = value.value
    if hasattr(value, "value") and not isinstance(value, (int, float, str)):
        value = value.value
    if isinstance(value, (bool, int, float)):
        return (1, float(value), "")
    return (2, 0.0, str(value))


def brute_match(catalog, query):
    """Linear-scan filter plus an explicit two-key sort."""
    if query.kind == "compute":
        rows = [
            o for o in catalog.compute
            if o.cores >= query.min_cores
            and o.memory.value >= query.min_memory_gb
            and (query.min_clock_ghz is None
                 or o.clock_speed.value >= query.min_clock_ghz)
            and _loc_ok(query.location, o.locations)
            and _name_ok(query.name_regex, o.name)
        ]
    elif query.kind == "storage":
        rows = [
            o for o in catalog.storage
            if (query.size_gb is None
                or o.size_min.value <= query.size_gb <= o.size_max.value)
            and _loc_ok(query.location, o.locations)
            and _name_ok(query.name_regex, o.name)
        ]
    else:
        rows = [
            o for o in catalog.network
            if _loc_ok(query.location, o.locations)
            and _name_ok(query.name_regex, o.name)
        ]
    rows.sort(key=lambda o: (o.provider, o.id))
    if query.sort_key is not None:
        rows.sort(key=lambda o: _sortable(o, query.sort_key),
                  reverse=query.sort_order == "desc")
    return rows


def brute_attachable_pairs(catalog, compute_query, storage_gb):
    pairs = []
    for compute in brute_match(catalog, compute_query):
        for storage in sorted(catalog.storage, key=lambda o: (o.provider, o.id)):
            if storage.provider != compute.provider:
                continue
            if not (storage.size_min.value <= storage_gb <= storage.size_max.value):
                continue
            if any(re.fullmatch(p, compute.id) for p in storage.attachable_to):
                pairs.append((compute, storage))
    return pairs


def _priceable_compute(offer):
    return any(p.billing_unit in (BillingUnit.PER_HOUR, BillingUnit.PER_RAM_HOUR)
               for p in offer.plans)


def _priceable_storage(offer):
    return any(p.billing_unit is BillingUnit.PER_GB_MONTH for p in offer.plans)


def brute_recommend(catalog, scenario):
    """Exhaustive bundle enumeration sorted by (total, provider, ids)."""
    need_storage = scenario.storage_gb > 0 or any(
        c > 0 for c in scenario.request_counts.values())
    need_network = scenario.transfer_in_gb > 0 or scenario.transfer_out_gb > 0

    computes = [
        o for o in catalog.compute
        if o.cores >= scenario.min_cores
        and o.memory.value >= scenario.min_memory_gb
        and (scenario.min_clock_ghz is None
             or o.clock_speed.value >= scenario.min_clock_ghz)
        and _loc_ok(scenario.location, o.locations)
        and _name_ok(scenario.name_regex, o.name)
        and _priceable_compute(o)
    ]
    entries = []
    for compute in computes:
        if need_storage:
            storages = [
                s for s in catalog.storage
                if s.provider == compute.provider
                and _priceable_storage(s)
                and _loc_ok(scenario.location, s.locations)
                and (scenario.storage_gb == 0
                     or s.size_min.value <= scenario.storage_gb <= s.size_max.value)
                and (not scenario.persistent_storage_required
                     or any(re.fullmatch(p, compute.id) for p in s.attachable_to))
            ]
        else:
            storages = [None]
        if need_network:
            networks = [
                n for n in catalog.network
                if n.provider == compute.provider
                and _loc_ok(scenario.location, n.locations)
            ]
        else:
            networks = [None]
        for storage, network in itertools.product(storages, networks):
            bundle = Bundle(compute, storage, network)
            breakdown = bundle_cost(bundle, scenario)
            entries.append((breakdown.total, bundle.provider, bundle.ids(), bundle))
    entries.sort(key=lambda e: e[:3])
    return entries
