"""Export catalog contents as ontology individuals in Turtle.

Every offer becomes one typed individual (``cocoon:Compute``,
``cocoon:Storage`` or ``cocoon:Network``) under the ``svc:`` instance
namespace, with its configuration attached through the vocabulary's
object and data properties. Quantities are emitted as value nodes
carrying ``cocoon:hasValue`` and ``cocoon:hasUnitOfMeasurement`` so the
unit survives the export.

Attachability is expanded: a storage individual gets one
``cocoon:isAttachable`` link per same-provider compute offer whose id
matches one of its patterns, mirroring how pairing works at query time.
"""

from __future__ import annotations

import re
from typing import List

from .model import ComputeOffer, NetworkOffer, Quantity, StorageOffer
from .repository import Catalog

__all__ = ["export_ontology", "COCOON_NAMESPACE", "INSTANCE_NAMESPACE"]

COCOON_NAMESPACE = "http://w3c.org.au/cocoon.owl#"
INSTANCE_NAMESPACE = "urn:cloud-catalog:"

_PREFIXES = (
    f"@prefix cocoon: <{COCOON_NAMESPACE}> .\n"
    f"@prefix svc: <{INSTANCE_NAMESPACE}> .\n"
    "@prefix rdfs: <http://www.w3.org/2000/01/rdf-schema#> .\n"
    "@prefix xsd: <http://www.w3.org/2001/XMLSchema#> .\n"
)

_LOCAL_NAME_OK = re.compile(r"^[A-Za-z0-9-]+$")


def _decimal(value: float) -> str:
    # xsd:decimal forbids exponent notation, so format plainly.
    text = f"{value:.12f}".rstrip("0").rstrip(".")
    if "." not in text:
        text += ".0"
    return f'"{text}"^^xsd:decimal'


def _string(value: str) -> str:
    escaped = value.replace("\\", "\\\\").replace('"', '\\"')
    return f'"{escaped}"'


def _subject(offer_id: str) -> str:
    if not _LOCAL_NAME_OK.match(offer_id):
        raise ValueError(f"offer id {offer_id!r} is not a valid local name")
    return f"svc:{offer_id}"


def _provider_subject(name: str) -> str:
    slug = re.sub(r"[^a-z0-9-]", "-", name.lower())
    return f"svc:provider-{slug}"


def _quantity_node(q: Quantity) -> str:
    return (f"[ cocoon:hasValue {_decimal(q.value)} ; "
            f"cocoon:hasUnitOfMeasurement {_string(q.unit)} ]")


def _locations_property(locations, lines: List[str]) -> None:
    if locations:
        values = ", ".join(_string(str(l)) for l in sorted(locations, key=str))
        lines.append(f"    cocoon:hasLocation {values}")


def _plan_node(plan) -> str:
    parts = [
        "a cocoon:PricePlan",
        f"cocoon:hasPlanType {_string(plan.plan_type.value)}",
        f"cocoon:hasBillingUnit {_string(plan.billing_unit.value)}",
        f"cocoon:CostPerPeriod {_quantity_node(plan.cost_per_period)}",
        f"cocoon:PeriodLength {_quantity_node(plan.period_length)}",
    ]
    if plan.included_capacity is not None:
        parts.append(f"cocoon:hasCapacity {_quantity_node(plan.included_capacity)}")
    if plan.cost_over_limit is not None:
        parts.append(f"cocoon:CostOverLimit {_quantity_node(plan.cost_over_limit)}")
    return "[ " + " ; ".join(parts) + " ]"


def _emit_statement(subject: str, lines: List[str]) -> str:
    return subject + " " + " ;\n".join([lines[0]] + [l for l in lines[1:]]) + " .\n"


def _compute_block(offer: ComputeOffer) -> str:
    lines = [
        "a cocoon:Compute",
        f"    rdfs:label {_string(offer.name)}",
        f"    cocoon:hasProvider {_provider_subject(offer.provider)}",
        f"    cocoon:hasCPU [ a cocoon:{'ClusteredCPU' if offer.clustered else 'CPU'} ; "
        f"cocoon:Core {offer.cores} ; "
        f"cocoon:CPUClockSpeed {_quantity_node(offer.clock_speed)} ]",
        f"    cocoon:hasMemory {_quantity_node(offer.memory)}",
    ]
    if offer.memory_address_size is not None:
        lines.append(f"    cocoon:hasMemoryAddressSize "
                     f"{_string(offer.memory_address_size.value)}")
    if offer.local_storage is not None:
        lines.append(f"    cocoon:hasLocalStorage {_quantity_node(offer.local_storage)}")
    if offer.virtualization is not None:
        lines.append(f"    cocoon:hasVirtualization {_string(offer.virtualization)}")
    for network_id in sorted(offer.supported_networks):
        lines.append(f"    cocoon:hasSupportedNetwork {_subject(network_id)}")
    _locations_property(offer.locations, lines)
    for plan in offer.plans:
        lines.append(f"    cocoon:hasPricePlan {_plan_node(plan)}")
    return _emit_statement(_subject(offer.id), lines)


def _attachable_targets(offer: StorageOffer, catalog: Catalog) -> List[str]:
    targets = []
    for compute in catalog.compute:
        if compute.provider != offer.provider:
            continue
        if any(re.fullmatch(p, compute.id) for p in offer.attachable_to):
            targets.append(compute.id)
    return targets


def _storage_block(offer: StorageOffer, catalog: Catalog) -> str:
    lines = [
        f"a cocoon:Storage, cocoon:{offer.kind.value}",
        f"    rdfs:label {_string(offer.name)}",
        f"    cocoon:hasProvider {_provider_subject(offer.provider)}",
        f"    cocoon:StorageSizeMin {_quantity_node(offer.size_min)}",
        f"    cocoon:StorageSizeMax {_quantity_node(offer.size_max)}",
    ]
    for target in _attachable_targets(offer, catalog):
        lines.append(f"    cocoon:isAttachable {_subject(target)}")
    for rule in offer.request_pricing:
        parts = [
            "cocoon:RequestType " + ", ".join(
                _string(v.value) for v in sorted(rule.verbs, key=lambda v: v.value)),
            f"cocoon:hasCategory {_string(rule.category.value)}",
            f"cocoon:hasFeeStatus {_string(rule.fee_status.value)}",
        ]
        if rule.cost_per_request is not None:
            parts.append(f"cocoon:CostPerRequest {_quantity_node(rule.cost_per_request)}")
        lines.append("    cocoon:hasRequestFee [ " + " ; ".join(parts) + " ]")
    _locations_property(offer.locations, lines)
    for plan in offer.plans:
        lines.append(f"    cocoon:hasPricePlan {_plan_node(plan)}")
    return _emit_statement(_subject(offer.id), lines)


def _network_block(offer: NetworkOffer) -> str:
    lines = [
        "a cocoon:Network",
        f"    rdfs:label {_string(offer.name)}",
        f"    cocoon:hasProvider {_provider_subject(offer.provider)}",
        f"    cocoon:CostDataTransferIn {_quantity_node(offer.cost_data_transfer_in)}",
        f"    cocoon:CostDataTransferOut {_quantity_node(offer.cost_data_transfer_out)}",
    ]
    if offer.bandwidth is not None:
        lines.append(f"    cocoon:hasBandwidth {_quantity_node(offer.bandwidth)}")
    for protocol in sorted(offer.protocols):
        lines.append(f"    cocoon:hasProtocol {_string(protocol)}")
    _locations_property(offer.locations, lines)
    return _emit_statement(_subject(offer.id), lines)


def export_ontology(catalog: Catalog) -> str:
    """Serialize a catalog as Turtle; one typed individual per offer."""
    blocks = [_PREFIXES]
    for provider in catalog.providers:
        lines = [
            "a cocoon:Provider",
            f"    rdfs:label {_string(provider.name)}",
            f"    cocoon:hasCurrency {_string(provider.currency)}",
        ]
        blocks.append(_emit_statement(_provider_subject(provider.name), lines))
    for offer in catalog.compute:
        blocks.append(_compute_block(offer))
    for offer in catalog.storage:
        blocks.append(_storage_block(offer, catalog))
    for offer in catalog.network:
        blocks.append(_network_block(offer))
    return "\n".join(blocks)
