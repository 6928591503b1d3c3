"""Multi-cloud IaaS catalog, matching, and cost recommendation engine."""

from .errors import (
    CapacityError,
    CloudpickError,
    CostingError,
    CurrencyError,
    DuplicateRegionError,
    IncompatibleUnitsError,
    IntegrityError,
    InvalidRatingError,
    ParseError,
    PlanMismatchError,
    QueryError,
    RejectedOfferError,
)
from .model import (
    BillingUnit,
    ComputeOffer,
    Continent,
    FeeStatus,
    Location,
    MemoryAddressSize,
    NetworkOffer,
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
    UsageScenario,
    Violation,
    validate_offer,
    validate_scenario,
    validate_taxonomy,
)
from .normalize import (
    ClockInterval,
    ConversionRule,
    categorize_request,
    convert_quantity,
    ecu_to_clock_interval,
    merge_regional_prices,
    normalize_offer,
)
from .costing import (
    Bundle,
    CostBreakdown,
    LineItem,
    SavingsEntry,
    bundle_cost,
    compute_cost,
    request_cost,
    savings,
    storage_cost,
    transfer_cost,
)
from .matching import (
    MatchQuery,
    Table,
    attachable_pairs,
    match_compute,
    match_network,
    match_offers,
    match_storage,
    project_columns,
)
from .ontology import export_ontology
from .recommend import Recommendation, recommend
from .repository import (
    Catalog,
    CatalogStore,
    catalog_to_document,
    load_catalog,
    offer_to_record,
    parse_offer_record,
)

__version__ = "0.1.0"
