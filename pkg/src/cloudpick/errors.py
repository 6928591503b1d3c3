"""Exception types shared across the engine."""

from __future__ import annotations


class CloudpickError(Exception):
    """Base class for all domain errors raised by this package."""


class ParseError(CloudpickError):
    """A catalog or scenario document is structurally malformed."""

    def __init__(self, path: str, message: str):
        self.path = path
        self.message = message
        super().__init__(f"{path}: {message}")


class RejectedOfferError(CloudpickError):
    """One or more offers failed validation; carries the full report.

    ``reports`` is a list of (offer_id, [Violation]) pairs so a caller can
    surface every problem in one pass (loads are all-or-nothing).
    """

    def __init__(self, reports):
        self.reports = list(reports)
        lines = []
        for offer_id, violations in self.reports:
            for v in violations:
                lines.append(f"{offer_id}: {v}")
        super().__init__("; ".join(lines) or "offer rejected")


class IntegrityError(CloudpickError):
    """A catalog-level referential or uniqueness constraint is broken."""


class IncompatibleUnitsError(CloudpickError):
    """Conversion requested between units of different dimensions."""


class InvalidRatingError(CloudpickError):
    """A CPU rating (ECU count) outside its legal range."""


class DuplicateRegionError(CloudpickError):
    """The same location appears twice in a regional price list."""


class QueryError(CloudpickError):
    """A match query, column list, scenario, or verb is invalid."""


class CostingError(CloudpickError):
    """A cost computation was asked of inputs it cannot price."""


class PlanMismatchError(CostingError):
    """The price plan does not belong to the offer being priced."""


class CapacityError(CostingError):
    """Requested storage volume falls outside the offer's bounds."""


class CurrencyError(CostingError):
    """Amounts in different currencies cannot be compared or summed."""
