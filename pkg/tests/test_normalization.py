"""Unit conversion, CPU rating intervals, request categorization, merging."""

import dataclasses

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cloudpick import (
    Continent,
    DuplicateRegionError,
    FeeStatus,
    IncompatibleUnitsError,
    InvalidRatingError,
    Location,
    Quantity,
    RejectedOfferError,
    RequestCategory,
    RequestVerb,
    categorize_request,
    convert_quantity,
    ecu_to_clock_interval,
    merge_regional_prices,
    normalize_offer,
)
from cloudpick.normalize import DIMENSIONS

from test_catalog_model import make_compute, make_storage

EUROPE = Location(Continent.EUROPE)
ASIA = Location(Continent.ASIA)
NA = Location(Continent.NORTH_AMERICA)


class TestConvertQuantity:
    def test_613_mb_is_about_0599_gb(self):
        q = convert_quantity(Quantity(613, "MB"), "GB")
        assert q.unit == "GB"
        assert abs(q.value - 0.599) <= 0.0005

    def test_1024_mb_is_exactly_one_gb(self):
        assert convert_quantity(Quantity(1024, "MB"), "GB").value == 1.0

    def test_one_tb_is_1024_gb(self):
        # Hand-composed binary factor; the 1 GB..1 TB block-store bounds
        # must therefore admit a 5 GB request.
        q = convert_quantity(Quantity(1, "TB"), "GB")
        assert q.value == 1024.0
        assert q.value >= 5.0 >= 1.0

    def test_identity_conversion(self):
        q = Quantity(3.5, "GHz")
        assert convert_quantity(q, "GHz") == q

    def test_dimension_mismatch_raises(self):
        with pytest.raises(IncompatibleUnitsError):
            convert_quantity(Quantity(1, "GHz"), "GB")
        with pytest.raises(IncompatibleUnitsError):
            convert_quantity(Quantity(1, "hour"), "MB")

    def test_price_units_never_convert(self):
        with pytest.raises(IncompatibleUnitsError):
            convert_quantity(Quantity(1, "USD/hour"), "USD/GB")

    def test_time_ladder(self):
        assert convert_quantity(Quantity(48, "hour"), "day").value == 2.0
        assert convert_quantity(Quantity(1, "month"), "day").value == 31.0
        assert convert_quantity(Quantity(1, "month"), "hour").value == 744.0


_UNIT_PAIRS = [
    (a, b)
    for units in DIMENSIONS.values()
    for a in units
    for b in units
]


@given(value=st.floats(min_value=1e-6, max_value=1e9, allow_nan=False),
       pair=st.sampled_from(_UNIT_PAIRS))
@settings(max_examples=200)
def test_round_trip_within_1e9_relative(value, pair):
    src, dst = pair
    back = convert_quantity(convert_quantity(Quantity(value, src), dst), src)
    assert back.unit == src
    assert abs(back.value - value) <= 1e-9 * value


class TestEcuInterval:
    def test_one_ecu(self):
        interval = ecu_to_clock_interval(1)
        assert (interval.low.value, interval.high.value) == (1.0, 1.2)
        assert interval.low.unit == interval.high.unit == "GHz"

    def test_two_ecu_scales_linearly(self):
        interval = ecu_to_clock_interval(2)
        assert (interval.low.value, interval.high.value) == (2.0, 2.4)

    def test_zero_and_negative_rejected(self):
        with pytest.raises(InvalidRatingError):
            ecu_to_clock_interval(0)
        with pytest.raises(InvalidRatingError):
            ecu_to_clock_interval(-1.5)


class TestMergeRegionalPrices:
    def test_equal_prices_combine(self):
        merged = merge_regional_prices([(EUROPE, 0.10), (ASIA, 0.10)])
        assert len(merged) == 1
        assert merged[0].locations == frozenset({EUROPE, ASIA})
        assert merged[0].price == 0.10

    def test_distinct_prices_stay_separate(self):
        merged = merge_regional_prices([(EUROPE, 0.10), (ASIA, 0.12)])
        assert [(set(g.locations), g.price) for g in merged] == [
            ({EUROPE}, 0.10), ({ASIA}, 0.12)]

    def test_empty_input(self):
        assert merge_regional_prices([]) == []

    def test_duplicate_location_rejected(self):
        with pytest.raises(DuplicateRegionError):
            merge_regional_prices([(EUROPE, 0.10), (EUROPE, 0.10)])


@given(st.lists(
    st.tuples(st.sampled_from(list(Continent)), st.sampled_from([0.05, 0.1, 0.2, 0.3])),
    max_size=6, unique_by=lambda t: t[0],
))
@settings(max_examples=100)
def test_merge_preserves_membership(entries):
    pairs = [(Location(c), p) for c, p in entries]
    merged = merge_regional_prices(pairs)
    flattened = {(loc, g.price) for g in merged for loc in g.locations}
    assert flattened == set(pairs)
    assert sum(len(g.locations) for g in merged) == len(pairs)
    assert len(merged) == len({p for _, p in pairs})


class TestCategorizeRequest:
    def test_amazon_delete_is_free_other(self, fixture_catalog):
        provider = fixture_catalog.provider("amazon")
        s3 = fixture_catalog.find_offer("s3")
        assert categorize_request(provider, s3, RequestVerb.DELETE) == (
            RequestCategory.OTHER, FeeStatus.FREE, 0.0)

    def test_softlayer_put_is_unspecified_upload(self, fixture_catalog):
        provider = fixture_catalog.provider("softlayer")
        offer = fixture_catalog.find_offer("softlayer-object-storage")
        assert categorize_request(provider, offer, RequestVerb.PUT) == (
            RequestCategory.UPLOAD, FeeStatus.UNSPECIFIED, 0.0)

    def test_azure_get_hits_flat_transaction_rate(self, fixture_catalog):
        provider = fixture_catalog.provider("azure")
        offer = fixture_catalog.find_offer("azure-storage")
        category, status, cost = categorize_request(provider, offer, RequestVerb.GET)
        assert (category, status) == (RequestCategory.DOWNLOAD, FeeStatus.CHARGED)
        assert cost == pytest.approx(0.00001)

    def test_uncovered_verb_is_unspecified_other(self, fixture_catalog):
        provider = fixture_catalog.provider("gogrid")
        offer = fixture_catalog.find_offer("gogrid-cloud-storage")
        assert categorize_request(provider, offer, RequestVerb.PUT) == (
            RequestCategory.OTHER, FeeStatus.UNSPECIFIED, 0.0)

    def test_wrong_provider_rejected(self, fixture_catalog):
        provider = fixture_catalog.provider("azure")
        s3 = fixture_catalog.find_offer("s3")
        with pytest.raises(ValueError):
            categorize_request(provider, s3, RequestVerb.GET)

    def test_free_and_unspecified_never_cost(self, fixture_catalog):
        for offer in fixture_catalog.storage:
            provider = fixture_catalog.provider(offer.provider)
            for verb in RequestVerb:
                _, status, cost = categorize_request(provider, offer, verb)
                if status in (FeeStatus.FREE, FeeStatus.UNSPECIFIED):
                    assert cost == 0.0


class TestNormalizeOffer:
    def test_mb_memory_becomes_gb(self):
        offer = make_compute(memory=Quantity(613, "MB"))
        normalized = normalize_offer(offer)
        assert normalized.memory.unit == "GB"
        assert abs(normalized.memory.value - 0.599) <= 0.0005

    def test_ecu_clock_uses_conservative_bound(self):
        offer = make_compute(clock_speed=Quantity(2, "ECU"))
        assert normalize_offer(offer).clock_speed == Quantity(2.0, "GHz")

    def test_idempotent_on_canonical_offers(self, fixture_catalog):
        for offer in fixture_catalog.all_offers():
            assert normalize_offer(offer) == offer

    def test_storage_bounds_convert_to_gb(self):
        offer = make_storage(size_max=Quantity(1, "TB"))
        assert normalize_offer(offer).size_max == Quantity(1024.0, "GB")

    def test_invalid_offer_rejected_with_report(self):
        # validate_offer is the oracle: the same violation it reports
        # must surface inside the rejection.
        from cloudpick import validate_offer
        import cloudpick.model as m
        bad = make_compute(cores=0)
        expected = validate_offer(bad)
        assert [v.constraint for v in expected] == [m.CORE]
        with pytest.raises(RejectedOfferError) as err:
            normalize_offer(bad)
        (offer_id, report), = err.value.reports
        assert offer_id == "box-1"
        assert report == expected

    def test_monthly_period_lengths_become_days_for_storage(self):
        offer = make_storage()
        plan = dataclasses.replace(offer.plans[0], period_length=Quantity(1, "month"))
        normalized = normalize_offer(dataclasses.replace(offer, plans=(plan,)))
        assert normalized.plans[0].period_length == Quantity(31.0, "day")
