"""Matching: filters, ordering, attachability pairing, projections."""

import random
import re

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cloudpick import (
    Catalog,
    Continent,
    Location,
    MatchQuery,
    Provider,
    QueryError,
    Quantity,
    attachable_pairs,
    match_compute,
    match_offers,
    match_storage,
    project_columns,
)

import gen
import oracles
from test_catalog_model import make_compute, make_storage


def two_offer_catalog():
    """The minimal fixture from the worked examples: A 1 core / 0.599 GB,
    B 4 cores / 15 GB."""
    a = make_compute(id="offer-a", provider="p1", name="Micro Box",
                     cores=1, memory=Quantity(0.599, "GB"))
    b = make_compute(id="offer-b", provider="p1", name="Max Box",
                     cores=4, memory=Quantity(15.0, "GB"))
    return Catalog(providers=(Provider("p1", "USD"),), compute=(a, b))


class TestMatchCompute:
    def test_min_cores_filters(self):
        view = two_offer_catalog()
        result = match_compute(view, MatchQuery(kind="compute", min_cores=2))
        assert [o.id for o in result] == ["offer-b"]

    def test_no_constraints_sorted_by_name(self):
        view = two_offer_catalog()
        result = match_compute(view, MatchQuery(kind="compute", sort_key="name"))
        assert [o.name for o in result] == sorted(o.name for o in view.compute)

    def test_name_regex_anchors_whole_name(self, fixture_catalog):
        result = match_compute(
            fixture_catalog, MatchQuery(kind="compute", name_regex="EC2.*"))
        expected = {o.id for o in fixture_catalog.compute
                    if re.fullmatch("EC2.*", o.name)}
        assert {o.id for o in result} == expected
        assert all(o.name.startswith("EC2") for o in result)
        assert result  # the amazon fixture has EC2-named offers

    def test_dot_star_equals_no_regex(self, fixture_catalog):
        with_regex = match_compute(fixture_catalog,
                                   MatchQuery(kind="compute", name_regex=".*"))
        without = match_compute(fixture_catalog, MatchQuery(kind="compute"))
        assert with_regex == without

    def test_invalid_regex_rejected(self, fixture_catalog):
        with pytest.raises(QueryError):
            match_compute(fixture_catalog,
                          MatchQuery(kind="compute", name_regex="[oops"))

    def test_unknown_sort_key_rejected(self, fixture_catalog):
        with pytest.raises(QueryError):
            match_compute(fixture_catalog,
                          MatchQuery(kind="compute", sort_key="velocity"))

    def test_wrong_kind_rejected(self, fixture_catalog):
        with pytest.raises(QueryError):
            match_compute(fixture_catalog, MatchQuery(kind="storage"))

    def test_descending_sort_with_stable_ties(self, fixture_catalog):
        result = match_compute(
            fixture_catalog,
            MatchQuery(kind="compute", sort_key="cores", sort_order="desc"))
        cores = [o.cores for o in result]
        assert cores == sorted(cores, reverse=True)
        for i in range(len(result) - 1):
            if result[i].cores == result[i + 1].cores:
                assert (result[i].provider, result[i].id) < \
                    (result[i + 1].provider, result[i + 1].id)

    def test_location_filter(self, fixture_catalog):
        europe = Location(Continent.EUROPE)
        result = match_compute(
            fixture_catalog, MatchQuery(kind="compute", location=europe))
        expected = {o.id for o in fixture_catalog.compute
                    if any(l.continent is Continent.EUROPE for l in o.locations)}
        assert {o.id for o in result} == expected


class TestMatchStorage:
    def test_five_gb_fits_one_gb_to_one_tb(self, fixture_catalog):
        result = match_storage(fixture_catalog,
                               MatchQuery(kind="storage", size_gb=5.0))
        assert "ebs" in {o.id for o in result}

    def test_larger_than_max_excluded(self, fixture_catalog):
        result = match_storage(fixture_catalog,
                               MatchQuery(kind="storage", size_gb=2048.0))
        assert "ebs" not in {o.id for o in result}

    def test_bounds_are_inclusive(self):
        offer = make_storage()  # 1..1024 GB
        view = Catalog(providers=(Provider("acme", "USD"),), storage=(offer,))
        at_min = match_storage(view, MatchQuery(kind="storage", size_gb=1.0))
        at_max = match_storage(view, MatchQuery(kind="storage", size_gb=1024.0))
        assert [o.id for o in at_min] == [o.id for o in at_max] == ["disk-1"]

    def test_negative_size_rejected(self, fixture_catalog):
        with pytest.raises(QueryError):
            match_storage(fixture_catalog, MatchQuery(kind="storage", size_gb=-1.0))


class TestAttachablePairs:
    def test_worked_example_five_gb(self, fixture_catalog):
        pairs = attachable_pairs(
            fixture_catalog, MatchQuery(kind="compute", name_regex="EC2.*"), 5.0)
        assert {(c.id, s.id) for c, s in pairs} == {
            ("ec2-micro", "ebs"), ("ec2-standard", "ebs")}

    def test_oversized_request_excludes_block_store(self, fixture_catalog):
        pairs = attachable_pairs(
            fixture_catalog, MatchQuery(kind="compute"), 2048.0)
        assert pairs == []

    def test_empty_attachable_never_pairs(self, fixture_catalog):
        # s3 has no attachable_to patterns.
        pairs = attachable_pairs(fixture_catalog, MatchQuery(kind="compute"), 5.0)
        assert all(s.id != "s3" for _, s in pairs)

    def test_never_pairs_across_providers(self, fixture_catalog):
        for gb in (5.0, 100.0, 1024.0):
            pairs = attachable_pairs(fixture_catalog, MatchQuery(kind="compute"), gb)
            brute = oracles.brute_attachable_pairs(
                fixture_catalog, MatchQuery(kind="compute"), gb)
            assert pairs == brute
            assert all(c.provider == s.provider for c, s in pairs)

    def test_zero_volume_rejected(self, fixture_catalog):
        with pytest.raises(QueryError):
            attachable_pairs(fixture_catalog, MatchQuery(kind="compute"), 0.0)

    def test_pairs_subset_of_single_resource_matches(self, fixture_catalog):
        query = MatchQuery(kind="compute", min_cores=1)
        pairs = attachable_pairs(fixture_catalog, query, 5.0)
        computes = set(match_compute(fixture_catalog, query))
        storages = set(match_storage(fixture_catalog,
                                     MatchQuery(kind="storage", size_gb=5.0)))
        for c, s in pairs:
            assert c in computes and s in storages


class TestProjectColumns:
    def test_requested_order_kept(self, fixture_catalog):
        rows = list(fixture_catalog.compute)
        table = project_columns(rows, ["memory", "cores"])
        assert table.columns == ("memory", "cores")
        assert table.rows[0] == (rows[0].memory, rows[0].cores)

    def test_empty_column_list_keeps_row_count(self, fixture_catalog):
        rows = list(fixture_catalog.compute)
        table = project_columns(rows, [])
        assert table.columns == ()
        assert len(table.rows) == len(rows)
        assert all(r == () for r in table.rows)

    def test_duplicate_columns_repeat_values(self, fixture_catalog):
        rows = list(fixture_catalog.compute)
        table = project_columns(rows, ["cores", "cores"])
        for offer, row in zip(rows, table.rows):
            assert row == (offer.cores, offer.cores)

    def test_unknown_column_rejected(self, fixture_catalog):
        with pytest.raises(QueryError):
            project_columns(list(fixture_catalog.compute), ["velocity"])


def test_oracle_equivalence_random_catalogs():
    """Every match result equals an independent linear scan, order included."""
    rng = random.Random(4242)
    for _ in range(25):
        catalog = gen.random_catalog(rng, max_offers_per_kind=50)
        for kind in ("compute", "storage", "network"):
            query = gen.random_match_query(rng, kind)
            assert match_offers(catalog, query) == oracles.brute_match(catalog, query)


@given(data=st.data())
@settings(max_examples=40, deadline=None)
def test_tightening_constraints_never_adds_offers(data):
    seed = data.draw(st.integers(min_value=0, max_value=10_000))
    rng = random.Random(seed)
    catalog = gen.random_catalog(rng, max_offers_per_kind=20)
    base_cores = data.draw(st.integers(min_value=0, max_value=8))
    delta = data.draw(st.integers(min_value=0, max_value=8))
    base_mem = data.draw(st.sampled_from([0.0, 1.0, 4.0]))
    loose = MatchQuery(kind="compute", min_cores=base_cores, min_memory_gb=base_mem)
    tight = MatchQuery(kind="compute", min_cores=base_cores + delta,
                       min_memory_gb=base_mem)
    assert set(match_compute(catalog, tight)) <= set(match_compute(catalog, loose))
