from pathlib import Path

import pytest

from cloudpick import CatalogStore, load_catalog

FIXTURES = Path(__file__).parent / "fixtures"


@pytest.fixture(scope="session")
def fixture_catalog():
    return load_catalog(FIXTURES / "catalog.json")


@pytest.fixture()
def store(fixture_catalog):
    return CatalogStore(fixture_catalog)


@pytest.fixture(scope="session")
def fixtures_dir():
    return FIXTURES
