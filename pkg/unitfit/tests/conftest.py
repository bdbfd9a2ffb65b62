import pytest

from unitfit.constants.config import Family
from unitfit.data import load_embedded
from unitfit.inference import fit_mle
from unitfit.report import build_comparison


@pytest.fixture(scope="session")
def dwelling():
    return load_embedded(1)


@pytest.fixture(scope="session")
def covid_canada():
    return load_embedded(6)


@pytest.fixture(scope="session")
def dwelling_table(dwelling):
    """All seven families fitted on the dwelling data (shared, fits are slow-ish)."""
    return build_comparison(dwelling)


@pytest.fixture(scope="session")
def dwelling_gombur1(dwelling_table):
    return dwelling_table.block(Family.GOMBUR1)


@pytest.fixture(scope="session")
def canada_gombur1(covid_canada):
    return fit_mle(Family.GOMBUR1, covid_canada)
