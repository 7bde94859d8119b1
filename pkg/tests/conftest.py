import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from legendre_census import exceptional_census

CENSUS_LIMIT = 100_000


@pytest.fixture(scope="session")
def census_a2_serial():
    return exceptional_census(3, CENSUS_LIMIT, 2.0, workers=1)


@pytest.fixture(scope="session")
def census_a3_serial():
    return exceptional_census(3, CENSUS_LIMIT, 3.0, workers=1)


@pytest.fixture(scope="session")
def census_a3_workers2():
    return exceptional_census(3, CENSUS_LIMIT, 3.0, workers=2)
