import io
import pathlib

import pytest

from hypat.discretize import build_cutpoints
from hypat.ingest import load_table, to_transactions

DATA = pathlib.Path(__file__).parent / "data"

# six rows over one symbolic and one numeric attribute; class of interest
# "pos" has three rows, so the numeric cut points come out as 2.1, 2.6, 3.5
TOY6_CSV = """color,A,class
r,1.0,pos
r,2.0,pos
b,3.0,pos
b,4.0,neg
r,5.0,neg
b,2.2,neg
"""


@pytest.fixture
def toy6_table():
    return load_table(io.StringIO(TOY6_CSV))


@pytest.fixture
def toy6(toy6_table):
    cuts = build_cutpoints(toy6_table, "pos")
    return to_transactions(toy6_table, cuts, "pos")


@pytest.fixture(scope="session")
def iris_table():
    return load_table(DATA / "iris.csv")


def pytest_configure(config):
    config.addinivalue_line("markers", "acceptance: acceptance criteria tests")
