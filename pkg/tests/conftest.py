import os
from pathlib import Path

# keep the service tests off the on-disk database
os.environ.setdefault("CATBENCH_DATABASE_URL", "sqlite://")

import pytest

from catbench import catalog
from catbench.serialization import parse_file

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"


@pytest.fixture
def fixtures_dir() -> Path:
    return FIXTURES


@pytest.fixture
def load_fixture():
    def load(name: str):
        return parse_file(FIXTURES / name)

    return load


@pytest.fixture
def arr():
    return catalog.arr()


@pytest.fixture
def idem():
    return catalog.idem()


@pytest.fixture
def split_idem():
    return catalog.split_idem()


@pytest.fixture
def parpair():
    return catalog.parpair()


@pytest.fixture
def one():
    return catalog.one()


@pytest.fixture
def z2():
    return catalog.cyclic_group(2)
