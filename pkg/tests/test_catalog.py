import pytest

from catbench.catalog import catalog, finsets, random_category
from catbench.fincat import validate_category


@pytest.mark.parametrize("name", sorted(catalog()))
def test_catalog_categories_are_valid(name):
    c = catalog()[name]
    assert c.name == name
    assert validate_category(c).ok


def test_catalog_names():
    assert {"one", "pair", "arr", "parpair", "idem", "splitidem", "poset01", "chain3", "z2", "z3"} <= set(catalog())


@pytest.mark.parametrize("name", ["one", "pair", "arr", "parpair", "idem", "splitidem", "poset01", "chain3", "z2", "z3"])
def test_fixture_matches_catalog(name, load_fixture):
    assert load_fixture(f"{name}.cat") == catalog()[name]


def test_random_categories_are_reproducible():
    for seed in range(5):
        c = random_category(seed)
        assert c == random_category(seed)
        assert c.name == f"random{seed}"
        assert validate_category(c).ok


def test_finsets_fragment():
    c = finsets([1, 2])
    assert c.summary() == "2 objects, 8 morphisms"
    assert validate_category(c).ok
    assert c.compose("2>1:00", "1>2:1") == "1>1:0"
