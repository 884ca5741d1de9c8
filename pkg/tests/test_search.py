import pytest

from catbench.catalog import arr, cyclic_group, idem, one, parpair, split_idem
from catbench.errors import SizeExceeded
from catbench.fincat import FinCategory, constant_functor, hom_functor, identity_functor, object_functor, opposite
from catbench.search import (
    Budget,
    ConstraintSearch,
    enumerate_functors,
    find_equivalence,
    find_isomorphism,
    is_fully_faithful,
    natural_iso_search,
    natural_isomorphisms,
)


def _iso_pair() -> FinCategory:
    """Two objects joined by an isomorphism."""
    morphisms = [("id_0", "0", "0"), ("id_1", "1", "1"), ("f", "0", "1"), ("g", "1", "0")]
    comp = {
        ("g", "f"): "id_0",
        ("f", "g"): "id_1",
        ("id_1", "f"): "f",
        ("f", "id_0"): "f",
        ("id_0", "g"): "g",
        ("g", "id_1"): "g",
        ("id_0", "id_0"): "id_0",
        ("id_1", "id_1"): "id_1",
    }
    return FinCategory.build(["0", "1"], morphisms, {"0": "id_0", "1": "id_1"}, comp, "iso")


def test_constraint_search_counts_solutions():
    search = ConstraintSearch({"x": (1, 2, 3), "y": (1, 2, 3)}, Budget("test"))
    search.require(("x", "y"), lambda x, y: x < y)
    assert search.count() == 3
    assert search.first() == {"x": 1, "y": 2}


def test_distinct_gives_permutations():
    search = ConstraintSearch({v: "abc" for v in ("x", "y", "z")}, Budget("test"))
    search.distinct(["x", "y", "z"])
    assert search.count() == 6


def test_empty_domain_has_no_solution():
    search = ConstraintSearch({"x": (), "y": (1,)}, Budget("test"))
    assert search.first() is None


def test_budget_raises_size_exceeded():
    search = ConstraintSearch({v: range(4) for v in "abc"}, Budget("test", cap=10))
    with pytest.raises(SizeExceeded) as info:
        search.count()
    assert info.value.operation == "test"
    assert info.value.cap == 10


def test_reserve_fails_early():
    with pytest.raises(SizeExceeded):
        Budget("test", cap=5).reserve(6)


def test_enumerate_functors():
    assert len(list(enumerate_functors(arr(), arr()))) == 3
    assert len(list(enumerate_functors(one(), arr()))) == 2
    assert len(list(enumerate_functors(cyclic_group(2), cyclic_group(2)))) == 2
    for f in enumerate_functors(split_idem(), idem()):
        f.validate()


def test_enumerate_functors_respects_cap():
    with pytest.raises(SizeExceeded):
        list(enumerate_functors(split_idem(), split_idem(), cap=3))


def test_find_isomorphism():
    iso = find_isomorphism(opposite(arr()), arr())
    assert iso is not None
    iso.validate()
    assert iso.ob("1") == "0"
    assert find_isomorphism(idem(), cyclic_group(2)) is None
    assert find_isomorphism(parpair(), arr()) is None


def test_find_equivalence_between_unequal_sizes():
    eq = find_equivalence(one(), _iso_pair())
    assert eq is not None
    eq.validate()
    assert is_fully_faithful(eq)
    assert find_isomorphism(one(), _iso_pair()) is None
    assert find_equivalence(one(), arr()) is None


def test_fully_faithful():
    assert is_fully_faithful(identity_functor(arr()))
    assert is_fully_faithful(object_functor(arr(), "0"))
    assert not is_fully_faithful(constant_functor(arr(), one(), "*"))


def test_natural_isomorphisms(load_fixture):
    swap = load_fixture("swap.set")
    assert len(natural_isomorphisms(swap, swap)) == 2
    least = natural_iso_search(swap, swap)
    assert least is not None
    assert least("0", "p") == "p"
    c = arr()
    assert natural_iso_search(hom_functor(c, "0"), hom_functor(c, "1")) is None
