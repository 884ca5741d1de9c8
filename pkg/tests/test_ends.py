import pytest

from catbench.catalog import arr, idem, parpair, split_idem
from catbench.errors import BaseMismatch, InvalidWedge
from catbench.fincat import FinFunction, FinSet, Variance, hom_functor, nat_transformations_direct
from catbench.ends import (
    CoWedge,
    Wedge,
    coend_of,
    end_of,
    hom_bifunctor,
    nat_oracle_check,
    nat_transformations_end,
    pairing,
    power_bifunctor,
    product_bifunctor,
    transformation_from_end_element,
    wedge_cone_convert,
)


def test_end_of_hom_counts_central_families():
    assert len(end_of(hom_bifunctor(arr()))) == 1
    end = end_of(hom_bifunctor(idem()))
    assert len(end) == 2
    end.wedge().check(hom_bifunctor(idem()))


def test_coend_of_hom_on_idem():
    coend = coend_of(hom_bifunctor(idem()))
    assert coend.carrier.elements == (("x", "e"), ("x", "id"))


def test_coend_of_hom_on_split_idempotent():
    coend = coend_of(hom_bifunctor(split_idem()))
    assert len(coend) == 2
    assert coend.members(("s", "id_s")) == (("s", "id_s"), ("x", "e"))
    assert coend.members(("x", "id_x")) == (("x", "id_x"),)
    assert coend.class_of(("x", "e")) == ("s", "id_s")


@pytest.mark.parametrize("seed", [0, 1, 7, 42])
def test_coend_ignores_identification_order(seed):
    b = hom_bifunctor(split_idem())
    assert coend_of(b, shuffle_seed=seed).classes == coend_of(b).classes


def test_cowedge_factors_through_coend():
    b = hom_bifunctor(split_idem())
    coend = coend_of(b)
    tip = FinSet.of(["t1", "t2"])
    good = CoWedge(
        tip,
        {
            "s": FinFunction(b.at("s", "s"), tip, {"id_s": "t1"}),
            "x": FinFunction(b.at("x", "x"), tip, {"e": "t1", "id_x": "t2"}),
        },
    )
    factor = coend.factor(good)
    assert factor(("s", "id_s")) == "t1"
    assert factor(("x", "id_x")) == "t2"
    bad = CoWedge(
        tip,
        {
            "s": FinFunction(b.at("s", "s"), tip, {"id_s": "t1"}),
            "x": FinFunction(b.at("x", "x"), tip, {"e": "t2", "id_x": "t1"}),
        },
    )
    with pytest.raises(InvalidWedge):
        coend.factor(bad)


def test_co_yoneda(load_fixture):
    swap = load_fixture("swap.set")
    for a in swap.base.objects:
        result = pairing(hom_functor(swap.base, a, Variance.CONTRAVARIANT), swap)
        assert len(result) == len(swap.sets[a])


def test_product_bifunctor_needs_one_base_for_a_diagonal():
    b = product_bifunctor(hom_functor(arr(), "0", Variance.CONTRAVARIANT), hom_functor(idem(), "x"))
    b.validate()
    with pytest.raises(BaseMismatch):
        b.base
    with pytest.raises(BaseMismatch):
        product_bifunctor(hom_functor(arr(), "0"), hom_functor(arr(), "0"))


def test_wedges_and_hom_weighted_cones_correspond():
    b = hom_bifunctor(idem())
    wedge = end_of(b).wedge()
    cone = wedge_cone_convert(b, wedge)
    back = wedge_cone_convert(b, cone)
    assert isinstance(back, Wedge)
    assert dict(back.legs) == dict(wedge.legs)


def test_bad_wedge_is_rejected(load_fixture):
    swap = load_fixture("swap.set")
    b = power_bifunctor(swap, swap)
    tip = FinSet.of(["t"])
    constant = {o: FinFunction(tip, b.at(o, o), {"t": ("p", "p")}) for o in ("0", "1")}
    with pytest.raises(InvalidWedge):
        Wedge(tip, constant).check(b)


def test_nat_transformations_as_an_end(load_fixture):
    swap = load_fixture("swap.set")
    end = nat_transformations_end(swap, swap)
    assert len(end) == len(nat_transformations_direct(swap, swap)) == 2
    for z in end.carrier:
        transformation_from_end_element(swap, swap, z).validate()
    c = parpair()
    assert len(nat_transformations_end(hom_functor(c, "1"), hom_functor(c, "0"))) == 2


def test_nat_oracle_matches_components(load_fixture):
    swap = load_fixture("swap.set")
    report = nat_oracle_check(swap, swap)
    assert report.agree
    assert len(report.direct) == 2
    assert set(report.bijection.values()) == set(report.direct)
    for z, alpha in report.bijection.items():
        assert alpha == transformation_from_end_element(swap, swap, z)


@pytest.mark.parametrize("variance", [Variance.COVARIANT, Variance.CONTRAVARIANT])
def test_nat_oracle_between_representables(variance):
    c = split_idem()
    f, g = hom_functor(c, "x", variance), hom_functor(c, "s", variance)
    report = nat_oracle_check(f, g)
    assert report.agree
    # Yoneda: Nat(C(x,-), C(s,-)) = C(s,x) and Nat(C(-,x), C(-,s)) = C(x,s)
    assert len(report.direct) == 1
    assert len(nat_oracle_check(g, g).direct) == 1
    assert len(nat_oracle_check(f, f).direct) == 2
