import pytest

from catbench.catalog import arr, idem
from catbench.errors import BaseMismatch, ValidationFailed
from catbench.fincat import Variance, hom_functor, validate_category
from catbench.profunctors import (
    StrictMonoidalStructure,
    check_day_associativity,
    check_day_unit,
    check_yoneda_strong_monoidal,
    collage,
    compose_profunctors,
    day_convolve,
    discrete_group_monoidal,
    empty_profunctor,
    identity_profunctor,
    monoidal_catalog,
    one_monoidal,
    poset_max_monoidal,
    profunctor_from_presheaf,
    profunctor_from_set_functor,
    profunctor_iso,
    yon,
)


def test_collage_of_the_identity(load_fixture):
    for phi in (identity_profunctor(arr()), load_fixture("homarr.prof")):
        col = collage(phi)
        assert col.category.summary() == "4 objects, 9 morphisms"
        assert len(col.heteromorphisms) == 3
        assert validate_category(col.category).ok
        col.source_inclusion().validate()
        col.target_inclusion().validate()


def test_profunctor_slices():
    phi = identity_profunctor(arr())
    assert phi.functor_at("0") == hom_functor(arr(), "0")
    assert phi.presheaf_at("1") == hom_functor(arr(), "1", Variance.CONTRAVARIANT)


def test_identity_is_a_unit_for_composition():
    ident = identity_profunctor(idem())
    composite = compose_profunctors(ident, ident)
    assert profunctor_iso(composite, ident) is not None


def test_composing_with_the_empty_profunctor():
    composite = compose_profunctors(identity_profunctor(arr()), empty_profunctor(arr(), arr()))
    assert composite.total_size() == 0


def test_composite_of_functor_and_presheaf_is_their_pairing():
    c = arr()
    phi = profunctor_from_presheaf(hom_functor(c, "1", Variance.CONTRAVARIANT))
    psi = profunctor_from_set_functor(hom_functor(c, "0"))
    composite = compose_profunctors(phi, psi)
    assert len(composite.at("*", "*")) == 1


def test_composition_needs_a_shared_middle():
    with pytest.raises(BaseMismatch):
        compose_profunctors(identity_profunctor(arr()), identity_profunctor(idem()))
    with pytest.raises(BaseMismatch):
        profunctor_from_set_functor(hom_functor(arr(), "0", Variance.CONTRAVARIANT))


def test_day_convolution_of_representables():
    m = discrete_group_monoidal(2)
    product = day_convolve(yon(m, "A"), yon(m, "A"), m)
    assert {z: len(s) for z, s in product.sets.items()} == {"A": 0, "I": 1}
    left, right = check_day_unit(m, yon(m, "A"))
    assert left is not None and right is not None
    assert check_day_associativity(m, yon(m, "A"), yon(m, "A"), yon(m, "I")) is not None


@pytest.mark.parametrize(
    "m",
    [discrete_group_monoidal(2), discrete_group_monoidal(3), one_monoidal(), poset_max_monoidal()],
    ids=lambda m: m.name,
)
def test_yoneda_is_strong_monoidal(m):
    assert check_yoneda_strong_monoidal(m).ok


def test_presheaf_day_convolution():
    assert check_yoneda_strong_monoidal(discrete_group_monoidal(2), Variance.CONTRAVARIANT).ok


def test_monoidal_fixture_matches_catalog(load_fixture):
    parsed = load_fixture("z2disc.mon")
    assert parsed.base == monoidal_catalog()["z2disc"].base


def test_unit_law_is_checked():
    m = discrete_group_monoidal(2)
    broken = StrictMonoidalStructure(m.base, m.tensor_obj, m.tensor_mor, "A")
    with pytest.raises(ValidationFailed) as info:
        broken.validate()
    assert info.value.law == "unit"


def test_monoidal_catalog_is_valid():
    for m in monoidal_catalog().values():
        m.validate()
