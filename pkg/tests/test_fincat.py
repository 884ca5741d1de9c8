import pytest

from catbench.catalog import arr, cyclic_group, one, parpair, split_idem
from catbench.errors import BaseMismatch, BrokenAssociativity, FunctorLawError, NaturalityError, NonClosedComposition
from catbench.fincat import (
    FinCategory,
    FinFunction,
    FinSet,
    NatTransformation,
    SetFunctor,
    Variance,
    compose_functors,
    constant_functor,
    constant_set_functor,
    extend,
    full_subcategory,
    hom_functor,
    identity_functor,
    nat_transformations_direct,
    object_functor,
    opposite,
    precompose,
    product_category,
    render,
    validate_category,
    virtual_name,
    yoneda_transformation,
)


def _one_object(comp):
    return FinCategory.build(["x"], [("id", "x", "x"), ("a", "x", "x"), ("b", "x", "x")], {"x": "id"}, comp)


def _with_units(table):
    comp = dict(table)
    for m in ("id", "a", "b"):
        comp[("id", m)] = m
        comp[(m, "id")] = m
    return comp


def test_validate_reports_summary():
    report = validate_category(arr())
    assert report.ok
    assert report.message == "ok: 2 objects, 3 morphisms"


def test_missing_composite_is_reported_first():
    comp = _with_units({("a", "a"): "a", ("a", "b"): "b", ("b", "a"): "b"})
    report = validate_category(_one_object(comp))
    assert not report.ok
    assert report.law == "composition"
    assert report.witness == ("b", "b")


def test_missing_identity():
    c = FinCategory.build(["x"], [("a", "x", "x")], {}, {("a", "a"): "a"})
    report = validate_category(c)
    assert report.law == "identity"
    assert report.witness == ("x",)


def test_broken_unit():
    comp = _with_units({("a", "a"): "a", ("a", "b"): "b", ("b", "a"): "b", ("b", "b"): "b"})
    comp[("id", "a")] = "b"
    report = validate_category(_one_object(comp))
    assert report.law == "unit"
    assert report.witness == ("a",)


def test_broken_associativity():
    # (a∘a)∘a = b∘a = a but a∘(a∘a) = a∘b = b
    comp = _with_units({("a", "a"): "b", ("b", "b"): "b", ("a", "b"): "b", ("b", "a"): "a"})
    report = validate_category(_one_object(comp))
    assert report.law == "associativity"
    with pytest.raises(BrokenAssociativity):
        report.raise_for_status()


def test_compose_undefined_raises():
    with pytest.raises(NonClosedComposition):
        split_idem().compose("i", "i")


def test_compose_path_and_hom():
    c = split_idem()
    assert c.compose("p", "i") == "id_s"
    assert c.compose("i", "p") == "e"
    assert c.compose_path("i", "p", "i") == "i"
    assert c.hom("x", "s") == ("p",)
    assert c.hom("x", "x") == ("e", "id_x")
    assert c.hom_from("s") == ("id_s", "i")


def test_inverses_in_a_group():
    z3 = cyclic_group(3)
    assert z3.inverse_of("g") == "g2"
    assert z3.is_isomorphism("g2")
    assert not split_idem().is_isomorphism("e")


def test_opposite_is_an_involution():
    c = split_idem()
    op = opposite(c)
    assert op.name == "splitidem^op"
    assert op.dom("i") == "x"
    assert op.compose("i", "p") == "id_s"
    assert validate_category(op).ok
    assert opposite(op) == c
    assert opposite(op).name == "splitidem"


def test_product_and_subcategory():
    p = product_category(arr(), arr())
    assert p.summary() == "4 objects, 9 morphisms"
    assert validate_category(p).ok
    sub = full_subcategory(split_idem(), ["x"], "x only")
    assert sub.summary() == "1 objects, 2 morphisms"
    assert validate_category(sub).ok


def test_functor_composition_and_constants():
    c = arr()
    ident = identity_functor(c)
    ident.validate()
    assert compose_functors(ident, ident) == ident
    const = constant_functor(c, one(), "*")
    const.validate()
    pick = object_functor(c, "1")
    pick.validate()
    composite = compose_functors(pick, const)
    assert composite.ob("0") == "1"
    assert composite.mor("a") == "id_1"
    with pytest.raises(BaseMismatch):
        compose_functors(const, const)


def test_hom_functors():
    c = arr()
    cov = hom_functor(c, "0")
    cov.validate()
    assert cov.label == "arr(0,-)"
    assert cov.size_profile() == (1, 1)
    assert cov.act("a", "id_0") == "a"
    contra = hom_functor(c, "1", Variance.CONTRAVARIANT)
    contra.validate()
    assert contra.sets["0"].elements == ("a",)
    assert contra.act("a", "id_1") == "a"


def test_set_functor_law_violation():
    z2 = cyclic_group(2)
    collapse = SetFunctor.build(z2, Variance.COVARIANT, {"*": ["p", "q"]}, lambda m, x: x if m == "id" else "p")
    with pytest.raises(FunctorLawError):
        collapse.validate()
    swap = SetFunctor.build(
        z2, Variance.COVARIANT, {"*": ["p", "q"]}, lambda m, x: x if m == "id" else {"p": "q", "q": "p"}[x]
    )
    swap.validate()


def test_precompose_along_inclusion():
    s = precompose(hom_functor(arr(), "0"), object_functor(arr(), "0"))
    assert s.base == one()
    assert s.sets["*"].elements == ("id_0",)


def test_nat_transformations_between_representables():
    c = arr()
    assert len(nat_transformations_direct(hom_functor(c, "1"), hom_functor(c, "0"))) == 1
    assert nat_transformations_direct(hom_functor(c, "0"), hom_functor(c, "1")) == []


def test_yoneda_counts(load_fixture):
    swap = load_fixture("swap.set")
    for x in swap.base.objects:
        found = nat_transformations_direct(hom_functor(swap.base, x), swap)
        assert len(found) == len(swap.sets[x])
        for alpha in found:
            alpha.validate()


def test_yoneda_transformation_is_natural():
    c = split_idem()
    s = hom_functor(c, "x")
    alpha = yoneda_transformation(s, "s", "p")
    alpha.validate()
    assert alpha("s", "id_s") == "p"
    assert alpha("x", "i") == "e"


def test_transformation_algebra():
    c = parpair()
    s = hom_functor(c, "0")
    ident = NatTransformation.identity(s)
    assert ident.is_isomorphism()
    assert ident.after(ident) == ident
    assert ident.inverse() == ident


def test_unnatural_family_rejected(load_fixture):
    swap = load_fixture("swap.set")
    fixed = {o: FinFunction(swap.sets[o], swap.sets[o], {"p": "p", "q": "p"}) for o in swap.base.objects}
    with pytest.raises(NaturalityError):
        NatTransformation(swap, swap, fixed).validate()


def test_extension_by_representable():
    c = arr()
    ext = extend(c, hom_functor(c, "0"))
    assert ext.extra == "__E"
    assert ext.category.summary() == "3 objects, 6 morphisms"
    assert validate_category(ext.category).ok
    to_zero = virtual_name("__E", "0", "id_0")
    to_one = virtual_name("__E", "1", "a")
    assert to_zero == "__v:__E>0:id_0"
    assert ext.category.compose("a", to_zero) == to_one
    assert ext.virtual_arrow("__E", "1", "a") == to_one
    assert ext.is_virtual(to_one) and not ext.is_virtual("a")
    ext.inclusion().validate()


def test_extension_by_presheaf_points_into_extra():
    c = split_idem()
    p = hom_functor(c, "x", Variance.CONTRAVARIANT)
    ext = extend(c, p)
    assert validate_category(ext.category).ok
    into = virtual_name("x", "__E", "e")
    assert ext.category.cod(into) == "__E"
    assert ext.category.compose(into, "i") == virtual_name("s", "__E", "i")


def test_virtual_names_stay_distinct_for_a_repeated_element():
    c = arr()
    ext = extend(c, constant_set_functor(c, ["*"]))
    names = sorted(ext.virtual)
    assert names == ["__v:__E>0:*", "__v:__E>1:*"]
    assert all(n.startswith("__v:") and n.endswith(":*") for n in names)
    assert ext.category.compose("a", "__v:__E>0:*") == "__v:__E>1:*"
    assert validate_category(ext.category).ok


def test_render_and_finsets():
    assert render(("a", 1, ("b",))) == "(a,1,(b))"
    assert FinSet.of(["q", "p", "p"]).elements == ("p", "q")
    with pytest.raises(ValueError):
        FinSet(("p", "p"))
