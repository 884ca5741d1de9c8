import pytest

from catbench import cauchy
from catbench.catalog import arr, cyclic_group, finsets, idem, pair, parpair, split_idem
from catbench.cauchy import (
    Splitting,
    absolute_limit_sweep,
    cauchy_extension,
    cauchy_morphisms,
    cauchy_point_from_idempotent,
    idempotent,
    idempotents,
    inv_right,
    is_absolute_weight,
    is_cauchy_complete,
    karoubi_envelope,
    phi_equivalence_check,
    realize_cauchy_point,
    retract_of_representable,
    split_as_equalizer,
    split_idempotent,
    universal_retraction,
    universal_section,
)
from catbench.elements import is_terminal_cone, weighted_colimit_in_C
from catbench.errors import SizeExceeded, ValidationFailed
from catbench.fincat import (
    FunctorData,
    Variance,
    WeightedCone,
    WeightedDiagram,
    singleton_functor,
    validate_category,
)
from catbench.search import find_equivalence, find_isomorphism, is_fully_faithful


def _equalizer_of(e) -> WeightedDiagram:
    c = e.base
    ident = c.identities[e.obj]
    diagram = FunctorData(
        parpair(),
        c,
        {"0": e.obj, "1": e.obj},
        {"u": e.morphism, "v": ident, "id_0": ident, "id_1": ident},
    )
    return WeightedDiagram(diagram, singleton_functor(parpair()))


def test_idempotents_and_splittings():
    found = idempotents(idem())
    assert [e.morphism for e in found] == ["e", "id"]
    assert split_idempotent(idempotent(idem(), "id")) == Splitting("x", "id", "id")
    assert split_idempotent(idempotent(idem(), "e")) is None
    assert split_idempotent(idempotent(split_idem(), "e")) == Splitting("s", "i", "p")


def test_non_idempotent_rejected():
    with pytest.raises(ValidationFailed):
        idempotent(cyclic_group(2), "g")


def test_cauchy_completeness():
    report = is_cauchy_complete(idem())
    assert not report.complete
    assert [e.morphism for e in report.unsplit] == ["e"]
    assert is_cauchy_complete(split_idem()).complete


def test_karoubi_envelope_of_idem():
    k = karoubi_envelope(idem())
    kc = k.category
    assert validate_category(kc).ok
    sizes = {(a, b): len(kc.hom(a, b)) for a in kc.objects for b in kc.objects}
    assert sizes == {
        ("(x,e)", "(x,e)"): 1,
        ("(x,e)", "(x,id)"): 1,
        ("(x,id)", "(x,e)"): 1,
        ("(x,id)", "(x,id)"): 2,
    }
    assert is_cauchy_complete(kc).complete
    embedding = k.embedding()
    embedding.validate()
    assert is_fully_faithful(embedding)


def test_split_idempotent_category_is_its_own_envelope():
    k = karoubi_envelope(split_idem())
    assert k.isomorphic("(s,id_s)", "(x,e)")
    assert find_equivalence(split_idem(), k.category) is not None


def test_split_as_equalizer():
    limit = split_as_equalizer(idempotent(split_idem(), "e"))
    assert limit is not None
    assert limit.carrier == "s"
    assert split_as_equalizer(idempotent(idem(), "e")) is None


def test_cauchy_point_of_an_unsplit_idempotent():
    pt = cauchy_point_from_idempotent(idempotent(idem(), "e"))
    assert pt.name == "point(e)"
    assert len(pt.classes) == 1
    ext = cauchy_extension(pt)
    assert ext.category.summary() == "2 objects, 5 morphisms"
    assert find_isomorphism(ext.category, split_idem()) is not None


def test_realization():
    assert realize_cauchy_point(cauchy_point_from_idempotent(idempotent(split_idem(), "e"))).obj == "s"
    assert realize_cauchy_point(cauchy_point_from_idempotent(idempotent(idem(), "e"))).obj is None
    assert realize_cauchy_point(cauchy_point_from_idempotent(idempotent(idem(), "id"))).obj == "x"


def test_retracts_of_representables():
    witness = retract_of_representable(inv_right(idempotent(idem(), "e")))
    assert witness is not None
    assert (witness.obj, witness.idempotent.morphism) == ("x", "e")
    assert is_absolute_weight(inv_right(idempotent(idem(), "e")))
    assert not is_absolute_weight(singleton_functor(pair()))


def test_morphisms_between_cauchy_points():
    e = cauchy_point_from_idempotent(idempotent(idem(), "e"))
    ident = cauchy_point_from_idempotent(idempotent(idem(), "id"))
    morphisms = cauchy_morphisms(e, ident)
    assert len(morphisms) == 1
    assert len(cauchy_morphisms(ident, ident)) == 2


@pytest.mark.parametrize("category, realized, complete", [(idem(), 1, False), (split_idem(), 3, True)])
def test_idempotents_and_points_are_equivalent(category, realized, complete):
    report = phi_equivalence_check(category)
    assert report.ok
    assert report.realized == realized
    assert report.cauchy_complete is complete


def test_universal_retraction_of_a_split_equalizer():
    e = idempotent(split_idem(), "e")
    wd = _equalizer_of(e)
    limit = split_as_equalizer(e)
    found = universal_retraction(wd, limit.universal_cone)
    assert found is not None
    assert found.retraction.morphism == "p"


def test_split_equalizers_are_absolute():
    e = idempotent(split_idem(), "e")
    wd = _equalizer_of(e)
    limit = split_as_equalizer(e)
    report = absolute_limit_sweep(wd, limit.universal_cone, {"arr": arr(), "idem": idem()})
    assert report.preserved
    assert report.functors > 0


def test_size_errors_surface_from_the_absolute_sweep(monkeypatch):
    e = idempotent(split_idem(), "e")
    wd = _equalizer_of(e)
    limit = split_as_equalizer(e)
    real = cauchy.is_terminal_cone
    calls = []

    def capped(*args, **kwargs):
        calls.append(args)
        if len(calls) > 1:
            raise SizeExceeded("is_terminal_cone", 1)
        return real(*args, **kwargs)

    monkeypatch.setattr(cauchy, "is_terminal_cone", capped)
    with pytest.raises(SizeExceeded):
        absolute_limit_sweep(wd, limit.universal_cone, {"arr": arr()})
    assert len(calls) == 2


def test_binary_product_is_a_limit_without_a_universal_retraction():
    c = finsets([2, 4])
    diagram = FunctorData(pair(), c, {"0": "[2]", "1": "[2]"}, {"id_0": "2>2:01", "id_1": "2>2:01"})
    wd = WeightedDiagram(diagram, singleton_functor(pair()))
    cone = WeightedCone("[4]", {("0", "*"): "4>2:0011", ("1", "*"): "4>2:0101"})
    assert is_terminal_cone(wd, cone)
    assert universal_retraction(wd, cone) is None


def test_universal_section_of_a_split_coequalizer():
    e = idempotent(split_idem(), "e")
    wd = _equalizer_of(e)
    wd = WeightedDiagram(wd.diagram, singleton_functor(parpair(), Variance.CONTRAVARIANT))
    colimit = weighted_colimit_in_C(wd)
    assert colimit is not None
    assert colimit.carrier == "s"
    assert colimit.leg("0", "*") == colimit.leg("1", "*") == "p"
    found = universal_section(wd, colimit.universal_cone)
    assert found is not None
    assert found.retraction.morphism == "i"
    assert found.candidates
