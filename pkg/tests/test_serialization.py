import json

import pytest

from catbench.catalog import arr, idem
from catbench.errors import DocumentSyntaxError, UnresolvedReference, ValidationFailed
from catbench.fincat import FunctorData, SetFunctor, Variance, WeightedDiagram, hom_functor
from catbench.profunctors import Profunctor, StrictMonoidalStructure, discrete_group_monoidal, identity_profunctor
from catbench.schemas import DocumentKind
from catbench.serialization import canonical_text, kind_of, load_document, parse, serialize, to_document

ALL_FIXTURES = [
    "arr.cat",
    "chain3.cat",
    "hom0.set",
    "homarr.prof",
    "idem.cat",
    "incl0.fun",
    "kernelpair.wd",
    "one.cat",
    "pair.cat",
    "parpair.cat",
    "poset01.cat",
    "splitidem.cat",
    "swap.set",
    "z2.cat",
    "z2disc.mon",
    "z3.cat",
]


@pytest.mark.parametrize("name", ALL_FIXTURES)
def test_fixtures_are_canonical(name, fixtures_dir):
    text = (fixtures_dir / name).read_text(encoding="utf-8")
    assert canonical_text(text) == text


def test_every_fixture_is_listed(fixtures_dir):
    assert sorted(p.name for p in fixtures_dir.iterdir()) == sorted(ALL_FIXTURES)


def test_arr_layout():
    assert serialize(arr()) == (
        "{\n"
        '  "kind": "category",\n'
        '  "name": "arr",\n'
        '  "objects": ["0", "1"],\n'
        '  "morphisms": [\n'
        '    ["a", "0", "1"],\n'
        '    ["id_0", "0", "0"],\n'
        '    ["id_1", "1", "1"]\n'
        "  ],\n"
        '  "identities": {"0": "id_0", "1": "id_1"},\n'
        '  "composition": []\n'
        "}\n"
    )


def test_identity_rows_are_omitted_and_restored():
    doc = to_document(idem())
    assert doc["composition"] == [["e", "e", "e"]]
    assert parse(serialize(idem())) == idem()


def test_kinds(load_fixture):
    assert kind_of(load_fixture("arr.cat")) is DocumentKind.CATEGORY
    assert isinstance(load_fixture("incl0.fun"), FunctorData)
    assert isinstance(load_fixture("hom0.set"), SetFunctor)
    assert isinstance(load_fixture("homarr.prof"), Profunctor)
    assert isinstance(load_fixture("z2disc.mon"), StrictMonoidalStructure)
    wd = load_fixture("kernelpair.wd")
    assert isinstance(wd, WeightedDiagram)
    assert kind_of(wd) is DocumentKind.WEIGHTED_DIAGRAM


def test_parsed_values_match_constructors(load_fixture):
    assert load_fixture("hom0.set") == hom_functor(arr(), "0")
    phi = load_fixture("homarr.prof")
    ident = identity_profunctor(arr())
    assert dict(phi.sets) == dict(ident.sets)
    assert dict(phi.left) == dict(ident.left)
    assert dict(phi.right) == dict(ident.right)
    m = load_fixture("z2disc.mon")
    expected = discrete_group_monoidal(2)
    assert m.base == expected.base
    assert dict(m.tensor_obj) == dict(expected.tensor_obj)
    assert m.unit == "I"


def test_tuple_elements_round_trip():
    s = SetFunctor.build(
        arr(), Variance.COVARIANT, {"0": [("u", 1)], "1": [("v", 2)]}, lambda m, x: ("v", 2) if m == "a" else x
    )
    text = serialize(s)
    assert '"0": [["u", 1]]' in text
    assert parse(text) == s


def test_syntax_error_position():
    with pytest.raises(DocumentSyntaxError) as info:
        parse('{\n  "kind": "category",\n  oops\n}')
    assert info.value.line == 3
    assert "line 3" in str(info.value)


def test_unknown_kind_is_a_schema_error():
    with pytest.raises(ValidationFailed) as info:
        load_document({"kind": "sheaf"})
    assert info.value.law == "schema"


def test_unresolved_morphism_in_composition():
    doc = json.loads(serialize(idem()))
    doc["composition"] = [["e", "e", "f"]]
    with pytest.raises(UnresolvedReference) as info:
        load_document(doc)
    assert info.value.name == "f"


def test_law_violation_is_reported():
    doc = json.loads(serialize(idem()))
    doc["composition"] = []
    with pytest.raises(ValidationFailed) as info:
        load_document(doc)
    assert info.value.law == "composition"
    assert info.value.witness == ("e", "e")


def test_action_images_must_exist():
    doc = to_document(hom_functor(arr(), "0"))
    doc["sets"]["1"] = ["a", "b"]
    doc["actions"]["a"] = {"id_0": "b"}
    load_document(doc)
    doc["actions"]["a"] = {"id_0": "c"}
    with pytest.raises(UnresolvedReference):
        load_document(doc)


def test_missing_action_entry():
    doc = to_document(hom_functor(arr(), "0"))
    doc["actions"]["a"] = {}
    with pytest.raises(ValidationFailed) as info:
        load_document(doc)
    assert info.value.law == "totality"


def test_elements_with_the_same_spelling_are_rejected():
    doc = to_document(hom_functor(arr(), "0"))
    doc["sets"]["1"] = [1, "1"]
    doc["actions"]["a"] = {"id_0": "1"}
    with pytest.raises(ValidationFailed) as info:
        load_document(doc)
    assert info.value.law == "schema"
    assert info.value.witness == ("1",)


def test_serializing_ambiguous_elements_fails():
    s = SetFunctor.build(arr(), Variance.COVARIANT, {"0": [1, "1"], "1": ["z"]}, lambda m, x: "z" if m == "a" else x)
    with pytest.raises(ValidationFailed):
        serialize(s)
