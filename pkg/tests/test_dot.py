from catbench.catalog import arr
from catbench.dot import category_to_dot, cone_to_dot, emit_dot, graph_to_dot
from catbench.elements import weighted_limit_in_C
from catbench.fincat import extend, hom_functor
from catbench.profunctors import collage, identity_profunctor


def test_category_edges_skip_identities():
    text = category_to_dot(arr())
    assert text.startswith('digraph "arr" {')
    assert '  "0" -> "1" [label="a"] ;' in text
    assert "id_0" not in text


def test_extension_marks_virtual_parts():
    c = arr()
    text = emit_dot(extend(c, hom_functor(c, "0")))
    assert '  "__E" [label="__E", shape=point] ;' in text
    assert '  "__E" -> "0" [label="id_0", style=dashed] ;' in text
    assert '  "0" -> "1" [label="a"] ;' in text


def test_collage_heteromorphisms_are_dashed():
    text = emit_dot(collage(identity_profunctor(arr())))
    assert '  "D.0" -> "C.1" [label="a", style=dashed] ;' in text
    assert '  "C.0" -> "C.1" [label="C.a"] ;' in text


def test_cone_legs_leave_the_apex(load_fixture):
    wd = load_fixture("kernelpair.wd")
    limit = weighted_limit_in_C(wd)
    text = cone_to_dot(wd, limit.universal_cone)
    assert '  "0*" [label="0*", shape=point] ;' in text
    assert '[label="le @ (1,*)", style=dashed]' in text


def test_output_is_sorted_and_stable():
    edges = [("b", "a", "g", False), ("a", "b", "f", True)]
    one = graph_to_dot(["b", "a"], edges)
    other = graph_to_dot(["a", "b"], list(reversed(edges)))
    assert one == other
    assert one.index('"a" [label') < one.index('"b" [label')
