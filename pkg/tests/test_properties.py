from hypothesis import given, settings
from hypothesis import strategies as st

from catbench.catalog import random_category
from catbench.cauchy import is_cauchy_complete, karoubi_envelope
from catbench.ends import coend_of, end_of, hom_bifunctor, pairing
from catbench.fincat import Variance, hom_functor, nat_transformations_direct, opposite, validate_category
from catbench.search import is_fully_faithful
from catbench.serialization import parse, serialize


def categories():
    return st.integers(min_value=0, max_value=10_000).map(random_category)


def object_pairs():
    return categories().flatmap(
        lambda c: st.tuples(st.just(c), st.sampled_from(c.objects), st.sampled_from(c.objects))
    )


class TestCategoryLaws:
    @settings(max_examples=50, deadline=None)
    @given(categories())
    def test_random_categories_are_valid(self, c):
        assert validate_category(c).ok

    @settings(max_examples=30, deadline=None)
    @given(categories())
    def test_opposite_is_an_involution(self, c):
        assert validate_category(opposite(c)).ok
        assert opposite(opposite(c)) == c

    @settings(max_examples=30, deadline=None)
    @given(categories())
    def test_canonical_text_rebuilds_the_category(self, c):
        assert parse(serialize(c)) == c


class TestYoneda:
    @settings(max_examples=50, deadline=None)
    @given(object_pairs())
    def test_transformations_between_representables(self, case):
        c, x, y = case
        found = nat_transformations_direct(hom_functor(c, x), hom_functor(c, y))
        assert len(found) == len(c.hom(y, x))

    @settings(max_examples=20, deadline=None)
    @given(object_pairs())
    def test_co_yoneda_pairing(self, case):
        c, a, b = case
        result = pairing(hom_functor(c, a, Variance.CONTRAVARIANT), hom_functor(c, b))
        assert len(result) == len(c.hom(b, a))


class TestEndsAndCoends:
    @settings(max_examples=20, deadline=None)
    @given(categories(), st.integers(min_value=0, max_value=1_000))
    def test_coend_ignores_identification_order(self, c, seed):
        b = hom_bifunctor(c)
        assert coend_of(b, shuffle_seed=seed).classes == coend_of(b).classes

    @settings(max_examples=20, deadline=None)
    @given(categories())
    def test_wedges_of_the_end_are_valid(self, c):
        b = hom_bifunctor(c)
        end_of(b).wedge().check(b)


class TestKaroubi:
    @settings(max_examples=15, deadline=None)
    @given(categories())
    def test_envelope_is_complete_and_contains_the_category(self, c):
        k = karoubi_envelope(c)
        assert validate_category(k.category).ok
        assert is_cauchy_complete(k.category).complete
        assert is_fully_faithful(k.embedding())
