"""Seeded sweeps that compare independent computations of the same answer."""

import pytest

from catbench.catalog import catalog, random_category, random_set_functor
from catbench.cauchy import (
    cauchy_extension,
    cauchy_point_from_idempotent,
    idempotents,
    inv_left,
    phi_equivalence_check,
    realize_cauchy_point,
    split_as_equalizer,
    split_idempotent,
)
from catbench.elements import find_representation, weighted_colimit_set, weighted_limit_in_C, weighted_limit_set
from catbench.ends import coend_of, copower_bifunctor, end_of, nat_oracle_check, power_bifunctor
from catbench.fincat import Variance, WeightedDiagram, hom_functor, identity_functor, validate_category
from catbench.profunctors import (
    compose_profunctors,
    identity_profunctor,
    profunctor_from_presheaf,
    profunctor_from_set_functor,
    profunctor_iso,
)

CATALOG = catalog()


def _sweep_categories(seeds):
    return [CATALOG[name] for name in sorted(CATALOG)] + [random_category(s) for s in seeds]


@pytest.mark.parametrize("c", _sweep_categories(range(50)), ids=lambda c: c.name)
def test_weighting_by_a_representable_evaluates(c):
    for j in c.objects:
        limit = weighted_limit_in_C(WeightedDiagram(identity_functor(c), hom_functor(c, j)))
        assert limit is not None
        assert c.isomorphic_objects(limit.carrier, j)
        assert c.is_isomorphism(limit.leg(j, c.identities[j]))


@pytest.mark.parametrize("seed", range(200))
def test_weighted_limits_agree_with_ends_of_powers(seed):
    c = random_category(seed)
    d = random_set_functor(c, seed)
    w = random_set_functor(c, seed + 1)
    result = weighted_limit_set(WeightedDiagram(d, w))
    end = end_of(power_bifunctor(w, d))
    assert len(end) == result.size
    assert set(result.extra["end"].values()) == set(end.carrier.elements)
    for t, z in result.extra["end"].items():
        for i, (j, x) in enumerate(result.positions):
            assert z[c.objects.index(j)][w.sets[j].elements.index(x)] == t[i]
            assert result.leg(j, x)(t) == t[i]


@pytest.mark.parametrize("seed", range(200))
def test_weighted_colimits_agree_with_coends_of_copowers(seed):
    c = random_category(seed)
    d = random_set_functor(c, seed)
    w = random_set_functor(c, seed + 2, Variance.CONTRAVARIANT)
    result = weighted_colimit_set(WeightedDiagram(d, w))
    assert len(coend_of(copower_bifunctor(w, d))) == result.size


@pytest.mark.parametrize("seed", range(100))
def test_transformations_agree_with_the_end(seed):
    c = random_category(seed)
    variance = Variance.COVARIANT if seed % 2 == 0 else Variance.CONTRAVARIANT
    f = random_set_functor(c, seed, variance)
    g = random_set_functor(c, seed + 7, variance)
    report = nat_oracle_check(f, g)
    assert report.agree
    for alpha in report.direct:
        alpha.validate()


def _idempotent_cases():
    cases = []
    for c in _sweep_categories(range(20)):
        cases += [pytest.param(e, id=f"{c.name}:{e.morphism}") for e in idempotents(c)]
    return cases


@pytest.mark.parametrize("e", _idempotent_cases())
def test_splitting_criteria_agree(e):
    c = e.base
    pt = cauchy_point_from_idempotent(e)
    ext = cauchy_extension(pt)
    verdicts = {
        "splits": split_idempotent(e) is not None,
        "representable": find_representation(inv_left(e)) is not None,
        "realized": realize_cauchy_point(pt).obj is not None,
        "reached": any(ext.category.isomorphic_objects(a, ext.extra) for a in c.objects),
        "equalizer": split_as_equalizer(e) is not None,
    }
    assert len(set(verdicts.values())) == 1, verdicts
    if e.is_identity:
        assert verdicts["splits"]


@pytest.mark.parametrize(
    "c",
    [CATALOG[name] for name in ("one", "idem", "splitidem", "z2")] + [random_category(s) for s in range(10)],
    ids=lambda c: c.name,
)
def test_idempotents_and_cauchy_points_are_equivalent(c):
    assert phi_equivalence_check(c).ok


@pytest.mark.parametrize("seed", range(20))
def test_profunctor_composition_is_unital_and_associative(seed):
    c = random_category(seed)
    phi = profunctor_from_presheaf(random_set_functor(c, seed, Variance.CONTRAVARIANT))
    psi = profunctor_from_set_functor(random_set_functor(c, seed + 3))
    ident = identity_profunctor(c)
    after_identity = compose_profunctors(phi, ident)
    before_identity = compose_profunctors(ident, psi)
    assert validate_category(c).ok
    assert profunctor_iso(after_identity, phi) is not None
    assert profunctor_iso(before_identity, psi) is not None
    grouped_left = compose_profunctors(after_identity, psi)
    grouped_right = compose_profunctors(phi, before_identity)
    assert profunctor_iso(grouped_left, grouped_right) is not None
