# catbench/kan.py

"""Pointwise Kan extensions along functors between finite categories.

Ran_G D at k is the limit of D weighted by K(k, G-); Lan_G D at k is the
colimit of D weighted by K(G-, k). Set-valued diagrams always have both; for
diagrams into a finite category some columns may be missing, and the result
then records which objects lack the required (co)limit.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Dict, Mapping, Optional, Tuple, Union

from .elements import (
    LimitResult,
    comediating_morphism,
    mediating_morphism,
    weighted_colimit_in_C,
    weighted_colimit_set,
    weighted_limit_in_C,
    weighted_limit_set,
)
from .errors import BaseMismatch, InternalDisagreement, NaturalityError, NoMediator, NonUniqueMediator
from .fincat import (
    Diagram,
    FinFunction,
    FunctorData,
    NatTransformation,
    SetFunctor,
    Variance,
    WeightedCone,
    WeightedDiagram,
    nat_transformations_direct,
)
from .search import Budget, ConstraintSearch, enumerate_functors

logger = logging.getLogger(__name__)

Leg = Union[str, FinFunction]


@dataclass(frozen=True, eq=False)
class KanResult:
    kind: str
    diagram: Diagram
    along: FunctorData
    values: Mapping[str, Optional[LimitResult]]
    weights: Mapping[str, SetFunctor]
    extension: Optional[Union[FunctorData, SetFunctor]]
    # ρ_J: R(GJ) -> D(J) for right extensions, λ_J: D(J) -> L(GJ) for left ones
    unit: Mapping[str, Leg]
    missing: Tuple[str, ...] = ()

    @property
    def total(self) -> bool:
        return not self.missing

    @property
    def set_valued(self) -> bool:
        return isinstance(self.diagram, SetFunctor)

    def diagram_at(self, k: str) -> WeightedDiagram:
        return WeightedDiagram(self.diagram, self.weights[k], f"{self.kind} Kan at {k}")


def right_weight(g: FunctorData, k: str) -> SetFunctor:
    """J ↦ K(k, G J)."""
    target = g.target
    return SetFunctor.build(
        g.source,
        Variance.COVARIANT,
        {j: target.hom(k, g.ob(j)) for j in g.source.objects},
        lambda m, w: target.compose(g.mor(m), w),
        f"{target.label}({k},G-)",
    )


def left_weight(g: FunctorData, k: str) -> SetFunctor:
    """J ↦ K(G J, k)."""
    target = g.target
    return SetFunctor.build(
        g.source,
        Variance.CONTRAVARIANT,
        {j: target.hom(g.ob(j), k) for j in g.source.objects},
        lambda m, w: target.compose(w, g.mor(m)),
        f"{target.label}(G-,{k})",
    )


def _index(d: Diagram):
    return d.base if isinstance(d, SetFunctor) else d.source


def _check_shapes(d: Diagram, g: FunctorData) -> None:
    if _index(d) != g.source:
        raise BaseMismatch("the diagram and the functor it is extended along have different sources", g.label)


def right_kan_pointwise(d: Diagram, g: FunctorData, cap: Optional[int] = None) -> KanResult:
    _check_shapes(d, g)
    k_cat = g.target
    weights = {k: right_weight(g, k) for k in k_cat.objects}
    set_valued = isinstance(d, SetFunctor)
    values: Dict[str, Optional[LimitResult]] = {}
    for k in k_cat.objects:
        wd = WeightedDiagram(d, weights[k])
        values[k] = weighted_limit_set(wd, cap) if set_valued else weighted_limit_in_C(wd, cap)
    missing = tuple(k for k in k_cat.objects if values[k] is None)
    if missing:
        logger.warning(f"right Kan extension along {g.label} is missing at {', '.join(missing)}")
        return KanResult("right", d, g, values, weights, None, {}, missing)

    unit = {j: values[g.ob(j)].leg(j, k_cat.identities[g.ob(j)]) for j in g.source.objects}
    if set_valued:

        def act(h: str, t):
            source = values[k_cat.dom(h)].witness[t]
            target = values[k_cat.cod(h)]
            return target.element_from({(j, w): source[(j, k_cat.compose(w, h))] for j, w in target.positions})

        extension = SetFunctor.build(
            k_cat, Variance.COVARIANT, {k: values[k].carrier.elements for k in k_cat.objects}, act, "Ran"
        )
    else:
        mor_map = {}
        for h in k_cat.morphisms:
            k, k2 = h.dom, h.cod
            legs = {(j, w): values[k].leg(j, k_cat.compose(w, h.name)) for j, w in values[k2].positions}
            cone = WeightedCone(values[k].carrier, legs)
            m = mediating_morphism(WeightedDiagram(d, weights[k2]), values[k2], cone)
            if m is None:
                raise InternalDisagreement(f"no unique mediator for the action of {h.name}", h.name)
            mor_map[h.name] = m
        extension = FunctorData(
            k_cat, d.target, {k: values[k].carrier for k in k_cat.objects}, mor_map, "Ran"
        )
    extension.validate()
    logger.info(f"right Kan extension along {g.label}: total")
    return KanResult("right", d, g, values, weights, extension, unit)


def left_kan_pointwise(d: Diagram, g: FunctorData, cap: Optional[int] = None) -> KanResult:
    _check_shapes(d, g)
    k_cat = g.target
    weights = {k: left_weight(g, k) for k in k_cat.objects}
    set_valued = isinstance(d, SetFunctor)
    values: Dict[str, Optional[LimitResult]] = {}
    for k in k_cat.objects:
        wd = WeightedDiagram(d, weights[k])
        values[k] = weighted_colimit_set(wd, cap) if set_valued else weighted_colimit_in_C(wd, cap)
    missing = tuple(k for k in k_cat.objects if values[k] is None)
    if missing:
        logger.warning(f"left Kan extension along {g.label} is missing at {', '.join(missing)}")
        return KanResult("left", d, g, values, weights, None, {}, missing)

    if set_valued:
        unit = {
            j: FinFunction.build(
                d.sets[j],
                values[g.ob(j)].carrier,
                lambda x, _j=j: values[g.ob(_j)].class_of((_j, k_cat.identities[g.ob(_j)], x)),
            )
            for j in g.source.objects
        }

        def act(h: str, cls):
            j, w, x = cls
            return values[k_cat.cod(h)].class_of((j, k_cat.compose(h, w), x))

        extension = SetFunctor.build(
            k_cat, Variance.COVARIANT, {k: values[k].carrier.elements for k in k_cat.objects}, act, "Lan"
        )
    else:
        unit = {j: values[g.ob(j)].leg(j, k_cat.identities[g.ob(j)]) for j in g.source.objects}
        mor_map = {}
        for h in k_cat.morphisms:
            k, k2 = h.dom, h.cod
            legs = {(j, w): values[k2].leg(j, k_cat.compose(h.name, w)) for j, w in values[k].positions}
            cocone = WeightedCone(values[k2].carrier, legs)
            m = comediating_morphism(WeightedDiagram(d, weights[k]), values[k], cocone)
            if m is None:
                raise InternalDisagreement(f"no unique mediator for the action of {h.name}", h.name)
            mor_map[h.name] = m
        extension = FunctorData(k_cat, d.target, {k: values[k].carrier for k in k_cat.objects}, mor_map, "Lan")
    extension.validate()
    logger.info(f"left Kan extension along {g.label}: total")
    return KanResult("left", d, g, values, weights, extension, unit)


def unit_is_invertible(kan: KanResult) -> bool:
    """Whether every component of ρ (or λ) is an isomorphism."""
    if not kan.total:
        return False
    if kan.set_valued:
        return all(leg.is_bijective() for leg in kan.unit.values())
    c = kan.diagram.target
    return all(c.is_isomorphism(leg) for leg in kan.unit.values())


# ---------------------------------------------------------------------------
# Universal property
# ---------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class KanCompetitor:
    """A functor S on K with φ: S∘G ⇒ D (right) or φ: D ⇒ S∘G (left)."""

    functor: Union[FunctorData, SetFunctor]
    phi: Mapping[str, Leg]


def kan_universal_check(kan: KanResult, competitor: KanCompetitor, cap: Optional[int] = None):
    """The unique mediating transformation ν for a competitor.

    Returns a NatTransformation in the Set-valued case and a mapping
    object -> morphism otherwise. Raises NoMediator or NonUniqueMediator.
    """
    if not kan.total:
        raise NoMediator("the Kan extension is partial", *kan.missing)
    if kan.set_valued:
        return _check_set(kan, competitor, cap)
    return _check_in_c(kan, competitor, cap)


def _check_set(kan: KanResult, competitor: KanCompetitor, cap: Optional[int]) -> NatTransformation:
    s, phi, g, ext = competitor.functor, competitor.phi, kan.along, kan.extension
    k_cat = g.target
    components = {}
    for k in k_cat.objects:
        value = kan.values[k]
        if kan.kind == "right":

            def nu(x, _k=k, _v=value):
                return _v.element_from({(j, w): phi[j](s.act(w, x)) for j, w in _v.positions})

            try:
                components[k] = FinFunction.build(s.sets[k], value.carrier, nu)
            except KeyError:
                raise NoMediator(f"φ does not induce a cone at {k}", k) from None
            if any(y not in value.carrier for y in components[k].mapping.values()):
                raise NoMediator(f"φ does not induce a cone at {k}", k)
        else:
            mapping = {}
            for cls, members in value.witness.items():
                images = {s.act(w, phi[j](x)) for j, w, x in members}
                if len(images) != 1:
                    raise NoMediator(f"φ is not constant on the class of {cls}", cls)
                mapping[cls] = images.pop()
            components[k] = FinFunction(value.carrier, s.sets[k], mapping)
    nu = NatTransformation(s, ext, components) if kan.kind == "right" else NatTransformation(ext, s, components)
    try:
        nu.validate()
    except NaturalityError as e:
        raise NoMediator(f"induced ν is not natural: {e}", *e.witness) from None

    def satisfies(candidate: NatTransformation) -> bool:
        for j in g.source.objects:
            gj = g.ob(j)
            if kan.kind == "right":
                if kan.unit[j].after(candidate.components[gj]) != phi[j]:
                    return False
            elif candidate.components[gj].after(kan.unit[j]) != phi[j]:
                return False
        return True

    if not satisfies(nu):
        raise NoMediator("induced ν does not recover φ")
    pool = nat_transformations_direct(s, ext, cap) if kan.kind == "right" else nat_transformations_direct(ext, s, cap)
    matching = [t for t in pool if satisfies(t)]
    if len(matching) != 1:
        raise NonUniqueMediator(f"{len(matching)} transformations recover φ")
    return nu


def _check_in_c(kan: KanResult, competitor: KanCompetitor, cap: Optional[int]) -> Dict[str, str]:
    s, phi, g, ext = competitor.functor, competitor.phi, kan.along, kan.extension
    k_cat = g.target
    c = ext.target
    nu: Dict[str, str] = {}
    for k in k_cat.objects:
        value = kan.values[k]
        wd = kan.diagram_at(k)
        if kan.kind == "right":
            legs = {(j, w): c.compose(phi[j], s.mor(w)) for j, w in value.positions}
            m = mediating_morphism(wd, value, WeightedCone(s.ob(k), legs))
        else:
            legs = {(j, w): c.compose(s.mor(w), phi[j]) for j, w in value.positions}
            m = comediating_morphism(wd, value, WeightedCone(s.ob(k), legs))
        if m is None:
            raise NoMediator(f"no unique factorization at {k}", k)
        nu[k] = m

    search = ConstraintSearch(
        {
            k: c.hom(s.ob(k), ext.ob(k)) if kan.kind == "right" else c.hom(ext.ob(k), s.ob(k))
            for k in k_cat.objects
        },
        Budget("kan_universal_check", cap),
    )
    for h in k_cat.morphisms:
        if kan.kind == "right":
            check = lambda a, b, _h=h.name: c.compose(ext.mor(_h), a) == c.compose(b, s.mor(_h))
        else:
            check = lambda a, b, _h=h.name: c.compose(s.mor(_h), a) == c.compose(b, ext.mor(_h))
        search.require((h.dom, h.cod), check)
    for j in g.source.objects:
        gj = g.ob(j)
        if kan.kind == "right":
            search.require((gj,), lambda a, _j=j: c.compose(kan.unit[_j], a) == phi[_j])
        else:
            search.require((gj,), lambda a, _j=j: c.compose(a, kan.unit[_j]) == phi[_j])
    solutions = list(search.solutions())
    if not solutions:
        raise NoMediator("no natural family recovers φ")
    if len(solutions) != 1:
        raise NonUniqueMediator(f"{len(solutions)} families recover φ")
    if solutions[0] != nu:
        raise NoMediator("the induced family differs from the unique mediator")
    return nu


@dataclass(frozen=True)
class SweepReport:
    functors: int
    competitors: int


def competitor_families(kan: KanResult, s: FunctorData, cap: Optional[int] = None):
    """Every φ: S∘G ⇒ D (right) or D ⇒ S∘G (left) for a functor S: K -> C."""
    d, g = kan.diagram, kan.along
    c = d.target
    j_cat = g.source
    if kan.kind == "right":
        domains = {j: c.hom(s.ob(g.ob(j)), d.ob(j)) for j in j_cat.objects}
    else:
        domains = {j: c.hom(d.ob(j), s.ob(g.ob(j))) for j in j_cat.objects}
    search = ConstraintSearch(domains, Budget("competitor_families", cap))
    for m in j_cat.morphisms:
        sg = s.mor(g.mor(m.name))
        dm = d.mor(m.name)
        if kan.kind == "right":
            check = lambda a, b, _d=dm, _s=sg: c.compose(_d, a) == c.compose(b, _s)
        else:
            check = lambda a, b, _d=dm, _s=sg: c.compose(_s, a) == c.compose(b, _d)
        search.require((m.dom, m.cod), check)
    return list(search.solutions())


def kan_universal_sweep(kan: KanResult, cap: Optional[int] = None) -> SweepReport:
    """Check the universal property against every functor K -> C and every φ."""
    if kan.set_valued:
        raise BaseMismatch("the exhaustive sweep needs a diagram into a finite category")
    functors = competitors = 0
    for s in enumerate_functors(kan.along.target, kan.diagram.target, cap):
        functors += 1
        for phi in competitor_families(kan, s, cap):
            kan_universal_check(kan, KanCompetitor(s, phi), cap)
            competitors += 1
    logger.info(f"Kan sweep: {functors} functors, {competitors} competitors, all mediated uniquely")
    return SweepReport(functors, competitors)
