# catbench/elements.py

"""Categories of elements, limits in finite sets and weighted (co)limits.

Set-valued weighted limits are computed twice, as an ordinary limit over the
category of elements and as an end of powers, and the two answers are matched
element by element. Weighted limits in a finite category C are found by
searching for a representing object of the presheaf of weighted cones.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Dict, List, Mapping, Optional, Tuple, Union

from .ends import coend_of, copower_bifunctor, end_of, pairing, power_bifunctor
from .errors import BaseMismatch, InternalDisagreement, InvalidCone
from .fincat import (
    Element,
    FinCategory,
    FinFunction,
    FinSet,
    FunctorData,
    Morphism,
    NatTransformation,
    POINT,
    SetFunctor,
    Variance,
    WeightedCone,
    WeightedDiagram,
    element_key,
    hom_functor,
    precompose,
    render,
    singleton_functor,
    yoneda_transformation,
)
from .search import Budget, ConstraintSearch
from .union_find import DisjointSubsets

logger = logging.getLogger(__name__)

Position = Tuple[str, Element]


@dataclass(frozen=True, eq=False)
class ElementsCategory:
    category: FinCategory
    projection: FunctorData
    # El-object name -> (J, w)
    index: Mapping[str, Position]
    weight: SetFunctor

    def name_of(self, j: str, w: Element) -> str:
        return _element_object(j, w)


def _element_object(j: str, w: Element) -> str:
    return f"({j},{render(w)})"


def category_of_elements(w: SetFunctor, cap: Optional[int] = None) -> ElementsCategory:
    c = w.base
    Budget("category_of_elements", cap).reserve(w.total_size())
    index = {_element_object(j, x): (j, x) for j, x in w.elements()}
    morphisms, comp, mor_index = [], {}, {}
    for g in c.morphisms:
        # covariant: (J, x) -> (K, g_* x); contravariant: (J, g^* u) -> (K, u)
        labels = w.sets[g.dom] if w.covariant else w.sets[g.cod]
        for x in labels:
            if w.covariant:
                src, dst = (g.dom, x), (g.cod, w.act(g.name, x))
            else:
                src, dst = (g.dom, w.act(g.name, x)), (g.cod, x)
            name = f"({g.name},{render(x)})"
            morphisms.append(Morphism(name, _element_object(*src), _element_object(*dst)))
            mor_index[name] = (g.name, x)
    for f_name, (f, x) in mor_index.items():
        for g_name, (g, y) in mor_index.items():
            if c.dom(g) != c.cod(f):
                continue
            if w.covariant and w.act(f, x) == y:
                comp[(g_name, f_name)] = f"({c.compose(g, f)},{render(x)})"
            elif not w.covariant and w.act(g, y) == x:
                comp[(g_name, f_name)] = f"({c.compose(g, f)},{render(y)})"
    identities = {_element_object(j, x): f"({c.identities[j]},{render(x)})" for j, x in w.elements()}
    category = FinCategory.build(index, morphisms, identities, comp, f"El({w.label})")
    projection = FunctorData(
        category,
        c,
        {name: jx[0] for name, jx in index.items()},
        {name: gx[0] for name, gx in mor_index.items()},
        "projection",
    )
    return ElementsCategory(category, projection, index, w)


@dataclass(frozen=True, eq=False)
class LimitResult:
    """A limit or colimit with its universal (co)cone.

    For Set-valued limits the carrier elements are tuples aligned with
    `positions`; for colimits they are class names (least members) and
    `witness` lists each class's members. In a general category the carrier is
    an object name.
    """

    carrier: Union[FinSet, str]
    universal_cone: WeightedCone
    witness: Mapping[Element, object]
    positions: Tuple[Position, ...] = ()
    extra: Mapping[str, object] = field(default_factory=dict)

    def element_from(self, values: Mapping[Position, Element]) -> Tuple:
        return tuple(values[p] for p in self.positions)

    def class_of(self, member: Element) -> Element:
        lookup = self.extra.get("lookup")
        if lookup is None:
            lookup = {m: name for name, members in self.witness.items() for m in members}
            self.extra["lookup"] = lookup
        return lookup[member]

    def leg(self, j: str, w: Element = POINT):
        return self.universal_cone.legs[(j, w)]

    @property
    def size(self) -> int:
        return len(self.carrier) if isinstance(self.carrier, FinSet) else 1


def _as_covariant(d: SetFunctor) -> SetFunctor:
    return d if d.covariant else d.opposite_view()


def limit_set(d: SetFunctor, cap: Optional[int] = None) -> LimitResult:
    """The set of compatible tuples over a diagram of finite sets."""
    d = _as_covariant(d)
    base = d.base
    search = ConstraintSearch({j: d.sets[j].elements for j in base.objects}, Budget("limit_set", cap))
    for g in base.morphisms:
        if base.is_identity(g.name):
            continue
        search.require((g.dom, g.cod), lambda x, y, _f=d.actions[g.name]: _f(x) == y)
    tuples = [tuple(s[j] for j in base.objects) for s in search.solutions()]
    carrier = FinSet.of(tuples, "limit")
    positions = tuple((j, POINT) for j in base.objects)
    legs = {(j, POINT): FinFunction.build(carrier, d.sets[j], lambda t, _i=i: t[_i]) for i, j in enumerate(base.objects)}
    witness = {t: dict(zip(base.objects, t)) for t in carrier}
    return LimitResult(carrier, WeightedCone(carrier, legs), witness, positions)


def colimit_set(d: SetFunctor, cap: Optional[int] = None) -> LimitResult:
    """The disjoint union of a diagram of finite sets modulo x ~ D(g)x."""
    d = _as_covariant(d)
    base = d.base
    budget = Budget("colimit_set", cap)
    budget.reserve(d.total_size())
    uf = DisjointSubsets(d.elements())
    for g in base.morphisms:
        for x in d.sets[g.dom]:
            budget.tick()
            uf.unify((g.dom, x), (g.cod, d.act(g.name, x)))
    classes = uf.classes(element_key)
    carrier = FinSet(tuple(classes), "colimit")
    lookup = {m: name for name, members in classes.items() for m in members}
    legs = {(j, POINT): FinFunction.build(d.sets[j], carrier, lambda x, _j=j: lookup[(_j, x)]) for j in base.objects}
    return LimitResult(carrier, WeightedCone(carrier, legs), classes, tuple((j, POINT) for j in base.objects), {"lookup": lookup})


# ---------------------------------------------------------------------------
# Weighted limits of Set-valued diagrams
# ---------------------------------------------------------------------------


def _check_set_valued(wd: WeightedDiagram, weight_variance: Variance) -> SetFunctor:
    if not wd.set_valued:
        raise BaseMismatch("expected a Set-valued diagram", wd.name)
    if wd.weight.variance is not weight_variance:
        raise BaseMismatch(f"expected a {weight_variance.value} weight", wd.weight.label)
    if wd.weight.base != wd.diagram.base:
        raise BaseMismatch("weight base differs from the diagram source", wd.weight.label)
    return wd.diagram


def weighted_limit_set(wd: WeightedDiagram, cap: Optional[int] = None) -> LimitResult:
    """lim^W D, via the category of elements, cross-checked against ∫_J D(J)^{W(J)}."""
    d = _check_set_valued(wd, Variance.COVARIANT)
    w = wd.weight
    el = category_of_elements(w, cap)
    ordinary = limit_set(precompose(d, el.projection), cap)
    names = el.category.objects
    positions = tuple(el.index[n] for n in names)

    end = end_of(power_bifunctor(w, d, cap), cap)
    objects = w.base.objects
    slot = {j: i for i, j in enumerate(objects)}
    label_index = {j: {x: i for i, x in enumerate(w.sets[j])} for j in objects}
    from_end = {}
    for z in end.carrier:
        t = tuple(z[slot[j]][label_index[j][x]] for j, x in positions)
        from_end[t] = z
    if set(from_end) != set(ordinary.carrier.elements) or len(from_end) != len(end.carrier):
        raise InternalDisagreement(
            f"weighted limit: {len(ordinary.carrier)} elements via El(W), {len(end.carrier)} via the end"
        )
    carrier = ordinary.carrier
    legs = {
        positions[i]: FinFunction.build(carrier, d.sets[positions[i][0]], lambda t, _i=i: t[_i])
        for i in range(len(positions))
    }
    witness = {t: dict(zip(positions, t)) for t in carrier}
    logger.debug(f"weighted limit of {d.label} by {w.label}: {len(carrier)} elements")
    return LimitResult(carrier, WeightedCone(carrier, legs), witness, positions, {"end": from_end})


def weighted_colimit_set(wd: WeightedDiagram, cap: Optional[int] = None) -> LimitResult:
    """colim^W D, via the category of elements, cross-checked against ∫^J W(J) × D(J)."""
    d = _check_set_valued(wd, Variance.CONTRAVARIANT)
    w = wd.weight
    el = category_of_elements(w, cap)
    ordinary = colimit_set(precompose(d, el.projection), cap)
    coend = coend_of(copower_bifunctor(w, d), cap)

    groups = []
    for members in ordinary.witness.values():
        groups.append(sorted(((el.index[n][0], el.index[n][1], x) for n, x in members), key=element_key))
    via_coend = sorted(
        (sorted(((j, wx[0], wx[1]) for j, wx in members), key=element_key) for members in coend.classes.values()),
        key=lambda g: element_key(g[0]),
    )
    groups.sort(key=lambda g: element_key(g[0]))
    if groups != via_coend:
        raise InternalDisagreement(
            f"weighted colimit: {len(groups)} classes via El(W), {len(via_coend)} via the coend"
        )
    classes = {g[0]: tuple(g) for g in groups}
    carrier = FinSet(tuple(classes), "colimit")
    lookup = {m: name for name, members in classes.items() for m in members}
    positions = tuple((j, x) for j, x in w.elements())
    legs = {
        (j, x): FinFunction.build(d.sets[j], carrier, lambda y, _j=j, _x=x: lookup[(_j, _x, y)]) for j, x in positions
    }
    return LimitResult(carrier, WeightedCone(carrier, legs), classes, positions, {"lookup": lookup})


# ---------------------------------------------------------------------------
# Weighted limits in a finite category
# ---------------------------------------------------------------------------


def _check_in_c(wd: WeightedDiagram, weight_variance: Variance) -> FunctorData:
    if wd.set_valued:
        raise BaseMismatch("expected a diagram into a finite category", wd.name)
    if wd.weight.variance is not weight_variance:
        raise BaseMismatch(f"expected a {weight_variance.value} weight", wd.weight.label)
    if wd.weight.base != wd.diagram.source:
        raise BaseMismatch("weight base differs from the diagram source", wd.weight.label)
    return wd.diagram


def _cone_search(wd: WeightedDiagram, tip: str, budget: Budget, cocone: bool) -> ConstraintSearch:
    d, w = wd.diagram, wd.weight
    c, j_cat = d.target, d.source
    positions = wd.positions()
    if cocone:
        domains = {p: c.hom(d.ob(p[0]), tip) for p in positions}
    else:
        domains = {p: c.hom(tip, d.ob(p[0])) for p in positions}
    search = ConstraintSearch(domains, budget, order=list(positions))
    for g in j_cat.morphisms:
        if j_cat.is_identity(g.name):
            continue
        dg = d.mor(g.name)
        if not cocone:
            for x in w.sets[g.dom]:
                search.require(
                    ((g.dom, x), (g.cod, w.act(g.name, x))),
                    lambda leg, moved, _dg=dg: c.compose(_dg, leg) == moved,
                )
        else:
            # leg(J, W(g)u) = leg(K, u) ∘ D(g) for g: J -> K and u ∈ W(K)
            for u in w.sets[g.cod]:
                search.require(
                    ((g.dom, w.act(g.name, u)), (g.cod, u)),
                    lambda leg_j, leg_k, _dg=dg: leg_j == c.compose(leg_k, _dg),
                )
    return search


def _cones_at(wd: WeightedDiagram, tip: str, budget: Budget, cocone: bool) -> List[Tuple[str, ...]]:
    positions = wd.positions()
    return [tuple(s[p] for p in positions) for s in _cone_search(wd, tip, budget, cocone).solutions()]


def cone_presheaf(wd: WeightedDiagram, cap: Optional[int] = None) -> SetFunctor:
    """A ↦ W-weighted cones over D with tip A, legs tupled in position order."""
    d = _check_in_c(wd, Variance.COVARIANT)
    c = d.target
    budget = Budget("cone_presheaf", cap)
    cones = {a: _cones_at(wd, a, budget, cocone=False) for a in c.objects}
    return SetFunctor.build(
        c,
        Variance.CONTRAVARIANT,
        cones,
        lambda h, legs: tuple(c.compose(leg, h) for leg in legs),
        f"Cone^{wd.weight.label}",
    )


def cocone_functor(wd: WeightedDiagram, cap: Optional[int] = None) -> SetFunctor:
    """A ↦ W-weighted cocones under D with nadir A (W contravariant)."""
    d = _check_in_c(wd, Variance.CONTRAVARIANT)
    c = d.target
    budget = Budget("cocone_functor", cap)
    cocones = {a: _cones_at(wd, a, budget, cocone=True) for a in c.objects}
    return SetFunctor.build(
        c,
        Variance.COVARIANT,
        cocones,
        lambda h, legs: tuple(c.compose(h, leg) for leg in legs),
        f"Cocone^{wd.weight.label}",
    )


@dataclass(frozen=True, eq=False)
class Representation:
    obj: str
    element: Element
    iso: NatTransformation


def find_representation(s: SetFunctor) -> Optional[Representation]:
    """The canonically least (R, s ∈ S(R)) whose Yoneda transformation is invertible."""
    c = s.base
    for r in c.objects:
        if any(len(s.sets[a]) != len(c.hom(r, a) if s.covariant else c.hom(a, r)) for a in c.objects):
            continue
        for x in s.sets[r]:
            alpha = yoneda_transformation(s, r, x)
            if alpha.is_isomorphism():
                logger.debug(f"{s.label} is represented by {r} via {render(x)}")
                return Representation(r, x, alpha)
    logger.debug(f"{s.label} is not representable")
    return None


def _cone(wd: WeightedDiagram, tip: str, legs: Tuple[str, ...]) -> WeightedCone:
    return WeightedCone(tip, dict(zip(wd.positions(), legs)))


def weighted_limit_in_C(wd: WeightedDiagram, cap: Optional[int] = None) -> Optional[LimitResult]:
    """The representing object of the cone presheaf, with its universal cone, or None."""
    presheaf = cone_presheaf(wd, cap)
    rep = find_representation(presheaf)
    if rep is None:
        logger.info(f"no {wd.weight.label}-weighted limit of {wd.diagram.label}")
        return None
    cone = _cone(wd, rep.obj, rep.element)
    if not is_terminal_cone(wd, cone, cap, presheaf):
        raise InternalDisagreement(f"representing cone at {rep.obj} is not terminal", rep.obj)
    return LimitResult(rep.obj, cone, {}, wd.positions(), {"representation": rep})


def weighted_colimit_in_C(wd: WeightedDiagram, cap: Optional[int] = None) -> Optional[LimitResult]:
    functor = cocone_functor(wd, cap)
    rep = find_representation(functor)
    if rep is None:
        logger.info(f"no {wd.weight.label}-weighted colimit of {wd.diagram.label}")
        return None
    cocone = _cone(wd, rep.obj, rep.element)
    if not is_initial_cocone(wd, cocone, cap, functor):
        raise InternalDisagreement(f"representing cocone at {rep.obj} is not initial", rep.obj)
    return LimitResult(rep.obj, cocone, {}, wd.positions(), {"representation": rep})


def _legs(wd: WeightedDiagram, cone: WeightedCone) -> Tuple[str, ...]:
    return tuple(cone.legs[p] for p in wd.positions())


def is_terminal_cone(
    wd: WeightedDiagram, cone: WeightedCone, cap: Optional[int] = None, presheaf: Optional[SetFunctor] = None
) -> bool:
    """Every cone over every tip factors through `cone` exactly once."""
    presheaf = presheaf or cone_presheaf(wd, cap)
    c = presheaf.base
    legs = _legs(wd, cone)
    if legs not in presheaf.sets[cone.tip]:
        raise InvalidCone(f"the given legs do not form a cone at {cone.tip}", cone.tip)
    for a in c.objects:
        hits: Dict[Tuple, int] = {}
        for h in c.hom(a, cone.tip):
            moved = presheaf.act(h, legs)
            hits[moved] = hits.get(moved, 0) + 1
        if any(hits.get(other, 0) != 1 for other in presheaf.sets[a]):
            return False
    return True


def is_initial_cocone(
    wd: WeightedDiagram, cocone: WeightedCone, cap: Optional[int] = None, functor: Optional[SetFunctor] = None
) -> bool:
    functor = functor or cocone_functor(wd, cap)
    c = functor.base
    legs = _legs(wd, cocone)
    if legs not in functor.sets[cocone.tip]:
        raise InvalidCone(f"the given legs do not form a cocone at {cocone.tip}", cocone.tip)
    for a in c.objects:
        hits: Dict[Tuple, int] = {}
        for h in c.hom(cocone.tip, a):
            moved = functor.act(h, legs)
            hits[moved] = hits.get(moved, 0) + 1
        if any(hits.get(other, 0) != 1 for other in functor.sets[a]):
            return False
    return True


def mediating_morphism(wd: WeightedDiagram, limit: LimitResult, cone: WeightedCone) -> Optional[str]:
    """The unique h: tip -> L with leg_L ∘ h = leg, or None when there is not exactly one."""
    d = wd.diagram
    c = d.target
    found = []
    for h in c.hom(cone.tip, limit.carrier):
        if all(c.compose(limit.universal_cone.legs[p], h) == cone.legs[p] for p in wd.positions()):
            found.append(h)
    return found[0] if len(found) == 1 else None


def comediating_morphism(wd: WeightedDiagram, colimit: LimitResult, cocone: WeightedCone) -> Optional[str]:
    c = wd.diagram.target
    found = []
    for h in c.hom(colimit.carrier, cocone.tip):
        if all(c.compose(h, colimit.universal_cone.legs[p]) == cocone.legs[p] for p in wd.positions()):
            found.append(h)
    return found[0] if len(found) == 1 else None


def weight_transformation_action(
    wd: WeightedDiagram, alpha: NatTransformation, cone: WeightedCone
) -> WeightedCone:
    """Restrict a W-weighted cone along α: W' ⇒ W to a W'-weighted cone."""
    if alpha.target.base != wd.weight.base or alpha.target != wd.weight:
        raise BaseMismatch("transformation does not end at the weight", alpha.target.label)
    source = alpha.source
    legs = {(j, x): cone.legs[(j, alpha(j, x))] for j, x in source.elements()}
    return WeightedCone(cone.tip, legs)


# ---------------------------------------------------------------------------
# Pushing weights forward along a diagram
# ---------------------------------------------------------------------------


def hom_presheaf_along(d: FunctorData, x: str) -> SetFunctor:
    """J ↦ C(D J, X), contravariant on J."""
    c = d.target
    return SetFunctor.build(
        d.source,
        Variance.CONTRAVARIANT,
        {j: c.hom(d.ob(j), x) for j in d.source.objects},
        lambda g, p: c.compose(p, d.mor(g)),
        f"{c.label}(D-,{x})",
    )


def hom_functor_along(d: FunctorData, a: str) -> SetFunctor:
    """J ↦ C(A, D J), covariant on J."""
    c = d.target
    return SetFunctor.build(
        d.source,
        Variance.COVARIANT,
        {j: c.hom(a, d.ob(j)) for j in d.source.objects},
        lambda g, f: c.compose(d.mor(g), f),
        f"{c.label}({a},D-)",
    )


@dataclass(frozen=True, eq=False)
class HomPreservationReport:
    agree: bool
    obj: str
    # C(A, L) -> lim^W C(A, D-)
    bijection: Optional[Mapping[str, Tuple]]


def hom_preservation_check(
    wd: WeightedDiagram, limit: LimitResult, a: str, cap: Optional[int] = None
) -> HomPreservationReport:
    """Check that C(A, -) sends the limit to lim^W C(A, D-), composing with the universal legs."""
    d = _check_in_c(wd, Variance.COVARIANT)
    c = d.target
    in_set = weighted_limit_set(WeightedDiagram(hom_functor_along(d, a), wd.weight), cap)
    positions = wd.positions()
    image = {
        h: in_set.element_from({p: c.compose(limit.universal_cone.legs[p], h) for p in positions})
        for h in c.hom(a, limit.carrier)
    }
    agree = len(set(image.values())) == len(image) and set(image.values()) == set(in_set.carrier.elements)
    if not agree:
        logger.warning(f"{c.label}({a},-) does not preserve the limit at {limit.carrier}")
    return HomPreservationReport(agree, a, image if agree else None)


def pushforward_weight(d: FunctorData, w: SetFunctor, cap: Optional[int] = None) -> SetFunctor:
    """X ↦ ∫^J W(J) × C(D J, X): the weight on C whose limit of G equals lim^W (G ∘ D)."""
    c = d.target
    pairings = {x: pairing(hom_presheaf_along(d, x), w, cap) for x in c.objects}
    sets = {x: pairings[x].carrier.elements for x in c.objects}

    def act(h: str, cls):
        j, p, u = cls
        return pairings[c.cod(h)].class_of((j, c.compose(h, p), u))

    return SetFunctor.build(c, Variance.COVARIANT, sets, act, f"{w.label}_*")


@dataclass(frozen=True, eq=False)
class DecompositionReport:
    agree: bool
    direct: LimitResult
    pushed: LimitResult
    bijection: Optional[Mapping[Tuple, Tuple]]


def limit_decompose_check(
    d: FunctorData, g: SetFunctor, w: SetFunctor, cap: Optional[int] = None
) -> DecompositionReport:
    """Compare lim^W (G ∘ D) with lim^{W_*} G for the pushed-forward weight W_*."""
    direct = weighted_limit_set(WeightedDiagram(precompose(g, d), w), cap)
    pushed_weight = pushforward_weight(d, w, cap)
    pushed = weighted_limit_set(WeightedDiagram(g, pushed_weight), cap)
    bijection = {}
    for t in direct.carrier:
        values = direct.witness[t]
        image = {}
        for x, cls in pushed.positions:
            j, p, u = cls
            image[(x, cls)] = g.act(p, values[(j, u)])
        bijection[t] = pushed.element_from(image)
    agree = len(set(bijection.values())) == len(bijection) and set(bijection.values()) == set(pushed.carrier.elements)
    if not agree:
        logger.warning(f"limit decomposition disagrees: {len(direct.carrier)} vs {len(pushed.carrier)}")
    return DecompositionReport(agree, direct, pushed, bijection if agree else None)


def unit_weight(j: FinCategory, variance: Variance = Variance.COVARIANT) -> SetFunctor:
    return singleton_functor(j, variance)


def representable_weight(j: FinCategory, obj: str, variance: Variance = Variance.COVARIANT) -> SetFunctor:
    return hom_functor(j, obj, variance)
