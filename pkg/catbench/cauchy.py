# catbench/cauchy.py

"""Idempotents, the Karoubi envelope, Cauchy points and absolute limits.

A Cauchy point is a functor F, a presheaf P, a composition
c_{A,B}: P(A) × F(B) -> C(A,B) and a distinguished class i of the pairing
⟨P,F⟩. Points built from an idempotent e: X -> X use the e-invariant parts of
the representables and ordinary composition. The extension category C' adds
one object E with hom(E,A) = F(A), hom(A,E) = P(A) and hom(E,E) = ⟨P,F⟩.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Mapping, Optional, Tuple

from .elements import (
    LimitResult,
    find_representation,
    hom_functor_along,
    hom_presheaf_along,
    is_terminal_cone,
    weighted_limit_in_C,
)
from .ends import CoendResult, pairing
from .errors import InternalDisagreement, ValidationFailed
from .fincat import (
    Element,
    Extension,
    FinCategory,
    FinFunction,
    FunctorData,
    Morphism,
    NatTransformation,
    SetFunctor,
    Variance,
    WeightedCone,
    WeightedDiagram,
    compose_functors,
    fresh_object,
    hom_functor,
    nat_transformations_direct,
    singleton_functor,
    validate_category,
    virtual_name,
    yoneda_transformation,
)
from .search import Budget, enumerate_functors

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Idempotent:
    base: FinCategory = field(compare=False, repr=False)
    obj: str
    morphism: str

    def validate(self) -> None:
        c = self.base
        if c.dom(self.morphism) != self.obj or c.cod(self.morphism) != self.obj:
            raise ValidationFailed("idempotent", self.morphism, detail=f"not an endomorphism of {self.obj}")
        if c.compose(self.morphism, self.morphism) != self.morphism:
            raise ValidationFailed("idempotent", self.morphism, detail="e ∘ e differs from e")

    @property
    def is_identity(self) -> bool:
        return self.base.identities[self.obj] == self.morphism


def idempotent(c: FinCategory, morphism: str) -> Idempotent:
    e = Idempotent(c, c.dom(morphism), morphism)
    e.validate()
    return e


def idempotents(c: FinCategory) -> List[Idempotent]:
    return [
        Idempotent(c, x, m) for x in c.objects for m in c.endomorphisms(x) if c.compose(m, m) == m
    ]


@dataclass(frozen=True)
class Splitting:
    through: str
    section: str
    retraction: str


def split_idempotent(e: Idempotent) -> Optional[Splitting]:
    """The canonically least (E, ι, π) with π∘ι = id_E and ι∘π = e."""
    c = e.base
    for obj in c.objects:
        for section in c.hom(obj, e.obj):
            for retraction in c.hom(e.obj, obj):
                if c.compose(retraction, section) == c.identities[obj] and c.compose(section, retraction) == e.morphism:
                    return Splitting(obj, section, retraction)
    logger.debug(f"{e.morphism} does not split")
    return None


def inv_right(e: Idempotent) -> SetFunctor:
    """A ↦ {f: X -> A | f ∘ e = f}."""
    c = e.base
    return SetFunctor.build(
        c,
        Variance.COVARIANT,
        {a: [f for f in c.hom(e.obj, a) if c.compose(f, e.morphism) == f] for a in c.objects},
        lambda g, f: c.compose(g, f),
        f"Inv_R({e.morphism})",
    )


def inv_left(e: Idempotent) -> SetFunctor:
    """A ↦ {p: A -> X | e ∘ p = p}."""
    c = e.base
    return SetFunctor.build(
        c,
        Variance.CONTRAVARIANT,
        {a: [p for p in c.hom(a, e.obj) if c.compose(e.morphism, p) == p] for a in c.objects},
        lambda g, p: c.compose(p, g),
        f"Inv_L({e.morphism})",
    )


def split_as_equalizer(e: Idempotent, cap: Optional[int] = None) -> Optional[LimitResult]:
    """The equalizer of e and id_X, which exists exactly when e splits."""
    from .catalog import parpair

    c = e.base
    shape = parpair()
    diagram = FunctorData(
        shape,
        c,
        {"0": e.obj, "1": e.obj},
        {"u": e.morphism, "v": c.identities[e.obj], "id_0": c.identities[e.obj], "id_1": c.identities[e.obj]},
        f"({e.morphism}, id)",
    )
    return weighted_limit_in_C(WeightedDiagram(diagram, singleton_functor(shape)), cap)


# ---------------------------------------------------------------------------
# Karoubi envelope
# ---------------------------------------------------------------------------


def _karoubi_object(e: Idempotent) -> str:
    return f"({e.obj},{e.morphism})"


def _karoubi_morphism(target: str, g: str, source: str) -> str:
    return f"[{target}|{g}|{source}]"


@dataclass(frozen=True, eq=False)
class KaroubiCategory:
    category: FinCategory
    base: FinCategory
    # K-object -> idempotent, K-morphism -> underlying morphism of the base
    objects: Mapping[str, Idempotent]
    underlying: Mapping[str, str]

    def object_of(self, e: Idempotent) -> str:
        return _karoubi_object(e)

    def morphism(self, target: Idempotent, g: str, source: Idempotent) -> str:
        return _karoubi_morphism(target.morphism, g, source.morphism)

    def embedding(self) -> FunctorData:
        c = self.base
        ids = c.identities
        return FunctorData(
            c,
            self.category,
            {x: _karoubi_object(Idempotent(c, x, ids[x])) for x in c.objects},
            {m.name: _karoubi_morphism(ids[m.cod], m.name, ids[m.dom]) for m in c.morphisms},
            "embedding",
        )

    def isomorphic(self, a: str, b: str) -> bool:
        """Whether two idempotents are isomorphic as objects of the envelope."""
        return self.category.isomorphic_objects(a, b)


def karoubi_envelope(c: FinCategory, cap: Optional[int] = None) -> KaroubiCategory:
    budget = Budget("karoubi_envelope", cap)
    idems = idempotents(c)
    objects = {_karoubi_object(e): e for e in idems}
    morphisms, underlying = [], {}
    homs: Dict[Tuple[str, str], List[str]] = {}
    for src in idems:
        for tgt in idems:
            for g in c.hom(src.obj, tgt.obj):
                budget.tick()
                if c.compose_path(tgt.morphism, g, src.morphism) != g:
                    continue
                name = _karoubi_morphism(tgt.morphism, g, src.morphism)
                morphisms.append(Morphism(name, _karoubi_object(src), _karoubi_object(tgt)))
                underlying[name] = g
                homs.setdefault((_karoubi_object(src), _karoubi_object(tgt)), []).append(name)
    comp = {}
    for (a, b), fs in homs.items():
        for b2 in objects:
            for g in homs.get((b, b2), []):
                for f in fs:
                    budget.tick()
                    comp[(g, f)] = _karoubi_morphism(
                        objects[b2].morphism, c.compose(underlying[g], underlying[f]), objects[a].morphism
                    )
    identities = {name: _karoubi_morphism(e.morphism, e.morphism, e.morphism) for name, e in objects.items()}
    category = FinCategory.build(objects, morphisms, identities, comp, f"K({c.label})")
    logger.info(f"Karoubi envelope of {c.label}: {category.summary()}")
    return KaroubiCategory(category, c, objects, underlying)


@dataclass(frozen=True)
class CompletenessReport:
    complete: bool
    unsplit: Tuple[Idempotent, ...]


def is_cauchy_complete(c: FinCategory) -> CompletenessReport:
    unsplit = tuple(e for e in idempotents(c) if split_idempotent(e) is None)
    return CompletenessReport(not unsplit, unsplit)


# ---------------------------------------------------------------------------
# Cauchy points
# ---------------------------------------------------------------------------

Composer = Callable[[str, str, Element, Element], str]


@dataclass(frozen=True, eq=False)
class CauchyPoint:
    functor: SetFunctor
    presheaf: SetFunctor
    classes: CoendResult
    representative: Tuple[str, Element, Element]
    c: Composer
    name: str = ""

    @property
    def base(self) -> FinCategory:
        return self.functor.base

    @property
    def identity_class(self) -> Element:
        return self.classes.class_of(self.representative)

    def compose(self, a: str, b: str, p: Element, f: Element) -> str:
        """c_{A,B}(p, f): A -> B for p ∈ P(A), f ∈ F(B)."""
        return self.c(a, b, p, f)

    def validate(self) -> None:
        base = self.base
        f_, p_ = self.functor, self.presheaf
        for a in base.objects:
            for b in base.objects:
                for p in p_.sets[a]:
                    for f in f_.sets[b]:
                        m = self.c(a, b, p, f)
                        if base.dom(m) != a or base.cod(m) != b:
                            raise ValidationFailed("composition type", a, b, p, f)
                        for g in base.hom_into(a):
                            if self.c(base.dom(g), b, p_.act(g, p), f) != base.compose(m, g):
                                raise ValidationFailed("naturality in A", g, p, f)
                        for h in base.hom_from(b):
                            if self.c(a, base.cod(h), p, f_.act(h, f)) != base.compose(h, m):
                                raise ValidationFailed("naturality in B", h, p, f)
        for x, pi, iota in self.classes.members(self.identity_class):
            for a in base.objects:
                for f in f_.sets[a]:
                    if f_.act(self.c(x, a, pi, f), iota) != f:
                        raise ValidationFailed("identity condition", x, pi, iota, f)
                for p in p_.sets[a]:
                    if p_.act(self.c(a, x, p, iota), pi) != p:
                        raise ValidationFailed("identity condition", x, pi, iota, p)


def cauchy_point_from_idempotent(e: Idempotent, cap: Optional[int] = None) -> CauchyPoint:
    c = e.base
    f, p = inv_right(e), inv_left(e)
    point = CauchyPoint(
        f,
        p,
        pairing(p, f, cap),
        (e.obj, e.morphism, e.morphism),
        lambda _a, _b, pa, fb: c.compose(fb, pa),
        f"point({e.morphism})",
    )
    point.validate()
    return point


def cauchy_extension(pt: CauchyPoint, cap: Optional[int] = None) -> Extension:
    """C plus a virtual object E carrying F, P and ⟨P,F⟩."""
    c, f_, p_ = pt.base, pt.functor, pt.presheaf
    budget = Budget("cauchy_extension", cap)
    e = fresh_object(c)
    virtual: Dict[str, Tuple[str, str, Element]] = {}

    def out_arrow(a: str, f: Element) -> str:
        return virtual_name(e, a, f)

    def in_arrow(a: str, p: Element) -> str:
        return virtual_name(a, e, p)

    def loop(cls: Element) -> str:
        return virtual_name(e, e, cls)

    morphisms = list(c.morphisms)
    for a, f in f_.elements():
        virtual[out_arrow(a, f)] = (e, a, f)
        morphisms.append(Morphism(out_arrow(a, f), e, a))
    for a, p in p_.elements():
        virtual[in_arrow(a, p)] = (a, e, p)
        morphisms.append(Morphism(in_arrow(a, p), a, e))
    for cls in pt.classes.carrier:
        virtual[loop(cls)] = (e, e, cls)
        morphisms.append(Morphism(loop(cls), e, e))
    budget.reserve(len(morphisms) ** 2)

    classes = pt.classes
    comp = dict(c.comp)
    for a, f in f_.elements():
        for g in c.hom_from(a):
            comp[(g, out_arrow(a, f))] = out_arrow(c.cod(g), f_.act(g, f))
        for cls in classes.carrier:
            # f ∘ [A', p', f'] = F(c(p', f)) f'
            a2, p2, f2 = cls
            comp[(out_arrow(a, f), loop(cls))] = out_arrow(a, f_.act(pt.compose(a2, a, p2, f), f2))
        for b, p in p_.elements():
            if b == a:
                comp[(in_arrow(b, p), out_arrow(a, f))] = loop(classes.class_of((a, p, f)))
    for a, p in p_.elements():
        for g in c.hom_into(a):
            comp[(in_arrow(a, p), g)] = in_arrow(c.dom(g), p_.act(g, p))
        for b, f in f_.elements():
            comp[(out_arrow(b, f), in_arrow(a, p))] = pt.compose(a, b, p, f)
        for cls in classes.carrier:
            # [A', p', f'] ∘ p = P(c(p, f')) p'
            a2, p2, f2 = cls
            comp[(loop(cls), in_arrow(a, p))] = in_arrow(a, p_.act(pt.compose(a, a2, p, f2), p2))
    for outer in classes.carrier:
        for inner in classes.carrier:
            # [A', p', f'] ∘ [A, p, f] = [A, P(c(p, f')) p', f]
            a2, p2, f2 = outer
            a1, p1, f1 = inner
            moved = p_.act(pt.compose(a1, a2, p1, f2), p2)
            comp[(loop(outer), loop(inner))] = loop(classes.class_of((a1, moved, f1)))
    identities = dict(c.identities)
    identities[e] = loop(pt.identity_class)
    category = FinCategory.build(c.objects + (e,), morphisms, identities, comp, f"{c.label}+{pt.name}")
    report = validate_category(category)
    if not report.ok:
        raise ValidationFailed(report.law, *report.witness, detail="Cauchy extension")
    logger.debug(f"Cauchy extension of {c.label}: {category.summary()}")
    return Extension(category, c, e, virtual)


@dataclass(frozen=True, eq=False)
class Realization:
    obj: Optional[str]
    via_functor: Optional[str]
    via_presheaf: Optional[str]
    via_inclusion: Optional[str]
    via_representative: Optional[Tuple[str, Element, Element]]


def realize_cauchy_point(pt: CauchyPoint, cap: Optional[int] = None) -> Realization:
    """Find an object of C standing for the point; all criteria must agree."""
    c = pt.base
    rep_f = find_representation(pt.functor)
    rep_p = find_representation(pt.presheaf)
    ext = cauchy_extension(pt, cap)
    via_inclusion = next((a for a in c.objects if ext.category.isomorphic_objects(a, ext.extra)), None)
    via_representative = next(
        (m for m in pt.classes.members(pt.identity_class) if pt.compose(m[0], m[0], m[1], m[2]) == c.identities[m[0]]),
        None,
    )
    verdicts = {
        "functor": rep_f is not None,
        "presheaf": rep_p is not None,
        "inclusion": via_inclusion is not None,
        "representative": via_representative is not None,
    }
    if len(set(verdicts.values())) != 1:
        logger.error(f"realization criteria disagree for {pt.name}: {verdicts}")
        raise InternalDisagreement(f"realization criteria disagree: {verdicts}", pt.name)
    if rep_f is not None and not c.isomorphic_objects(rep_f.obj, rep_p.obj):
        raise InternalDisagreement("F and P are represented by non-isomorphic objects", rep_f.obj, rep_p.obj)
    return Realization(
        rep_f.obj if rep_f else None,
        rep_f.obj if rep_f else None,
        rep_p.obj if rep_p else None,
        via_inclusion,
        via_representative,
    )


@dataclass(frozen=True, eq=False)
class RetractWitness:
    obj: str
    element: Element
    section: NatTransformation
    retraction: NatTransformation
    idempotent: Idempotent


def retract_of_representable(s: SetFunctor, cap: Optional[int] = None) -> Optional[RetractWitness]:
    """The canonically least way to exhibit S as a retract of a representable."""
    c = s.base
    identity = NatTransformation.identity(s)
    for x in c.objects:
        if not s.sets[x]:
            continue
        sections = nat_transformations_direct(s, hom_functor(c, x, s.variance), cap)
        for element in s.sets[x]:
            retraction = yoneda_transformation(s, x, element)
            for section in sections:
                if retraction.after(section) == identity:
                    e = Idempotent(c, x, section(x, element))
                    e.validate()
                    return RetractWitness(x, element, section, retraction, e)
    logger.debug(f"{s.label} is not a retract of a representable")
    return None


def is_absolute_weight(w: SetFunctor, cap: Optional[int] = None) -> bool:
    return retract_of_representable(w, cap) is not None


# ---------------------------------------------------------------------------
# Morphisms of Cauchy points
# ---------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class CauchyMorphisms:
    classes: CoendResult
    to_presheaf: Mapping[Element, NatTransformation]
    to_functor: Mapping[Element, NatTransformation]

    def __len__(self) -> int:
        return len(self.classes)


def _presheaf_map(pt1: CauchyPoint, pt2: CauchyPoint, member) -> NatTransformation:
    x, p2, f1 = member
    p_1, p_2 = pt1.presheaf, pt2.presheaf
    components = {}

    for a in pt1.base.objects:
        components[a] = FinFunction.build(
            p_1.sets[a], p_2.sets[a], lambda p, _a=a: p_2.act(pt1.compose(_a, x, p, f1), p2)
        )
    return NatTransformation(p_1, p_2, components)


def _functor_map(pt1: CauchyPoint, pt2: CauchyPoint, member) -> NatTransformation:
    x, p2, f1 = member
    f_1, f_2 = pt1.functor, pt2.functor

    components = {
        a: FinFunction.build(f_2.sets[a], f_1.sets[a], lambda f, _a=a: f_1.act(pt2.compose(x, _a, p2, f), f1))
        for a in pt1.base.objects
    }
    return NatTransformation(f_2, f_1, components)


def cauchy_morphisms(pt1: CauchyPoint, pt2: CauchyPoint, cap: Optional[int] = None) -> CauchyMorphisms:
    """⟨P2, F1⟩ with its translations to Nat(P1, P2) and Nat(F2, F1)."""
    classes = pairing(pt2.presheaf, pt1.functor, cap)
    to_presheaf, to_functor = {}, {}
    for name, members in classes.classes.items():
        alphas = {_presheaf_map(pt1, pt2, m) for m in members}
        betas = {_functor_map(pt1, pt2, m) for m in members}
        if len(alphas) != 1 or len(betas) != 1:
            raise InternalDisagreement(f"translation of {name} depends on the representative", name)
        to_presheaf[name], to_functor[name] = alphas.pop(), betas.pop()
        to_presheaf[name].validate()
        to_functor[name].validate()

    x1, pi1, iota1 = pt1.representative
    x2, pi2, iota2 = pt2.representative
    nat_p = nat_transformations_direct(pt1.presheaf, pt2.presheaf, cap)
    nat_f = nat_transformations_direct(pt2.functor, pt1.functor, cap)
    if len(nat_p) != len(classes) or len(nat_f) != len(classes):
        raise InternalDisagreement(
            f"{len(classes)} morphisms but {len(nat_p)} and {len(nat_f)} transformations", pt1.name, pt2.name
        )
    for alpha in nat_p:
        name = classes.class_of((x1, alpha(x1, pi1), iota1))
        if to_presheaf[name] != alpha:
            raise InternalDisagreement("presheaf translations are not mutually inverse", name)
    for beta in nat_f:
        name = classes.class_of((x2, pi2, beta(x2, iota2)))
        if to_functor[name] != beta:
            raise InternalDisagreement("functor translations are not mutually inverse", name)
    return CauchyMorphisms(classes, to_presheaf, to_functor)


def compose_cauchy_morphisms(
    pt1: CauchyPoint, pt2: CauchyPoint, pt3: CauchyPoint, first: Element, second: Element, cap: Optional[int] = None
) -> Element:
    """second ∘ first for first ∈ ⟨P2,F1⟩ and second ∈ ⟨P3,F2⟩, as a class of ⟨P3,F1⟩."""
    x, p2, f1 = first
    y, p3, f2 = second
    moved = pt3.presheaf.act(pt2.compose(x, y, p2, f2), p3)
    return pairing(pt3.presheaf, pt1.functor, cap).class_of((x, moved, f1))


@dataclass(frozen=True)
class PhiReport:
    objects: int
    morphisms: int
    full: bool
    faithful: bool
    functorial: bool
    essentially_surjective: bool
    realized: int
    cauchy_complete: bool

    @property
    def ok(self) -> bool:
        return self.full and self.faithful and self.functorial and self.essentially_surjective


def phi_equivalence_check(c: FinCategory, cap: Optional[int] = None) -> PhiReport:
    """Check that idempotents ↦ Cauchy points is an equivalence K(C) ≃ Cauchy points."""
    k = karoubi_envelope(c, cap)
    kc = k.category
    points = {a: cauchy_point_from_idempotent(e, cap) for a, e in k.objects.items()}
    pairings = {(a, b): pairing(points[b].presheaf, points[a].functor, cap) for a in kc.objects for b in kc.objects}

    def phi(g: str) -> Element:
        a = kc.dom(g)
        e = k.objects[a]
        return pairings[(a, kc.cod(g))].class_of((e.obj, k.underlying[g], e.morphism))

    full = faithful = functorial = True
    for a in kc.objects:
        for b in kc.objects:
            images = [phi(g) for g in kc.hom(a, b)]
            faithful &= len(set(images)) == len(images)
            full &= set(images) == set(pairings[(a, b)].carrier.elements)
        functorial &= phi(kc.identities[a]) == points[a].identity_class
    for h, g in kc.composable_pairs():
        a, b, d = kc.dom(g), kc.cod(g), kc.cod(h)
        expected = compose_cauchy_morphisms(points[a], points[b], points[d], phi(g), phi(h), cap)
        functorial &= phi(kc.compose(h, g)) == expected

    def isomorphic_points(a: str, b: str) -> bool:
        forth, back = pairings[(a, b)].carrier, pairings[(b, a)].carrier
        return any(
            compose_cauchy_morphisms(points[a], points[b], points[a], u, v, cap) == points[a].identity_class
            and compose_cauchy_morphisms(points[b], points[a], points[b], v, u, cap) == points[b].identity_class
            for u in forth
            for v in back
        )

    essentially_surjective = all(any(isomorphic_points(a, b) for a in kc.objects) for b in points)
    realized = sum(1 for pt in points.values() if realize_cauchy_point(pt, cap).obj is not None)
    report = PhiReport(
        objects=len(kc.objects),
        morphisms=len(kc.morphisms),
        full=full,
        faithful=faithful,
        functorial=functorial,
        essentially_surjective=essentially_surjective,
        realized=realized,
        cauchy_complete=is_cauchy_complete(c).complete,
    )
    logger.info(f"Φ check on {c.label}: {report}")
    return report


# ---------------------------------------------------------------------------
# Universal retractions and absolute limits
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class EventualRetraction:
    obj: str
    weight_element: Element
    morphism: str


@dataclass(frozen=True, eq=False)
class UniversalRetraction:
    retraction: EventualRetraction
    candidates: Tuple[EventualRetraction, ...]
    checks: int


def universal_retraction(
    wd: WeightedDiagram, cone: WeightedCone, cap: Optional[int] = None
) -> Optional[UniversalRetraction]:
    """The unique universal eventual retraction [J, w, π] of a weighted cone, if any."""
    d, w = wd.diagram, wd.weight
    c = d.target
    t = cone.tip
    budget = Budget("universal_retraction", cap)
    classes = {x: pairing(hom_presheaf_along(d, x), w, cap) for x in c.objects}
    candidates = []
    for name, members in classes[t].classes.items():
        hit = next((m for m in members if c.compose(m[1], cone.legs[(m[0], m[2])]) == c.identities[t]), None)
        if hit is not None:
            candidates.append((name, hit))
    universal = []
    checks = 0
    for name, (j, pi, u) in candidates:
        ok = True
        for x in c.objects:
            for f in c.hom(t, x):
                expected = classes[x].class_of((j, c.compose(f, pi), u))
                for other, members in classes[x].classes.items():
                    budget.tick()
                    checks += 1
                    k, g, v = members[0]
                    if c.compose(g, cone.legs[(k, v)]) == f and other != expected:
                        ok = False
                        break
                if not ok:
                    break
            if not ok:
                break
        if ok:
            universal.append(EventualRetraction(j, u, pi))
    found = tuple(EventualRetraction(m[0], m[2], m[1]) for _, m in candidates)
    if not universal:
        logger.info(f"cone at {t} has no universal retraction ({len(candidates)} eventual retractions)")
        return None
    if len(universal) > 1:
        raise InternalDisagreement(f"{len(universal)} universal retractions", t)
    return UniversalRetraction(universal[0], found, checks)


def universal_section(
    wd: WeightedDiagram, cocone: WeightedCone, cap: Optional[int] = None
) -> Optional[UniversalRetraction]:
    """Dual of universal_retraction for a cocone under a diagram with contravariant weight."""
    d, w = wd.diagram, wd.weight
    c = d.target
    t = cocone.tip
    budget = Budget("universal_section", cap)
    classes = {x: pairing(w, hom_functor_along(d, x), cap) for x in c.objects}
    candidates = []
    for name, members in classes[t].classes.items():
        hit = next((m for m in members if c.compose(cocone.legs[(m[0], m[1])], m[2]) == c.identities[t]), None)
        if hit is not None:
            candidates.append((name, hit))
    universal = []
    checks = 0
    for name, (j, u, iota) in candidates:
        ok = True
        for x in c.objects:
            for f in c.hom(x, t):
                expected = classes[x].class_of((j, u, c.compose(iota, f)))
                for other, members in classes[x].classes.items():
                    budget.tick()
                    checks += 1
                    k, v, g = members[0]
                    if c.compose(cocone.legs[(k, v)], g) == f and other != expected:
                        ok = False
                        break
                if not ok:
                    break
            if not ok:
                break
        if ok:
            universal.append(EventualRetraction(j, u, iota))
    found = tuple(EventualRetraction(m[0], m[1], m[2]) for _, m in candidates)
    if not universal:
        logger.info(f"cocone at {t} has no universal section")
        return None
    if len(universal) > 1:
        raise InternalDisagreement(f"{len(universal)} universal sections", t)
    return UniversalRetraction(universal[0], found, checks)


@dataclass(frozen=True, eq=False)
class AbsoluteSweepReport:
    terminal: bool
    functors: int
    failures: Tuple[Tuple[str, FunctorData], ...]

    @property
    def preserved(self) -> bool:
        return self.terminal and not self.failures


def absolute_limit_sweep(
    wd: WeightedDiagram, cone: WeightedCone, targets: Mapping[str, FinCategory], cap: Optional[int] = None
) -> AbsoluteSweepReport:
    """Push a limit cone through every functor into each target and re-test terminality."""
    if not is_terminal_cone(wd, cone, cap):
        return AbsoluteSweepReport(False, 0, ())
    d = wd.diagram
    functors = 0
    failures = []
    for name, target in targets.items():
        for h in enumerate_functors(d.target, target, cap):
            functors += 1
            pushed = WeightedDiagram(compose_functors(h, d), wd.weight)
            legs = {p: h.mor(leg) for p, leg in cone.legs.items()}
            # a functor image of a cone is a cone, so only terminality can fail
            if not is_terminal_cone(pushed, WeightedCone(h.ob(cone.tip), legs), cap):
                failures.append((name, h))
    logger.info(f"absolute sweep: {functors} functors, {len(failures)} failures")
    return AbsoluteSweepReport(True, functors, tuple(failures))
