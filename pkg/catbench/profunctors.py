# catbench/profunctors.py

"""Profunctors, collages, profunctor composition and Day convolution.

A profunctor Φ: C ↛ D is a bifunctor D^op × C -> Set; an element of Φ(D, C)
is a heteromorphism D -> C. Composites and Day convolutions are coends,
computed with the pairing of ends.py, and their actions are induced on class
representatives and checked to be independent of the representative.
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass
from typing import Callable, Dict, List, Mapping, Optional, Tuple

from .ends import Bifunctor, CoendResult, hom_bifunctor, pairing
from .errors import BaseMismatch, CatbenchError, InternalDisagreement, ValidationFailed
from .fincat import (
    Element,
    FinCategory,
    FinFunction,
    FunctorData,
    Morphism,
    NatTransformation,
    SetFunctor,
    Variance,
    discrete_category,
    hom_functor,
    pair_name,
    product_category,
    validate_category,
    virtual_name,
)
from .search import Budget, natural_iso_search, natural_isomorphisms

logger = logging.getLogger(__name__)

__all__ = [
    "Profunctor",
    "Collage",
    "StrictMonoidalStructure",
    "collage",
    "compose_profunctors",
    "day_convolve",
    "natural_iso_search",
    "natural_isomorphisms",
]


@dataclass(frozen=True, eq=False)
class Profunctor(Bifunctor):
    """Φ: C ↛ D stored as a bifunctor with contra = D and co = C."""

    @property
    def source(self) -> FinCategory:
        return self.co

    @property
    def target(self) -> FinCategory:
        return self.contra

    @classmethod
    def of(cls, b: Bifunctor, name: str = "") -> "Profunctor":
        return cls(b.contra, b.co, b.sets, b.left, b.right, name or b.name)

    def presheaf_at(self, c: str) -> SetFunctor:
        """Φ(−, c) on the target category."""
        return SetFunctor(
            self.contra,
            Variance.CONTRAVARIANT,
            {d: self.sets[(d, c)] for d in self.contra.objects},
            {k.name: self.left[(k.name, c)] for k in self.contra.morphisms},
            f"{self.label}(-,{c})",
        )

    def functor_at(self, d: str) -> SetFunctor:
        """Φ(d, −) on the source category."""
        return SetFunctor(
            self.co,
            Variance.COVARIANT,
            {c: self.sets[(d, c)] for c in self.co.objects},
            {g.name: self.right[(g.name, d)] for g in self.co.morphisms},
            f"{self.label}({d},-)",
        )


def identity_profunctor(c: FinCategory) -> Profunctor:
    return Profunctor.of(hom_bifunctor(c))


def empty_profunctor(source: FinCategory, target: FinCategory) -> Profunctor:
    return Profunctor.build(target, source, lambda _d, _c: (), lambda *_: None, lambda *_: None, "0")


def profunctor_from_set_functor(f: SetFunctor) -> Profunctor:
    """A functor F on C as C ↛ 1, with Φ(*, A) = F(A)."""
    from .catalog import one

    if not f.covariant:
        raise BaseMismatch(f"{f.label} is a presheaf, use profunctor_from_presheaf", f.label)
    return Profunctor.build(
        one(), f.base, lambda _d, a: f.sets[a], lambda _k, _a, v: v, lambda g, _d, v: f.act(g, v), f.label
    )


def profunctor_from_presheaf(p: SetFunctor) -> Profunctor:
    """A presheaf P on C as 1 ↛ C, with Φ(A, *) = P(A)."""
    from .catalog import one

    if p.covariant:
        raise BaseMismatch(f"{p.label} is a functor, use profunctor_from_set_functor", p.label)
    return Profunctor.build(
        p.base, one(), lambda a, _c: p.sets[a], lambda k, _c, v: p.act(k, v), lambda _g, _a, v: v, p.label
    )


def profunctor_iso(a: Bifunctor, b: Bifunctor, cap: Optional[int] = None) -> Optional[NatTransformation]:
    """A natural isomorphism of profunctors, found on their product-category views."""
    if a.contra != b.contra or a.co != b.co:
        return None
    found = natural_isomorphisms(a.as_set_functor(), b.as_set_functor(), cap, limit=1)
    return found[0] if found else None


# ---------------------------------------------------------------------------
# Collage
# ---------------------------------------------------------------------------


def _in_source(name: str) -> str:
    return f"C.{name}"


def _in_target(name: str) -> str:
    return f"D.{name}"


@dataclass(frozen=True, eq=False)
class Collage:
    category: FinCategory
    profunctor: Profunctor
    # heteromorphism name -> (target object, source object, element)
    heteromorphisms: Mapping[str, Tuple[str, str, Element]]

    def source_inclusion(self) -> FunctorData:
        c = self.profunctor.source
        return FunctorData(
            c,
            self.category,
            {o: _in_source(o) for o in c.objects},
            {m.name: _in_source(m.name) for m in c.morphisms},
            "source",
        )

    def target_inclusion(self) -> FunctorData:
        d = self.profunctor.target
        return FunctorData(
            d,
            self.category,
            {o: _in_target(o) for o in d.objects},
            {m.name: _in_target(m.name) for m in d.morphisms},
            "target",
        )

    def is_heteromorphism(self, morphism: str) -> bool:
        return morphism in self.heteromorphisms


def collage(phi: Profunctor, cap: Optional[int] = None) -> Collage:
    """C and D side by side, with an arrow D -> C for every element of Φ(D, C)."""
    c, d = phi.source, phi.target
    budget = Budget("collage", cap)
    budget.reserve(len(c.morphisms) + len(d.morphisms) + phi.total_size())
    objects = [_in_source(o) for o in c.objects] + [_in_target(o) for o in d.objects]
    morphisms = [Morphism(_in_source(m.name), _in_source(m.dom), _in_source(m.cod)) for m in c.morphisms]
    morphisms += [Morphism(_in_target(m.name), _in_target(m.dom), _in_target(m.cod)) for m in d.morphisms]
    identities = {_in_source(o): _in_source(i) for o, i in c.identities.items()}
    identities.update({_in_target(o): _in_target(i) for o, i in d.identities.items()})
    comp = {(_in_source(g), _in_source(f)): _in_source(h) for (g, f), h in c.comp.items()}
    comp.update({(_in_target(g), _in_target(f)): _in_target(h) for (g, f), h in d.comp.items()})

    def het(dd: str, cc: str, v: Element) -> str:
        return virtual_name(_in_target(dd), _in_source(cc), v)

    heteromorphisms = {}
    for (dd, cc), values in phi.sets.items():
        for v in values:
            heteromorphisms[het(dd, cc, v)] = (dd, cc, v)
            morphisms.append(Morphism(het(dd, cc, v), _in_target(dd), _in_source(cc)))
    for name, (dd, cc, v) in heteromorphisms.items():
        for g in c.hom_from(cc):
            budget.tick()
            comp[(_in_source(g), name)] = het(dd, c.cod(g), phi.act_right(g, dd, v))
        for k in d.hom_into(dd):
            budget.tick()
            comp[(name, _in_target(k))] = het(d.dom(k), cc, phi.act_left(k, cc, v))
    category = FinCategory.build(objects, morphisms, identities, comp, f"collage({phi.label})")
    validate_category(category).raise_for_status()
    logger.debug(f"collage of {phi.label}: {category.summary()}")
    return Collage(category, phi, heteromorphisms)


# ---------------------------------------------------------------------------
# Composition
# ---------------------------------------------------------------------------


def _induced(
    source: CoendResult, target: CoendResult, move: Callable[[Tuple], Tuple], what: str
) -> Dict[Element, Element]:
    """Map classes through `move` applied to every member; the image must not depend on the member."""
    images = {}
    for name, members in source.classes.items():
        found = {target.class_of(move(m)) for m in members}
        if len(found) != 1:
            logger.error(f"{what}: action on {name} depends on the representative")
            raise InternalDisagreement(f"{what} is not well defined on {name}", name)
        images[name] = found.pop()
    return images


def compose_profunctors(phi: Profunctor, psi: Profunctor, cap: Optional[int] = None) -> Profunctor:
    """Ψ ∘ Φ: C ↛ E for Φ: C ↛ D and Ψ: D ↛ E, with (Ψ∘Φ)(e, c) = ∫^d Φ(d, c) × Ψ(e, d)."""
    if phi.target != psi.source:
        raise BaseMismatch(f"{phi.label} and {psi.label} do not share a middle category", phi.label, psi.label)
    c, e = phi.source, psi.target
    budget = Budget("compose_profunctors", cap)
    classes: Dict[Tuple[str, str], CoendResult] = {}
    for ee in e.objects:
        for cc in c.objects:
            budget.tick()
            classes[(ee, cc)] = pairing(phi.presheaf_at(cc), psi.functor_at(ee), cap)

    left, right = {}, {}
    for k in e.morphisms:
        for cc in c.objects:
            # k: e' -> e acts on (e, c) classes by moving ψ
            src, dst = classes[(k.cod, cc)], classes[(k.dom, cc)]
            images = _induced(src, dst, lambda m, _k=k.name: (m[0], m[1], psi.act_left(_k, m[0], m[2])), "left action")
            left[(k.name, cc)] = FinFunction(src.carrier, dst.carrier, images)
    for g in c.morphisms:
        for ee in e.objects:
            src, dst = classes[(ee, g.dom)], classes[(ee, g.cod)]
            images = _induced(src, dst, lambda m, _g=g.name: (m[0], phi.act_right(_g, m[0], m[1]), m[2]), "right action")
            right[(g.name, ee)] = FinFunction(src.carrier, dst.carrier, images)
    composite = Profunctor(
        e, c, {key: r.carrier for key, r in classes.items()}, left, right, f"{psi.label}∘{phi.label}"
    )
    composite.validate()
    logger.info(f"composed {psi.label} ∘ {phi.label}: {composite.total_size()} elements")
    return composite


# ---------------------------------------------------------------------------
# Strict monoidal structures and Day convolution
# ---------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class StrictMonoidalStructure:
    base: FinCategory
    tensor_obj: Mapping[Tuple[str, str], str]
    tensor_mor: Mapping[Tuple[str, str], str]
    unit: str
    name: str = ""

    @property
    def label(self) -> str:
        return self.name or f"({self.base.label}, ⊗)"

    def obj(self, a: str, b: str) -> str:
        return self.tensor_obj[(a, b)]

    def mor(self, f: str, g: str) -> str:
        return self.tensor_mor[(f, g)]

    def as_functor(self) -> FunctorData:
        c = self.base
        return FunctorData(
            product_category(c, c),
            c,
            {pair_name(a, b): x for (a, b), x in self.tensor_obj.items()},
            {pair_name(f, g): h for (f, g), h in self.tensor_mor.items()},
            "⊗",
        )

    def validate(self) -> None:
        c = self.base
        c.check_object(self.unit)
        try:
            self.as_functor().validate()
        except CatbenchError as exc:
            raise ValidationFailed("tensor functoriality", self.label, detail=str(exc)) from exc
        for a, b, d in itertools.product(c.objects, repeat=3):
            if self.obj(self.obj(a, b), d) != self.obj(a, self.obj(b, d)):
                raise ValidationFailed("associativity", a, b, d)
        for a in c.objects:
            if self.obj(self.unit, a) != a or self.obj(a, self.unit) != a:
                raise ValidationFailed("unit", a)
        names = [m.name for m in c.morphisms]
        for f, g, h in itertools.product(names, repeat=3):
            if self.mor(self.mor(f, g), h) != self.mor(f, self.mor(g, h)):
                raise ValidationFailed("associativity", f, g, h)
        unit_id = c.identities[self.unit]
        for f in names:
            if self.mor(unit_id, f) != f or self.mor(f, unit_id) != f:
                raise ValidationFailed("unit", f)


def _cyclic_tensor(objects: List[str]) -> Dict[Tuple[str, str], str]:
    n = len(objects)
    return {(objects[i], objects[j]): objects[(i + j) % n] for i in range(n) for j in range(n)}


def discrete_group_monoidal(n: int) -> StrictMonoidalStructure:
    """Z/n as a discrete monoidal category on objects I, A, A2, ..."""
    objects = ["I", "A"] + [f"A{k}" for k in range(2, n)]
    c = discrete_category(objects[:n], f"z{n}disc")
    tensor = _cyclic_tensor(objects[:n])
    ids = c.identities
    return StrictMonoidalStructure(
        c, tensor, {(ids[a], ids[b]): ids[x] for (a, b), x in tensor.items()}, "I", f"z{n}disc"
    )


def one_monoidal() -> StrictMonoidalStructure:
    from .catalog import one

    c = one()
    return StrictMonoidalStructure(c, {("*", "*"): "*"}, {("id_*", "id_*"): "id_*"}, "*", "one")


def group_monoidal(n: int) -> StrictMonoidalStructure:
    """The one-object category of Z/n, tensored by the group product."""
    from .catalog import cyclic_group

    c = cyclic_group(n)
    elements = ["id"] + [("g" if k == 1 else f"g{k}") for k in range(1, n)]
    return StrictMonoidalStructure(c, {("*", "*"): "*"}, _cyclic_tensor(elements), "*", f"z{n}")


def poset_max_monoidal() -> StrictMonoidalStructure:
    """The poset 0 ≤ 1 with max as tensor and 0 as unit."""
    from .catalog import poset01

    c = poset01()
    tensor = {(a, b): max(a, b) for a in c.objects for b in c.objects}
    mor = {}
    for f in c.morphisms:
        for g in c.morphisms:
            (h,) = c.hom(tensor[(f.dom, g.dom)], tensor[(f.cod, g.cod)])
            mor[(f.name, g.name)] = h
    return StrictMonoidalStructure(c, tensor, mor, "0", "poset01max")


def monoidal_catalog() -> Dict[str, StrictMonoidalStructure]:
    structures = [one_monoidal(), discrete_group_monoidal(2), discrete_group_monoidal(3), group_monoidal(2)]
    structures.append(poset_max_monoidal())
    return {m.name: m for m in structures}


def _outer_product(f: SetFunctor, g: SetFunctor, index: FinCategory, split: Mapping[str, Tuple[str, str]]) -> SetFunctor:
    """(X, Y) ↦ F X × G Y on C × C."""
    return SetFunctor.build(
        index,
        f.variance,
        {xy: [(u, v) for u in f.sets[split[xy][0]] for v in g.sets[split[xy][1]]] for xy in index.objects},
        lambda m, uv: (f.act(split[m][0], uv[0]), g.act(split[m][1], uv[1])),
        f"{f.label}⊠{g.label}",
    )


def day_convolve(
    f: SetFunctor, g: SetFunctor, m: StrictMonoidalStructure, cap: Optional[int] = None
) -> SetFunctor:
    """F ⊗ G. Covariant: ∫^{X,Y} C(X⊗Y, Z) × F X × G Y. Presheaves: ∫^{X,Y} P X × Q Y × C(Z, X⊗Y)."""
    c = m.base
    if f.base != c or g.base != c:
        raise BaseMismatch(f"{f.label} and {g.label} must live on {c.label}", f.label, g.label)
    if f.variance is not g.variance:
        raise BaseMismatch("Day convolution needs two functors or two presheaves", f.label, g.label)
    budget = Budget("day_convolve", cap)
    index = product_category(c, c)
    split = {pair_name(a, b): (a, b) for a in c.objects for b in c.objects}
    split.update({pair_name(u.name, v.name): (u.name, v.name) for u in c.morphisms for v in c.morphisms})
    outer = _outer_product(f, g, index, split)
    classes: Dict[str, CoendResult] = {}
    for z in c.objects:
        budget.tick()
        if f.covariant:
            into_z = SetFunctor.build(
                index,
                Variance.CONTRAVARIANT,
                {xy: c.hom(m.obj(*split[xy]), z) for xy in index.objects},
                lambda uv, h: c.compose(h, m.mor(*split[uv])),
            )
            classes[z] = pairing(into_z, outer, cap)
        else:
            out_of_z = SetFunctor.build(
                index,
                Variance.COVARIANT,
                {xy: c.hom(z, m.obj(*split[xy])) for xy in index.objects},
                lambda uv, h: c.compose(m.mor(*split[uv]), h),
            )
            classes[z] = pairing(outer, out_of_z, cap)

    actions = {}
    for k in c.morphisms:
        if f.covariant:
            src, dst = classes[k.dom], classes[k.cod]
            move = lambda t, _k=k.name: (t[0], c.compose(_k, t[1]), t[2])  # noqa: E731
        else:
            src, dst = classes[k.cod], classes[k.dom]
            move = lambda t, _k=k.name: (t[0], t[1], c.compose(t[2], _k))  # noqa: E731
        actions[k.name] = FinFunction(src.carrier, dst.carrier, _induced(src, dst, move, "Day action"))
    result = SetFunctor(
        c, f.variance, {z: r.carrier for z, r in classes.items()}, actions, f"{f.label}⊗{g.label}"
    )
    result.validate()
    logger.debug(f"Day convolution {result.label}: sizes {result.size_profile()}")
    return result


def yon(m: StrictMonoidalStructure, a: str, variance: Variance = Variance.COVARIANT) -> SetFunctor:
    """The Yoneda image of a: hom(a, −) for functors, hom(−, a) for presheaves."""
    return hom_functor(m.base, a, variance)


def check_day_unit(
    m: StrictMonoidalStructure, f: SetFunctor, cap: Optional[int] = None
) -> Tuple[Optional[NatTransformation], Optional[NatTransformation]]:
    """Isomorphisms Yon(I) ⊗ F ≅ F and F ⊗ Yon(I) ≅ F, when found."""
    unit = yon(m, m.unit, f.variance)
    left = natural_iso_search(day_convolve(unit, f, m, cap), f, cap)
    right = natural_iso_search(day_convolve(f, unit, m, cap), f, cap)
    return left, right


def check_day_associativity(
    m: StrictMonoidalStructure, f: SetFunctor, g: SetFunctor, h: SetFunctor, cap: Optional[int] = None
) -> Optional[NatTransformation]:
    one_way = day_convolve(day_convolve(f, g, m, cap), h, m, cap)
    other_way = day_convolve(f, day_convolve(g, h, m, cap), m, cap)
    return natural_iso_search(one_way, other_way, cap)


@dataclass(frozen=True)
class StrongMonoidalReport:
    pairs: Tuple[Tuple[Tuple[str, str], bool], ...]
    units: Tuple[Tuple[str, bool], ...]
    triples: Tuple[Tuple[Tuple[str, str, str], bool], ...]

    @property
    def ok(self) -> bool:
        return all(ok for _, ok in self.pairs + self.units + self.triples)


def check_yoneda_strong_monoidal(
    m: StrictMonoidalStructure, variance: Variance = Variance.COVARIANT, cap: Optional[int] = None
) -> StrongMonoidalReport:
    """Yon(A) ⊗ Yon(B) ≅ Yon(A ⊗ B) for every pair, plus unit and associativity isomorphisms."""
    m.validate()
    objects = m.base.objects
    y = {a: yon(m, a, variance) for a in objects}
    products = {(a, b): day_convolve(y[a], y[b], m, cap) for a in objects for b in objects}
    pairs = tuple(
        ((a, b), natural_iso_search(products[(a, b)], y[m.obj(a, b)], cap) is not None) for a, b in products
    )
    units = tuple((a, all(iso is not None for iso in check_day_unit(m, y[a], cap))) for a in objects)
    triples = []
    for a, b, c in itertools.product(objects, repeat=3):
        one_way = day_convolve(products[(a, b)], y[c], m, cap)
        other_way = day_convolve(y[a], products[(b, c)], m, cap)
        triples.append(((a, b, c), natural_iso_search(one_way, other_way, cap) is not None))
    report = StrongMonoidalReport(pairs, units, tuple(triples))
    if report.ok:
        logger.info(f"Yoneda is strong monoidal on {m.label}: {len(pairs)} pairs, {len(triples)} triples")
    else:
        logger.warning(f"Yoneda strong monoidality fails on {m.label}")
    return report
