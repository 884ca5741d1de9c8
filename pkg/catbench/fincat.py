# catbench/fincat.py

"""Finite categories, functors, set functors and natural transformations.

Everything here is an immutable value built from full tables. Objects and
morphisms are named by strings; set elements may be any hashable value
(strings, or tuples of elements for computed sets) and are kept in canonical
order, so equal values always serialize identically.
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass, field
from enum import Enum
from functools import cached_property
from typing import (
    Callable,
    Dict,
    Hashable,
    Iterable,
    Iterator,
    List,
    Mapping,
    Optional,
    Tuple,
    Union,
)

from .config import settings
from .errors import (
    BaseMismatch,
    BrokenAssociativity,
    BrokenUnit,
    CategoryLawError,
    FunctorLawError,
    MissingIdentity,
    NaturalityError,
    NonClosedComposition,
    UnknownObject,
)

logger = logging.getLogger(__name__)

Element = Hashable


def render(element: Element) -> str:
    """Human-readable, order-defining spelling of a set element."""
    if isinstance(element, str):
        return element
    if isinstance(element, tuple):
        return "(" + ",".join(render(e) for e in element) + ")"
    return str(element)


def element_key(element: Element) -> Tuple[str, str]:
    return render(element), repr(element)


def canonical(elements: Iterable[Element]) -> Tuple[Element, ...]:
    return tuple(sorted(set(elements), key=element_key))


def pair_name(first: str, second: str) -> str:
    return f"({first},{second})"


def virtual_name(source: str, target: str, element: Element) -> str:
    """Name of a virtual arrow source -> target labelled by `element`."""
    return f"{settings.virtual_prefix}{source}>{target}:{render(element)}"


# ---------------------------------------------------------------------------
# Finite sets and functions
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class FinSet:
    elements: Tuple[Element, ...]
    label: str = field(default="", compare=False)

    def __post_init__(self):
        if len(set(self.elements)) != len(self.elements):
            raise ValueError(f"FinSet {self.label!r} has repeated elements")

    @classmethod
    def of(cls, elements: Iterable[Element], label: str = "") -> "FinSet":
        return cls(canonical(elements), label)

    @cached_property
    def members(self) -> frozenset:
        return frozenset(self.elements)

    def __contains__(self, x: Element) -> bool:
        return x in self.members

    def __iter__(self) -> Iterator[Element]:
        return iter(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def index(self, x: Element) -> int:
        return self.elements.index(x)


EMPTY = FinSet(())
POINT = "*"
SINGLETON = FinSet((POINT,))


@dataclass(frozen=True, eq=False)
class FinFunction:
    dom: FinSet
    cod: FinSet
    mapping: Mapping[Element, Element]

    @classmethod
    def build(cls, dom: FinSet, cod: FinSet, fn: Callable[[Element], Element]) -> "FinFunction":
        return cls(dom, cod, {x: fn(x) for x in dom})

    @classmethod
    def identity(cls, s: FinSet) -> "FinFunction":
        return cls(s, s, {x: x for x in s})

    def __call__(self, x: Element) -> Element:
        return self.mapping[x]

    def after(self, other: "FinFunction") -> "FinFunction":
        """self ∘ other."""
        return FinFunction(other.dom, self.cod, {x: self.mapping[other.mapping[x]] for x in other.dom})

    def as_tuple(self) -> Tuple[Element, ...]:
        return tuple(self.mapping[x] for x in self.dom)

    def is_total(self) -> bool:
        return set(self.mapping) == set(self.dom.members) and all(y in self.cod for y in self.mapping.values())

    def is_bijective(self) -> bool:
        return len(self.dom) == len(self.cod) and len(set(self.mapping.values())) == len(self.dom)

    def inverse(self) -> "FinFunction":
        if not self.is_bijective():
            raise ValueError("function is not invertible")
        return FinFunction(self.cod, self.dom, {y: x for x, y in self.mapping.items()})

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FinFunction):
            return NotImplemented
        return self.dom == other.dom and self.cod == other.cod and dict(self.mapping) == dict(other.mapping)

    def __hash__(self) -> int:
        return hash((self.dom, self.cod, self.as_tuple()))


def all_functions(dom: FinSet, cod: FinSet) -> Iterator[Tuple[Element, ...]]:
    """Every function dom -> cod, as image tuples aligned with dom."""
    return itertools.product(cod.elements, repeat=len(dom))


# ---------------------------------------------------------------------------
# Finite categories
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Morphism:
    name: str
    dom: str
    cod: str


@dataclass(frozen=True, eq=False)
class FinCategory:
    objects: Tuple[str, ...]
    morphisms: Tuple[Morphism, ...]
    identities: Mapping[str, str]
    comp: Mapping[Tuple[str, str], str]
    name: str = ""

    @classmethod
    def build(
        cls,
        objects: Iterable[str],
        morphisms: Iterable[Union[Morphism, Tuple[str, str, str]]],
        identities: Mapping[str, str],
        comp: Mapping[Tuple[str, str], str],
        name: str = "",
    ) -> "FinCategory":
        mors = [m if isinstance(m, Morphism) else Morphism(*m) for m in morphisms]
        return cls(
            objects=tuple(sorted(objects)),
            morphisms=tuple(sorted(mors, key=lambda m: m.name)),
            identities={o: identities[o] for o in sorted(identities)},
            comp={k: comp[k] for k in sorted(comp)},
            name=name,
        )

    @cached_property
    def _by_name(self) -> Dict[str, Morphism]:
        return {m.name: m for m in self.morphisms}

    @cached_property
    def _homs(self) -> Dict[Tuple[str, str], Tuple[str, ...]]:
        homs: Dict[Tuple[str, str], List[str]] = {(a, b): [] for a in self.objects for b in self.objects}
        for m in self.morphisms:
            homs.setdefault((m.dom, m.cod), []).append(m.name)
        return {k: tuple(v) for k, v in homs.items()}

    @cached_property
    def _object_set(self) -> frozenset:
        return frozenset(self.objects)

    def has_object(self, obj: str) -> bool:
        return obj in self._object_set

    def has_morphism(self, name: str) -> bool:
        return name in self._by_name

    def check_object(self, obj: str) -> None:
        if obj not in self._object_set:
            raise UnknownObject(f"{obj!r} is not an object of {self.label}", obj)

    def mor(self, name: str) -> Morphism:
        try:
            return self._by_name[name]
        except KeyError:
            raise UnknownObject(f"{name!r} is not a morphism of {self.label}", name) from None

    def dom(self, name: str) -> str:
        return self.mor(name).dom

    def cod(self, name: str) -> str:
        return self.mor(name).cod

    def identity(self, obj: str) -> str:
        self.check_object(obj)
        return self.identities[obj]

    def hom(self, a: str, b: str) -> Tuple[str, ...]:
        self.check_object(a)
        self.check_object(b)
        return self._homs[(a, b)]

    def hom_set(self, a: str, b: str) -> FinSet:
        return FinSet(self.hom(a, b), f"{self.label}({a},{b})")

    def compose(self, g: str, f: str) -> str:
        """g ∘ f."""
        try:
            return self.comp[(g, f)]
        except KeyError:
            raise NonClosedComposition(f"{g} ∘ {f} is not defined in {self.label}", g, f) from None

    def compose_path(self, *path: str) -> str:
        """compose_path(h, g, f) = h ∘ g ∘ f."""
        result = path[-1]
        for m in reversed(path[:-1]):
            result = self.compose(m, result)
        return result

    def is_identity(self, name: str) -> bool:
        return self.identities.get(self.dom(name)) == name

    def endomorphisms(self, obj: str) -> Tuple[str, ...]:
        return self.hom(obj, obj)

    def is_isomorphism(self, f: str) -> bool:
        return self.inverse_of(f) is not None

    def inverse_of(self, f: str) -> Optional[str]:
        m = self.mor(f)
        for g in self.hom(m.cod, m.dom):
            if self.compose(g, f) == self.identities[m.dom] and self.compose(f, g) == self.identities[m.cod]:
                return g
        return None

    def isomorphic_objects(self, a: str, b: str) -> bool:
        return any(self.is_isomorphism(f) for f in self.hom(a, b))

    @property
    def label(self) -> str:
        return self.name or "category"

    def summary(self) -> str:
        return f"{len(self.objects)} objects, {len(self.morphisms)} morphisms"

    def composable_pairs(self) -> Iterator[Tuple[str, str]]:
        for f in self.morphisms:
            for g in self.hom_from(f.cod):
                yield g, f.name

    def hom_from(self, obj: str) -> Tuple[str, ...]:
        return tuple(n for b in self.objects for n in self._homs[(obj, b)])

    def hom_into(self, obj: str) -> Tuple[str, ...]:
        return tuple(n for a in self.objects for n in self._homs[(a, obj)])

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FinCategory):
            return NotImplemented
        return (
            self.objects == other.objects
            and self.morphisms == other.morphisms
            and dict(self.identities) == dict(other.identities)
            and dict(self.comp) == dict(other.comp)
        )

    def __hash__(self) -> int:
        return hash((self.objects, self.morphisms))

    def __repr__(self) -> str:
        return f"FinCategory({self.label}: {self.summary()})"


@dataclass(frozen=True)
class CategoryReport:
    ok: bool
    law: str = ""
    witness: Tuple[str, ...] = ()
    message: str = ""
    error: Optional[CategoryLawError] = None

    def raise_for_status(self) -> None:
        if self.error is not None:
            raise self.error


def validate_category(raw: FinCategory) -> CategoryReport:
    """Check the category laws, reporting the first violation found.

    Checks run in a fixed order: references and identities, definedness of the
    table, unit laws, closure of composition, then associativity.
    """
    try:
        _check_category(raw)
    except CategoryLawError as e:
        logger.info(f"{raw.label}: {e.render()}")
        return CategoryReport(False, e.law, tuple(str(w) for w in e.witness), str(e), e)
    return CategoryReport(True, message=f"ok: {raw.summary()}")


def _check_category(c: FinCategory) -> None:
    objects = set(c.objects)
    names = [m.name for m in c.morphisms]
    if len(set(names)) != len(names):
        dup = next(n for n in names if names.count(n) > 1)
        raise NonClosedComposition(f"morphism {dup} is declared twice", dup)
    for m in c.morphisms:
        if m.dom not in objects or m.cod not in objects:
            raise NonClosedComposition(f"{m.name} has an endpoint outside the objects", m.name)
    by_name = {m.name: m for m in c.morphisms}

    for obj in c.objects:
        ident = c.identities.get(obj)
        if ident is None or ident not in by_name:
            raise MissingIdentity(f"object {obj} has no identity", obj)
        if by_name[ident].dom != obj or by_name[ident].cod != obj:
            raise MissingIdentity(f"identity {ident} of {obj} is not an endomorphism of {obj}", obj, ident)
    for obj in c.identities:
        if obj not in objects:
            raise MissingIdentity(f"identity declared for unknown object {obj}", obj)

    for (g, f), h in c.comp.items():
        if g not in by_name or f not in by_name or h not in by_name:
            raise NonClosedComposition(f"{g} ∘ {f} = {h} names an unknown morphism", g, f, h)
        if by_name[g].dom != by_name[f].cod:
            raise NonClosedComposition(f"{g} ∘ {f} is listed but not composable", g, f)
    for f in c.morphisms:
        for g in c.morphisms:
            if g.dom == f.cod and (g.name, f.name) not in c.comp:
                raise NonClosedComposition(f"{g.name} ∘ {f.name} is missing", g.name, f.name)

    for f in c.morphisms:
        if c.comp[(c.identities[f.cod], f.name)] != f.name or c.comp[(f.name, c.identities[f.dom])] != f.name:
            raise BrokenUnit(f"identities do not act trivially on {f.name}", f.name)

    for (g, f), h in c.comp.items():
        if by_name[h].dom != by_name[f].dom or by_name[h].cod != by_name[g].cod:
            raise NonClosedComposition(f"{g} ∘ {f} = {h} has the wrong domain or codomain", g, f, h)

    for g, f in c.composable_pairs():
        gf = c.comp[(g, f)]
        for h in c.hom_from(by_name[g].cod):
            if c.comp[(h, gf)] != c.comp[(c.comp[(h, g)], f)]:
                raise BrokenAssociativity(f"({h} ∘ {g}) ∘ {f} differs from {h} ∘ ({g} ∘ {f})", h, g, f)


def opposite(c: FinCategory) -> FinCategory:
    name = c.name[:-3] if c.name.endswith("^op") else (f"{c.name}^op" if c.name else "")
    return FinCategory.build(
        c.objects,
        [Morphism(m.name, m.cod, m.dom) for m in c.morphisms],
        c.identities,
        {(f, g): h for (g, f), h in c.comp.items()},
        name,
    )


def product_category(c: FinCategory, d: FinCategory) -> FinCategory:
    objects = [pair_name(a, b) for a in c.objects for b in d.objects]
    morphisms = [
        Morphism(pair_name(f.name, g.name), pair_name(f.dom, g.dom), pair_name(f.cod, g.cod))
        for f in c.morphisms
        for g in d.morphisms
    ]
    identities = {pair_name(a, b): pair_name(c.identities[a], d.identities[b]) for a in c.objects for b in d.objects}
    comp = {}
    for g1, f1 in c.composable_pairs():
        for g2, f2 in d.composable_pairs():
            comp[(pair_name(g1, g2), pair_name(f1, f2))] = pair_name(c.compose(g1, f1), d.compose(g2, f2))
    return FinCategory.build(objects, morphisms, identities, comp, f"{c.label}×{d.label}")


def full_subcategory(c: FinCategory, objects: Iterable[str], name: str = "") -> FinCategory:
    keep = set(objects)
    for obj in keep:
        c.check_object(obj)
    morphisms = [m for m in c.morphisms if m.dom in keep and m.cod in keep]
    kept = {m.name for m in morphisms}
    comp = {(g, f): h for (g, f), h in c.comp.items() if g in kept and f in kept}
    return FinCategory.build(keep, morphisms, {o: c.identities[o] for o in keep}, comp, name)


def discrete_category(objects: Iterable[str], name: str = "") -> FinCategory:
    objects = list(objects)
    ids = {o: f"id_{o}" for o in objects}
    return FinCategory.build(
        objects,
        [Morphism(ids[o], o, o) for o in objects],
        ids,
        {(ids[o], ids[o]): ids[o] for o in objects},
        name,
    )


# ---------------------------------------------------------------------------
# Functors between finite categories
# ---------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class FunctorData:
    source: FinCategory
    target: FinCategory
    obj_map: Mapping[str, str]
    mor_map: Mapping[str, str]
    name: str = ""

    def ob(self, obj: str) -> str:
        return self.obj_map[obj]

    def mor(self, name: str) -> str:
        return self.mor_map[name]

    def validate(self) -> None:
        s, t = self.source, self.target
        for obj in s.objects:
            if obj not in self.obj_map or not t.has_object(self.obj_map[obj]):
                raise FunctorLawError(f"{self.label} does not map object {obj} into the target", obj)
        for m in s.morphisms:
            image = self.mor_map.get(m.name)
            if image is None or not t.has_morphism(image):
                raise FunctorLawError(f"{self.label} does not map {m.name} into the target", m.name)
            if t.dom(image) != self.obj_map[m.dom] or t.cod(image) != self.obj_map[m.cod]:
                raise FunctorLawError(f"{self.label} breaks the endpoints of {m.name}", m.name, image)
        for obj in s.objects:
            if self.mor_map[s.identities[obj]] != t.identities[self.obj_map[obj]]:
                raise FunctorLawError(f"{self.label} does not preserve the identity of {obj}", obj)
        for g, f in s.composable_pairs():
            if self.mor_map[s.compose(g, f)] != t.compose(self.mor_map[g], self.mor_map[f]):
                raise FunctorLawError(f"{self.label} does not preserve {g} ∘ {f}", g, f)

    @property
    def label(self) -> str:
        return self.name or "functor"

    def key(self) -> Tuple:
        return tuple(self.obj_map[o] for o in self.source.objects) + tuple(
            self.mor_map[m.name] for m in self.source.morphisms
        )

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FunctorData):
            return NotImplemented
        return self.source == other.source and self.target == other.target and self.key() == other.key()

    def __hash__(self) -> int:
        return hash(self.key())


def identity_functor(c: FinCategory) -> FunctorData:
    return FunctorData(c, c, {o: o for o in c.objects}, {m.name: m.name for m in c.morphisms}, f"id_{c.label}")


def compose_functors(g: FunctorData, f: FunctorData) -> FunctorData:
    """g ∘ f."""
    if f.target != g.source:
        raise BaseMismatch(f"cannot compose {g.label} after {f.label}", g.label, f.label)
    return FunctorData(
        f.source,
        g.target,
        {o: g.obj_map[f.obj_map[o]] for o in f.source.objects},
        {m.name: g.mor_map[f.mor_map[m.name]] for m in f.source.morphisms},
        f"{g.label}∘{f.label}",
    )


def constant_functor(source: FinCategory, target: FinCategory, obj: str) -> FunctorData:
    target.check_object(obj)
    ident = target.identities[obj]
    return FunctorData(source, target, {o: obj for o in source.objects}, {m.name: ident for m in source.morphisms})


def object_functor(target: FinCategory, obj: str, source: Optional[FinCategory] = None) -> FunctorData:
    """The functor from the one-object category picking out `obj`."""
    from .catalog import one

    return constant_functor(source or one(), target, obj)


# ---------------------------------------------------------------------------
# Set functors and presheaves
# ---------------------------------------------------------------------------


class Variance(str, Enum):
    COVARIANT = "covariant"
    CONTRAVARIANT = "contravariant"

    @property
    def flipped(self) -> "Variance":
        return Variance.CONTRAVARIANT if self is Variance.COVARIANT else Variance.COVARIANT


@dataclass(frozen=True, eq=False)
class SetFunctor:
    base: FinCategory
    variance: Variance
    sets: Mapping[str, FinSet]
    actions: Mapping[str, FinFunction]
    name: str = ""

    @classmethod
    def build(
        cls,
        base: FinCategory,
        variance: Variance,
        sets: Mapping[str, Iterable[Element]],
        act: Callable[[str, Element], Element],
        name: str = "",
    ) -> "SetFunctor":
        """Build from per-object elements and an action `act(morphism, x)`."""
        finsets = {o: FinSet.of(sets[o], o) for o in base.objects}
        actions = {}
        for m in base.morphisms:
            src, dst = (m.dom, m.cod) if variance is Variance.COVARIANT else (m.cod, m.dom)
            actions[m.name] = FinFunction.build(finsets[src], finsets[dst], lambda x, _m=m.name: act(_m, x))
        return cls(base, variance, finsets, actions, name)

    @property
    def covariant(self) -> bool:
        return self.variance is Variance.COVARIANT

    @property
    def label(self) -> str:
        return self.name or ("functor" if self.covariant else "presheaf")

    def at(self, obj: str) -> FinSet:
        try:
            return self.sets[obj]
        except KeyError:
            raise UnknownObject(f"{obj!r} is not an object of {self.base.label}", obj) from None

    def action(self, morphism: str) -> FinFunction:
        return self.actions[morphism]

    def act(self, morphism: str, x: Element) -> Element:
        return self.actions[morphism](x)

    def size_profile(self) -> Tuple[int, ...]:
        return tuple(len(self.sets[o]) for o in self.base.objects)

    def total_size(self) -> int:
        return sum(self.size_profile())

    def elements(self) -> Iterator[Tuple[str, Element]]:
        for obj in self.base.objects:
            for x in self.sets[obj]:
                yield obj, x

    def opposite_view(self) -> "SetFunctor":
        """The same data read on the opposite base with flipped variance."""
        return SetFunctor(opposite(self.base), self.variance.flipped, self.sets, self.actions, self.name)

    def validate(self) -> None:
        c = self.base
        for obj in c.objects:
            if obj not in self.sets:
                raise FunctorLawError(f"{self.label} has no set at {obj}", obj)
        for m in c.morphisms:
            fn = self.actions.get(m.name)
            if fn is None:
                raise FunctorLawError(f"{self.label} has no action for {m.name}", m.name)
            src, dst = (m.dom, m.cod) if self.covariant else (m.cod, m.dom)
            if fn.dom != self.sets[src] or fn.cod != self.sets[dst] or not fn.is_total():
                raise FunctorLawError(f"action of {m.name} in {self.label} has the wrong type", m.name)
        for obj in c.objects:
            if self.actions[c.identities[obj]] != FinFunction.identity(self.sets[obj]):
                raise FunctorLawError(f"{self.label} does not fix the identity of {obj}", obj)
        for g, f in c.composable_pairs():
            lhs = self.actions[c.compose(g, f)]
            if self.covariant:
                rhs = self.actions[g].after(self.actions[f])
            else:
                rhs = self.actions[f].after(self.actions[g])
            if lhs != rhs:
                raise FunctorLawError(f"{self.label} does not preserve {g} ∘ {f}", g, f)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SetFunctor):
            return NotImplemented
        return (
            self.base == other.base
            and self.variance == other.variance
            and dict(self.sets) == dict(other.sets)
            and dict(self.actions) == dict(other.actions)
        )

    def __hash__(self) -> int:
        return hash((self.base, self.variance, self.size_profile()))


def hom_functor(c: FinCategory, x: str, variance: Variance = Variance.COVARIANT) -> SetFunctor:
    c.check_object(x)
    if variance is Variance.COVARIANT:
        return SetFunctor.build(
            c, variance, {a: c.hom(x, a) for a in c.objects}, lambda g, f: c.compose(g, f), f"{c.label}({x},-)"
        )
    return SetFunctor.build(
        c, variance, {a: c.hom(a, x) for a in c.objects}, lambda g, f: c.compose(f, g), f"{c.label}(-,{x})"
    )


def constant_set_functor(
    c: FinCategory, elements: Iterable[Element], variance: Variance = Variance.COVARIANT, name: str = ""
) -> SetFunctor:
    elements = list(elements)
    return SetFunctor.build(c, variance, {o: elements for o in c.objects}, lambda _m, x: x, name)


def singleton_functor(c: FinCategory, variance: Variance = Variance.COVARIANT) -> SetFunctor:
    return constant_set_functor(c, [POINT], variance, "1")


def empty_functor(c: FinCategory, variance: Variance = Variance.COVARIANT) -> SetFunctor:
    return constant_set_functor(c, [], variance, "0")


def precompose(s: SetFunctor, f: FunctorData) -> SetFunctor:
    """S ∘ F: reindex the set functor S along F."""
    if f.target != s.base:
        raise BaseMismatch(f"{s.label} does not live on the target of {f.label}", s.label, f.label)
    sets = {o: s.sets[f.obj_map[o]] for o in f.source.objects}
    actions = {m.name: s.actions[f.mor_map[m.name]] for m in f.source.morphisms}
    return SetFunctor(f.source, s.variance, sets, actions, f"{s.label}∘{f.label}")


# ---------------------------------------------------------------------------
# Natural transformations
# ---------------------------------------------------------------------------


def _require_same_shape(f: SetFunctor, g: SetFunctor) -> None:
    if f.base != g.base:
        raise BaseMismatch(f"{f.label} and {g.label} live on different categories", f.label, g.label)
    if f.variance != g.variance:
        raise BaseMismatch(f"{f.label} and {g.label} have different variance", f.label, g.label)


@dataclass(frozen=True, eq=False)
class NatTransformation:
    source: SetFunctor
    target: SetFunctor
    components: Mapping[str, FinFunction]

    def __call__(self, obj: str, x: Element) -> Element:
        return self.components[obj](x)

    @classmethod
    def identity(cls, f: SetFunctor) -> "NatTransformation":
        return cls(f, f, {o: FinFunction.identity(f.sets[o]) for o in f.base.objects})

    def validate(self) -> None:
        _require_same_shape(self.source, self.target)
        base = self.source.base
        for obj in base.objects:
            comp = self.components.get(obj)
            if comp is None or comp.dom != self.source.sets[obj] or comp.cod != self.target.sets[obj]:
                raise NaturalityError(f"component at {obj} has the wrong type", obj)
        for m in base.morphisms:
            a, b = (m.dom, m.cod) if self.source.covariant else (m.cod, m.dom)
            lhs = self.target.actions[m.name].after(self.components[a])
            rhs = self.components[b].after(self.source.actions[m.name])
            if lhs != rhs:
                raise NaturalityError(f"naturality square for {m.name} does not commute", m.name)

    def after(self, other: "NatTransformation") -> "NatTransformation":
        """Vertical composite self ∘ other."""
        return NatTransformation(
            other.source,
            self.target,
            {o: self.components[o].after(other.components[o]) for o in other.source.base.objects},
        )

    def is_isomorphism(self) -> bool:
        return all(c.is_bijective() for c in self.components.values())

    def inverse(self) -> "NatTransformation":
        return NatTransformation(self.target, self.source, {o: c.inverse() for o, c in self.components.items()})

    def key(self) -> Tuple:
        return tuple(tuple(render(y) for y in self.components[o].as_tuple()) for o in self.source.base.objects)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, NatTransformation):
            return NotImplemented
        base = self.source.base.objects
        return all(self.components[o] == other.components[o] for o in base)

    def __hash__(self) -> int:
        return hash(self.key())


def naturality_constraints(f: SetFunctor, g: SetFunctor) -> Iterator[Tuple[Tuple, Tuple, Callable]]:
    """Binary constraints between component values (obj, x) of F ⇒ G."""
    base = f.base
    for m in base.morphisms:
        if base.is_identity(m.name):
            continue
        a, b = (m.dom, m.cod) if f.covariant else (m.cod, m.dom)
        action = g.actions[m.name]
        for x in f.sets[a]:
            v_src = (a, x)
            v_dst = (b, f.actions[m.name](x))
            yield v_src, v_dst, (lambda ya, yb, _act=action: _act(ya) == yb)


def nat_transformations_direct(
    f: SetFunctor, g: SetFunctor, cap: Optional[int] = None
) -> List[NatTransformation]:
    """Every natural transformation F ⇒ G, in canonical order."""
    # search builds on this module's types
    from .search import Budget, ConstraintSearch

    _require_same_shape(f, g)
    budget = Budget("nat_transformations_direct", cap)
    domains = {(o, x): g.sets[o].elements for o, x in f.elements()}
    search = ConstraintSearch(domains, budget)
    for v_src, v_dst, check in naturality_constraints(f, g):
        search.require((v_src, v_dst), check)
    result = []
    for solution in search.solutions():
        components = {
            o: FinFunction(f.sets[o], g.sets[o], {x: solution[(o, x)] for x in f.sets[o]}) for o in f.base.objects
        }
        result.append(NatTransformation(f, g, components))
    result.sort(key=NatTransformation.key)
    logger.debug(f"Nat({f.label}, {g.label}): {len(result)} transformations")
    return result


def yoneda_transformation(s: SetFunctor, x: str, element: Element) -> NatTransformation:
    """The transformation hom(X,-) ⇒ S (or hom(-,X) ⇒ S) sending id_X to `element`."""
    h = hom_functor(s.base, x, s.variance)
    components = {
        a: FinFunction.build(h.sets[a], s.sets[a], lambda f: s.actions[f](element)) for a in s.base.objects
    }
    return NatTransformation(h, s, components)


# ---------------------------------------------------------------------------
# Weighted diagrams and cones
# ---------------------------------------------------------------------------

Diagram = Union[FunctorData, SetFunctor]


@dataclass(frozen=True, eq=False)
class WeightedDiagram:
    diagram: Diagram
    weight: SetFunctor
    name: str = ""

    @property
    def set_valued(self) -> bool:
        return isinstance(self.diagram, SetFunctor)

    @property
    def index(self) -> FinCategory:
        return self.diagram.base if isinstance(self.diagram, SetFunctor) else self.diagram.source

    def validate(self) -> None:
        if self.weight.base != self.index:
            raise BaseMismatch("weight base differs from the diagram source", self.weight.label)
        if self.set_valued and not self.diagram.covariant:
            raise BaseMismatch("Set-valued diagrams must be covariant", self.diagram.label)
        self.diagram.validate()
        self.weight.validate()

    def positions(self) -> Tuple[Tuple[str, Element], ...]:
        """Leg positions (J, w) in canonical order."""
        return tuple((j, w) for j in self.index.objects for w in self.weight.sets[j])


@dataclass(frozen=True, eq=False)
class WeightedCone:
    """Legs indexed by (J, w). A leg is a morphism name of C, or a FinFunction
    when the diagram is Set-valued."""

    tip: Union[str, FinSet]
    legs: Mapping[Tuple[str, Element], Union[str, FinFunction]]

    def leg(self, j: str, w: Element) -> Union[str, FinFunction]:
        return self.legs[(j, w)]


# ---------------------------------------------------------------------------
# Extension categories
# ---------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class Extension:
    """A category with one extra object whose arrows are marked virtual."""

    category: FinCategory
    base: FinCategory
    extra: str
    virtual: Mapping[str, Tuple[str, str, Element]]

    def inclusion(self) -> FunctorData:
        return FunctorData(
            self.base,
            self.category,
            {o: o for o in self.base.objects},
            {m.name: m.name for m in self.base.morphisms},
            "inclusion",
        )

    def is_virtual(self, morphism: str) -> bool:
        return morphism in self.virtual

    def virtual_arrow(self, source: str, target: str, element: Element) -> str:
        for name, data in self.virtual.items():
            if data == (source, target, element):
                return name
        raise UnknownObject(f"no virtual arrow {source}->{target} labelled {render(element)}", element)


def fresh_object(c: FinCategory) -> str:
    extra = settings.extra_object
    while c.has_object(extra):
        extra += "'"
    return extra


def extend(c: FinCategory, s: SetFunctor) -> Extension:
    """Add an object E with hom(E,A) = S(A) (or hom(A,E) = S(A) for presheaves)."""
    if s.base != c:
        raise BaseMismatch(f"{s.label} does not live on {c.label}", s.label)
    e = fresh_object(c)
    id_e = f"id_{e}"
    morphisms = list(c.morphisms) + [Morphism(id_e, e, e)]
    identities = dict(c.identities)
    identities[e] = id_e
    comp = dict(c.comp)
    comp[(id_e, id_e)] = id_e
    virtual: Dict[str, Tuple[str, str, Element]] = {}
    arrow: Dict[Tuple[str, Element], str] = {}
    for a, x in s.elements():
        src, dst = (e, a) if s.covariant else (a, e)
        name = virtual_name(src, dst, x)
        virtual[name] = (src, dst, x)
        arrow[(a, x)] = name
        morphisms.append(Morphism(name, src, dst))
    for (a, x), name in arrow.items():
        if s.covariant:
            comp[(name, id_e)] = name
            for g in c.hom_from(a):
                comp[(g, name)] = arrow[(c.cod(g), s.act(g, x))]
        else:
            comp[(id_e, name)] = name
            for g in c.hom_into(a):
                comp[(name, g)] = arrow[(c.dom(g), s.act(g, x))]
    category = FinCategory.build(c.objects + (e,), morphisms, identities, comp, f"{c.label}+{s.label}")
    logger.debug(f"extend({c.label}, {s.label}): {category.summary()}")
    return Extension(category, c, e, virtual)
