# catbench/ends.py

"""Bifunctors into finite sets, wedges, ends, coends and the pairing ⟨P,F⟩.

A bifunctor B is contravariant in its first argument and covariant in its
second. Ends are computed as the set of compatible diagonal tuples by
constraint search; coends as a quotient of the disjoint union of diagonals
by union-find, with classes named by their least member.
"""

from __future__ import annotations

import logging
import random
from dataclasses import dataclass
from typing import Callable, Iterable, Mapping, Optional, Tuple, Union

from .errors import BaseMismatch, FunctorLawError, InvalidCone, InvalidWedge
from .fincat import (
    Element,
    FinCategory,
    FinFunction,
    FinSet,
    NatTransformation,
    SetFunctor,
    Variance,
    WeightedCone,
    _require_same_shape,
    all_functions,
    element_key,
    nat_transformations_direct,
    opposite,
    pair_name,
    product_category,
)
from .search import Budget, ConstraintSearch
from .union_find import DisjointSubsets

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class Bifunctor:
    contra: FinCategory
    co: FinCategory
    sets: Mapping[Tuple[str, str], FinSet]
    # (c: A'->A of contra, X) -> B(A,X) -> B(A',X)
    left: Mapping[Tuple[str, str], FinFunction]
    # (d: X->X' of co, A) -> B(A,X) -> B(A,X')
    right: Mapping[Tuple[str, str], FinFunction]
    name: str = ""

    @classmethod
    def build(
        cls,
        contra: FinCategory,
        co: FinCategory,
        sets: Callable[[str, str], Iterable[Element]],
        left: Callable[[str, str, Element], Element],
        right: Callable[[str, str, Element], Element],
        name: str = "",
    ) -> "Bifunctor":
        """`left(c, X, v)` and `right(d, A, v)` give the two actions on elements."""
        finsets = {(a, x): FinSet.of(sets(a, x), f"({a},{x})") for a in contra.objects for x in co.objects}
        lefts = {}
        for c in contra.morphisms:
            for x in co.objects:
                lefts[(c.name, x)] = FinFunction.build(
                    finsets[(c.cod, x)], finsets[(c.dom, x)], lambda v, _c=c.name, _x=x: left(_c, _x, v)
                )
        rights = {}
        for d in co.morphisms:
            for a in contra.objects:
                rights[(d.name, a)] = FinFunction.build(
                    finsets[(a, d.dom)], finsets[(a, d.cod)], lambda v, _d=d.name, _a=a: right(_d, _a, v)
                )
        return cls(contra, co, finsets, lefts, rights, name)

    @property
    def label(self) -> str:
        return self.name or "bifunctor"

    @property
    def base(self) -> FinCategory:
        if self.contra != self.co:
            raise BaseMismatch(f"{self.label} has different variables, it has no diagonal", self.label)
        return self.co

    def at(self, a: str, x: str) -> FinSet:
        return self.sets[(a, x)]

    def act_left(self, c: str, x: str, v: Element) -> Element:
        return self.left[(c, x)](v)

    def act_right(self, d: str, a: str, v: Element) -> Element:
        return self.right[(d, a)](v)

    def total_size(self) -> int:
        return sum(len(s) for s in self.sets.values())

    def validate(self) -> None:
        p, q = self.contra, self.co
        for x in q.objects:
            for a in p.objects:
                if self.left[(p.identities[a], x)] != FinFunction.identity(self.sets[(a, x)]):
                    raise FunctorLawError(f"{self.label} does not fix {p.identities[a]}", p.identities[a], x)
            for g, f in p.composable_pairs():
                if self.left[(p.compose(g, f), x)] != self.left[(f, x)].after(self.left[(g, x)]):
                    raise FunctorLawError(f"{self.label} does not preserve {g} ∘ {f}", g, f, x)
        for a in p.objects:
            for x in q.objects:
                if self.right[(q.identities[x], a)] != FinFunction.identity(self.sets[(a, x)]):
                    raise FunctorLawError(f"{self.label} does not fix {q.identities[x]}", q.identities[x], a)
            for g, f in q.composable_pairs():
                if self.right[(q.compose(g, f), a)] != self.right[(g, a)].after(self.right[(f, a)]):
                    raise FunctorLawError(f"{self.label} does not preserve {g} ∘ {f}", g, f, a)
        for c in p.morphisms:
            for d in q.morphisms:
                one_way = self.right[(d.name, c.dom)].after(self.left[(c.name, d.dom)])
                other_way = self.left[(c.name, d.cod)].after(self.right[(d.name, c.cod)])
                if one_way != other_way:
                    raise FunctorLawError(f"{self.label} fails interchange at {c.name}, {d.name}", c.name, d.name)

    def as_set_functor(self) -> SetFunctor:
        """The same data as a covariant functor on contra^op × co."""
        index = product_category(opposite(self.contra), self.co)
        sets = {pair_name(a, x): self.sets[(a, x)] for a in self.contra.objects for x in self.co.objects}
        actions = {}
        for c in self.contra.morphisms:
            for d in self.co.morphisms:
                # (c, d): (A, X) -> (A', X') where c: A' -> A in contra
                actions[pair_name(c.name, d.name)] = self.right[(d.name, c.dom)].after(self.left[(c.name, d.dom)])
        return SetFunctor(index, Variance.COVARIANT, sets, actions, self.label)


def hom_bifunctor(c: FinCategory) -> Bifunctor:
    return Bifunctor.build(
        c,
        c,
        c.hom,
        lambda g, _x, f: c.compose(f, g),
        lambda d, _a, f: c.compose(d, f),
        f"{c.label}(-,-)",
    )


def product_bifunctor(p: SetFunctor, f: SetFunctor) -> Bifunctor:
    """(A, X) ↦ P(A) × F(X) for a presheaf P and a functor F."""
    if p.covariant or not f.covariant:
        raise BaseMismatch("product_bifunctor takes a presheaf and a functor", p.label, f.label)
    return Bifunctor.build(
        p.base,
        f.base,
        lambda a, x: [(u, v) for u in p.sets[a] for v in f.sets[x]],
        lambda c, _x, pair: (p.act(c, pair[0]), pair[1]),
        lambda d, _a, pair: (pair[0], f.act(d, pair[1])),
        f"{p.label}×{f.label}",
    )


def copower_bifunctor(w: SetFunctor, d: SetFunctor) -> Bifunctor:
    """(J, K) ↦ W(J) × D(K): the coend of this is the W-weighted colimit of D."""
    return product_bifunctor(w, d)


def power_bifunctor(w: SetFunctor, d: SetFunctor, cap: Optional[int] = None) -> Bifunctor:
    """(J, K) ↦ functions W(J) -> D(K), as image tuples aligned with W(J)."""
    _require_same_shape(w, d)
    if not w.covariant:
        raise BaseMismatch("power_bifunctor takes two covariant functors", w.label, d.label)
    budget = Budget("power_bifunctor", cap)
    for j in w.base.objects:
        for k in w.base.objects:
            budget.reserve(len(d.sets[k]) ** len(w.sets[j]))
            budget.tick(len(d.sets[k]) ** len(w.sets[j]))
    base = w.base
    positions = {j: {x: i for i, x in enumerate(w.sets[j])} for j in base.objects}

    def precompose(c: str, _k: str, z: Tuple) -> Tuple:
        source = base.dom(c)
        target = base.cod(c)
        return tuple(z[positions[target][w.act(c, x)]] for x in w.sets[source])

    return Bifunctor.build(
        base,
        base,
        lambda j, k: all_functions(w.sets[j], d.sets[k]),
        precompose,
        lambda g, _j, z: tuple(d.act(g, y) for y in z),
        f"{d.label}^{w.label}",
    )


# ---------------------------------------------------------------------------
# Ends
# ---------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class Wedge:
    tip: FinSet
    legs: Mapping[str, FinFunction]

    def check(self, b: Bifunctor) -> None:
        base = b.base
        for g in base.morphisms:
            j, k = g.dom, g.cod
            lhs = b.right[(g.name, j)].after(self.legs[j])
            rhs = b.left[(g.name, k)].after(self.legs[k])
            if lhs != rhs:
                raise InvalidWedge(f"wedge diamond fails at {g.name}", g.name)


@dataclass(frozen=True, eq=False)
class EndResult:
    bifunctor: Bifunctor
    carrier: FinSet

    def leg(self, obj: str) -> FinFunction:
        i = self.bifunctor.base.objects.index(obj)
        return FinFunction.build(self.carrier, self.bifunctor.sets[(obj, obj)], lambda t: t[i])

    def wedge(self) -> Wedge:
        return Wedge(self.carrier, {j: self.leg(j) for j in self.bifunctor.base.objects})

    def mediate(self, wedge: Wedge) -> FinFunction:
        """The unique map from a wedge's tip into the end."""
        wedge.check(self.bifunctor)
        objects = self.bifunctor.base.objects
        return FinFunction.build(wedge.tip, self.carrier, lambda t: tuple(wedge.legs[j](t) for j in objects))

    def __len__(self) -> int:
        return len(self.carrier)


def end_of(b: Bifunctor, cap: Optional[int] = None) -> EndResult:
    base = b.base
    budget = Budget("end_of", cap)
    domains = {j: b.sets[(j, j)].elements for j in base.objects}
    search = ConstraintSearch(domains, budget)
    for g in base.morphisms:
        if base.is_identity(g.name):
            continue
        j, k = g.dom, g.cod
        search.require(
            (j, k),
            lambda xj, xk, _r=b.right[(g.name, j)], _l=b.left[(g.name, k)]: _r(xj) == _l(xk),
        )
    tuples = [tuple(solution[j] for j in base.objects) for solution in search.solutions()]
    logger.debug(f"end of {b.label}: {len(tuples)} tuples, {budget.used} steps")
    return EndResult(b, FinSet.of(tuples, f"end {b.label}"))


# ---------------------------------------------------------------------------
# Coends and pairings
# ---------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class CoWedge:
    tip: FinSet
    legs: Mapping[str, FinFunction]


@dataclass(frozen=True, eq=False)
class CoendResult:
    carrier: FinSet
    classes: Mapping[Element, Tuple[Element, ...]]
    lookup: Mapping[Element, Element]

    @classmethod
    def from_partition(cls, groups: Iterable[Iterable[Element]], label: str = "") -> "CoendResult":
        named = {}
        for members in groups:
            members = sorted(members, key=element_key)
            if members:
                named[members[0]] = tuple(members)
        classes = {name: named[name] for name in sorted(named, key=element_key)}
        lookup = {m: name for name, members in classes.items() for m in members}
        return cls(FinSet(tuple(classes), label), classes, lookup)

    def class_of(self, member: Element) -> Element:
        return self.lookup[member]

    def members(self, name: Element) -> Tuple[Element, ...]:
        return self.classes[name]

    def factor(self, cowedge: CoWedge) -> FinFunction:
        """The unique map out of the quotient through which a co-wedge factors."""
        images = {}
        for name, members in self.classes.items():
            values = {cowedge.legs[m[0]](m[1] if len(m) == 2 else tuple(m[1:])) for m in members}
            if len(values) != 1:
                raise InvalidWedge(f"co-wedge is not constant on the class of {name}", name)
            images[name] = values.pop()
        return FinFunction(self.carrier, cowedge.tip, images)

    def __len__(self) -> int:
        return len(self.carrier)


def coend_of(b: Bifunctor, cap: Optional[int] = None, shuffle_seed: Optional[int] = None) -> CoendResult:
    """Quotient of ⊔_J B(J,J) by x·g ~ g·x.

    `shuffle_seed` permutes the order identifications are applied in; the
    result never depends on it.
    """
    base = b.base
    budget = Budget("coend_of", cap)
    budget.reserve(sum(len(b.sets[(j, j)]) for j in base.objects))
    uf = DisjointSubsets((j, x) for j in base.objects for x in b.sets[(j, j)])
    identifications = []
    for g in base.morphisms:
        if base.is_identity(g.name):
            continue
        j, k = g.dom, g.cod
        to_j = b.left[(g.name, j)]
        to_k = b.right[(g.name, k)]
        for x in b.sets[(k, j)]:
            budget.tick()
            identifications.append(((j, to_j(x)), (k, to_k(x))))
    if shuffle_seed is not None:
        random.Random(shuffle_seed).shuffle(identifications)
    for u, v in identifications:
        uf.unify(u, v)
    classes = uf.classes(element_key)
    result = CoendResult.from_partition(classes.values(), f"coend {b.label}")
    logger.debug(f"coend of {b.label}: {len(result)} classes")
    return result


def pairing(p: SetFunctor, f: SetFunctor, cap: Optional[int] = None) -> CoendResult:
    """⟨P,F⟩ = ∫^A P(A) × F(A); classes of triples [A, p, f]."""
    if p.base != f.base:
        raise BaseMismatch(f"{p.label} and {f.label} live on different categories", p.label, f.label)
    coend = coend_of(product_bifunctor(p, f), cap)
    groups = [[(a, pf[0], pf[1]) for a, pf in members] for members in coend.classes.values()]
    return CoendResult.from_partition(groups, f"⟨{p.label},{f.label}⟩")


# ---------------------------------------------------------------------------
# Natural transformations as an end
# ---------------------------------------------------------------------------


def _covariant_pair(f: SetFunctor, g: SetFunctor) -> Tuple[SetFunctor, SetFunctor]:
    _require_same_shape(f, g)
    if f.covariant:
        return f, g
    return f.opposite_view(), g.opposite_view()


def nat_transformations_end(f: SetFunctor, g: SetFunctor, cap: Optional[int] = None) -> EndResult:
    """Nat(F, G) as the end of (C, C') ↦ Set(F C, G C')."""
    f_co, g_co = _covariant_pair(f, g)
    return end_of(power_bifunctor(f_co, g_co, cap), cap)


def transformation_from_end_element(f: SetFunctor, g: SetFunctor, element: Tuple) -> NatTransformation:
    objects = f.base.objects
    components = {
        o: FinFunction(f.sets[o], g.sets[o], dict(zip(f.sets[o].elements, element[i]))) for i, o in enumerate(objects)
    }
    return NatTransformation(f, g, components)


@dataclass(frozen=True, eq=False)
class NatOracleReport:
    agree: bool
    direct: Tuple[NatTransformation, ...]
    # end element -> the directly enumerated transformation with the same components
    bijection: Optional[Mapping[Tuple, NatTransformation]]


def nat_oracle_check(f: SetFunctor, g: SetFunctor, cap: Optional[int] = None) -> NatOracleReport:
    """Match Nat(F, G) as an end against the directly enumerated transformations."""
    end = nat_transformations_end(f, g, cap)
    direct = tuple(nat_transformations_direct(f, g, cap))
    known = set(direct)
    bijection = {}
    for z in end.carrier:
        alpha = transformation_from_end_element(f, g, z)
        if alpha not in known:
            logger.warning(f"end element {z!r} of Nat({f.label}, {g.label}) is not a direct transformation")
            break
        bijection[z] = alpha
    agree = (
        len(bijection) == len(end.carrier)
        and len(set(bijection.values())) == len(bijection)
        and len(bijection) == len(known) == len(direct)
    )
    if not agree:
        logger.warning(f"Nat({f.label}, {g.label}): {len(end.carrier)} via the end, {len(direct)} directly")
    return NatOracleReport(agree, direct, bijection if agree else None)


# ---------------------------------------------------------------------------
# Wedges and hom-weighted cones
# ---------------------------------------------------------------------------


def wedge_cone_convert(b: Bifunctor, w: Union[Wedge, WeightedCone]) -> Union[Wedge, WeightedCone]:
    """Translate between wedges over B and cones over B weighted by hom."""
    base = b.base
    if isinstance(w, Wedge):
        w.check(b)
        legs = {}
        for j in base.objects:
            for k in base.objects:
                for g in base.hom(j, k):
                    legs[(pair_name(j, k), g)] = b.right[(g, j)].after(w.legs[j])
        return WeightedCone(w.tip, legs)

    tip = w.tip
    for c in base.morphisms:
        for d in base.morphisms:
            # (c, d): (J, K) -> (J', K') on base^op × base
            j, j2, k, k2 = c.cod, c.dom, d.dom, d.cod
            action = b.right[(d.name, j2)].after(b.left[(c.name, k)])
            for g in base.hom(j, k):
                moved = base.compose_path(d.name, g, c.name)
                if action.after(w.legs[(pair_name(j, k), g)]) != w.legs[(pair_name(j2, k2), moved)]:
                    raise InvalidCone(f"cone leg at {g} is not natural along ({c.name},{d.name})", g, c.name, d.name)
    legs = {j: w.legs[(pair_name(j, j), base.identities[j])] for j in base.objects}
    wedge = Wedge(tip, legs)
    wedge.check(b)
    return wedge
