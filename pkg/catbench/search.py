# catbench/search.py

"""Bounded backtracking search and the structural searches built on it.

`ConstraintSearch` assigns a value to every variable from its finite domain,
checking n-ary constraints as soon as they are fully assigned and filtering the
domain of a constraint's last free variable ahead of time. Solutions come out
in a deterministic depth-first order. Every tried value is charged to a
`Budget`, which raises `SizeExceeded` once the configured cap is passed.
"""

from __future__ import annotations

import logging
from collections import defaultdict
from dataclasses import dataclass
from typing import Callable, Dict, Hashable, Iterator, List, Mapping, Optional, Sequence, Tuple

from .config import settings
from .errors import SizeExceeded
from .fincat import (
    FinCategory,
    FinFunction,
    FunctorData,
    NatTransformation,
    SetFunctor,
    _require_same_shape,
    naturality_constraints,
)

logger = logging.getLogger(__name__)


class Budget:
    """Counts enumeration steps of one operation against the size cap."""

    def __init__(self, operation: str, cap: Optional[int] = None):
        self.operation = operation
        self.cap = settings.size_cap if cap is None else cap
        self.used = 0

    def tick(self, n: int = 1) -> None:
        self.used += n
        if self.used > self.cap:
            logger.error(f"{self.operation}: size cap {self.cap} exceeded")
            raise SizeExceeded(self.operation, self.cap)

    def reserve(self, n: int) -> None:
        """Fail early when a known enumeration size is already too large."""
        if self.used + n > self.cap:
            logger.error(f"{self.operation}: needs {n} states, cap is {self.cap}")
            raise SizeExceeded(self.operation, self.cap)


@dataclass(frozen=True)
class _Constraint:
    variables: Tuple[Hashable, ...]
    check: Callable[..., bool]

    @property
    def scope(self) -> frozenset:
        return frozenset(self.variables)

    def holds(self, assignment: Mapping) -> bool:
        return bool(self.check(*(assignment[v] for v in self.variables)))

    def holds_with(self, assignment: Mapping, var: Hashable, value) -> bool:
        return bool(self.check(*(value if v == var else assignment[v] for v in self.variables)))


class ConstraintSearch:
    def __init__(
        self,
        domains: Mapping[Hashable, Sequence],
        budget: Budget,
        order: Optional[Sequence[Hashable]] = None,
    ):
        self.domains: Dict[Hashable, Tuple] = {v: tuple(d) for v, d in domains.items()}
        self.budget = budget
        if order is None:
            position = {v: i for i, v in enumerate(self.domains)}
            order = sorted(self.domains, key=lambda v: (len(self.domains[v]), position[v]))
        self.order: List[Hashable] = list(order)
        self._by_var: Dict[Hashable, List[_Constraint]] = defaultdict(list)

    def require(self, variables: Sequence[Hashable], check: Callable[..., bool]) -> None:
        constraint = _Constraint(tuple(variables), check)
        for v in constraint.scope:
            self._by_var[v].append(constraint)

    def distinct(self, variables: Sequence[Hashable]) -> None:
        variables = list(variables)
        for i, a in enumerate(variables):
            for b in variables[i + 1 :]:
                self.require((a, b), lambda x, y: x != y)

    def solutions(self) -> Iterator[Dict[Hashable, object]]:
        if any(not d for v, d in self.domains.items()):
            return
        yield from self._extend(0, {}, self.domains)

    def first(self) -> Optional[Dict[Hashable, object]]:
        return next(iter(self.solutions()), None)

    def count(self) -> int:
        return sum(1 for _ in self.solutions())

    def _extend(self, depth: int, assignment: Dict, live: Mapping[Hashable, Tuple]) -> Iterator[Dict]:
        if depth == len(self.order):
            yield dict(assignment)
            return
        var = self.order[depth]
        for value in live[var]:
            self.budget.tick()
            assignment[var] = value
            pruned = self._propagate(var, assignment, live)
            if pruned is not None:
                yield from self._extend(depth + 1, assignment, pruned)
            del assignment[var]

    def _propagate(self, var: Hashable, assignment: Mapping, live: Mapping) -> Optional[Mapping]:
        narrowed = None
        for c in self._by_var[var]:
            missing = [v for v in c.scope if v not in assignment]
            if not missing:
                if not c.holds(assignment):
                    return None
            elif len(missing) == 1:
                u = missing[0]
                if narrowed is None:
                    narrowed = dict(live)
                kept = tuple(val for val in narrowed[u] if c.holds_with(assignment, u, val))
                if not kept:
                    return None
                narrowed[u] = kept
        return live if narrowed is None else narrowed


# ---------------------------------------------------------------------------
# Functors, isomorphisms and equivalences of finite categories
# ---------------------------------------------------------------------------


def _functor_search(
    c: FinCategory,
    d: FinCategory,
    budget: Budget,
    bijective: bool = False,
    hom_sizes: bool = False,
) -> ConstraintSearch:
    domains: Dict[Hashable, Sequence] = {}
    for obj in c.objects:
        candidates = d.objects
        if hom_sizes:
            candidates = [y for y in d.objects if len(d.hom(y, y)) == len(c.hom(obj, obj))]
        domains[("ob", obj)] = candidates
    for m in c.morphisms:
        domains[("mor", m.name)] = [n.name for n in d.morphisms]
    order = [("ob", o) for o in c.objects]
    order += [("mor", m.name) for m in sorted(c.morphisms, key=lambda m: (not c.is_identity(m.name), m.name))]
    search = ConstraintSearch(domains, budget, order)

    for m in c.morphisms:
        search.require(
            (("ob", m.dom), ("ob", m.cod), ("mor", m.name)),
            lambda a, b, n: d.dom(n) == a and d.cod(n) == b,
        )
    for obj in c.objects:
        search.require(
            (("ob", obj), ("mor", c.identities[obj])),
            lambda y, n: d.identities[y] == n,
        )
    for (g, f), h in c.comp.items():
        if c.is_identity(g) or c.is_identity(f):
            continue
        search.require(
            (("mor", g), ("mor", f), ("mor", h)),
            lambda mg, mf, mh: d.cod(mf) == d.dom(mg) and d.compose(mg, mf) == mh,
        )
    if bijective:
        search.distinct([("ob", o) for o in c.objects])
        search.distinct([("mor", m.name) for m in c.morphisms])
    if hom_sizes:
        for a in c.objects:
            for b in c.objects:
                if a < b:
                    continue
                search.require(
                    (("ob", a), ("ob", b)),
                    lambda x, y, _a=a, _b=b: len(d.hom(x, y)) == len(c.hom(_a, _b))
                    and len(d.hom(y, x)) == len(c.hom(_b, _a)),
                )
        # faithful on each hom-set; with equal sizes this makes it full
        for a in c.objects:
            for b in c.objects:
                search.distinct([("mor", n) for n in c.hom(a, b)])
    return search


def _functor_from(c: FinCategory, d: FinCategory, solution: Mapping, name: str = "") -> FunctorData:
    return FunctorData(
        c,
        d,
        {o: solution[("ob", o)] for o in c.objects},
        {m.name: solution[("mor", m.name)] for m in c.morphisms},
        name,
    )


def enumerate_functors(c: FinCategory, d: FinCategory, cap: Optional[int] = None) -> Iterator[FunctorData]:
    budget = Budget("enumerate_functors", cap)
    if not c.objects:
        yield FunctorData(c, d, {}, {}, "empty")
        return
    for solution in _functor_search(c, d, budget).solutions():
        yield _functor_from(c, d, solution)


def find_isomorphism(c: FinCategory, d: FinCategory, cap: Optional[int] = None) -> Optional[FunctorData]:
    if len(c.objects) != len(d.objects) or len(c.morphisms) != len(d.morphisms):
        return None
    if not c.objects:
        return FunctorData(c, d, {}, {}, "iso")
    solution = _functor_search(c, d, Budget("find_isomorphism", cap), bijective=True).first()
    if solution is None:
        logger.debug(f"{c.label} and {d.label} are not isomorphic")
        return None
    return _functor_from(c, d, solution, "iso")


def find_equivalence(c: FinCategory, d: FinCategory, cap: Optional[int] = None) -> Optional[FunctorData]:
    """A fully faithful, essentially surjective functor C -> D, if any."""
    if not c.objects:
        return FunctorData(c, d, {}, {}, "equivalence") if not d.objects else None
    budget = Budget("find_equivalence", cap)
    for solution in _functor_search(c, d, budget, hom_sizes=True).solutions():
        images = {solution[("ob", o)] for o in c.objects}
        if all(any(d.isomorphic_objects(y, z) for z in images) for y in d.objects):
            return _functor_from(c, d, solution, "equivalence")
    logger.debug(f"{c.label} and {d.label} are not equivalent")
    return None


def is_fully_faithful(f: FunctorData) -> bool:
    s, t = f.source, f.target
    for a in s.objects:
        for b in s.objects:
            images = [f.mor_map[m] for m in s.hom(a, b)]
            if len(set(images)) != len(images) or len(images) != len(t.hom(f.obj_map[a], f.obj_map[b])):
                return False
    return True


# ---------------------------------------------------------------------------
# Natural isomorphisms of set functors
# ---------------------------------------------------------------------------


def _iso_search(f: SetFunctor, g: SetFunctor, budget: Budget) -> Optional[ConstraintSearch]:
    _require_same_shape(f, g)
    if f.size_profile() != g.size_profile():
        return None
    domains = {(o, x): g.sets[o].elements for o, x in f.elements()}
    search = ConstraintSearch(domains, budget)
    for v_src, v_dst, check in naturality_constraints(f, g):
        search.require((v_src, v_dst), check)
    for o in f.base.objects:
        search.distinct([(o, x) for x in f.sets[o]])
    return search


def _transformation(f: SetFunctor, g: SetFunctor, solution: Mapping) -> NatTransformation:
    return NatTransformation(
        f,
        g,
        {o: FinFunction(f.sets[o], g.sets[o], {x: solution[(o, x)] for x in f.sets[o]}) for o in f.base.objects},
    )


def natural_iso_search(f: SetFunctor, g: SetFunctor, cap: Optional[int] = None) -> Optional[NatTransformation]:
    """The canonically least natural isomorphism F ≅ G, or None."""
    found = natural_isomorphisms(f, g, cap, limit=None)
    return found[0] if found else None


def natural_isomorphisms(
    f: SetFunctor, g: SetFunctor, cap: Optional[int] = None, limit: Optional[int] = None
) -> List[NatTransformation]:
    search = _iso_search(f, g, Budget("natural_iso_search", cap))
    if search is None:
        return []
    result = []
    for solution in search.solutions():
        result.append(_transformation(f, g, solution))
        if limit is not None and len(result) >= limit:
            break
    result.sort(key=NatTransformation.key)
    return result
