# catbench/catalog.py

"""Named small categories and a seeded random-category generator."""

import itertools
import logging
import random
from typing import Callable, Dict, List, Sequence, Tuple

from .fincat import FinCategory, Morphism, SetFunctor, Variance, discrete_category, opposite
from .search import enumerate_functors

logger = logging.getLogger(__name__)


def one() -> FinCategory:
    return FinCategory.build(["*"], [("id_*", "*", "*")], {"*": "id_*"}, {("id_*", "id_*"): "id_*"}, "one")


def pair() -> FinCategory:
    return discrete_category(["0", "1"], "pair")


def _with_identities(
    objects: Sequence[str], arrows: Sequence[Tuple[str, str, str]], table: Dict[Tuple[str, str], str], name: str
) -> FinCategory:
    """Add identities and their trivial compositions to a non-identity table."""
    ids = {o: f"id_{o}" for o in objects}
    return _with_named_identities(objects, arrows, table, name, ids)


def _with_named_identities(objects, arrows, table, name, ids) -> FinCategory:
    morphisms = [Morphism(ids[o], o, o) for o in objects] + [Morphism(*a) for a in arrows]
    comp = dict(table)
    for m in morphisms:
        comp[(ids[m.cod], m.name)] = m.name
        comp[(m.name, ids[m.dom])] = m.name
    return FinCategory.build(objects, morphisms, ids, comp, name)


def arr() -> FinCategory:
    return _with_identities(["0", "1"], [("a", "0", "1")], {}, "arr")


def parpair() -> FinCategory:
    return _with_identities(["0", "1"], [("u", "0", "1"), ("v", "0", "1")], {}, "parpair")


def idem() -> FinCategory:
    return _with_named_identities(["x"], [("e", "x", "x")], {("e", "e"): "e"}, "idem", {"x": "id"})


def split_idem() -> FinCategory:
    table = {
        ("p", "i"): "id_s",
        ("i", "p"): "e",
        ("e", "e"): "e",
        ("e", "i"): "i",
        ("p", "e"): "p",
    }
    return _with_identities(["s", "x"], [("i", "s", "x"), ("p", "x", "s"), ("e", "x", "x")], table, "splitidem")


def poset01() -> FinCategory:
    return _with_identities(["0", "1"], [("le", "0", "1")], {}, "poset01")


def cyclic_group(n: int) -> FinCategory:
    """The group Z/n as a one-object category; g^k is named g, g2, g3, ..."""
    names = ["id"] + [("g" if k == 1 else f"g{k}") for k in range(1, n)]
    arrows = [(names[k], "*", "*") for k in range(1, n)]
    table = {(names[k], names[l]): names[(k + l) % n] for k in range(1, n) for l in range(1, n)}
    return _with_named_identities(["*"], arrows, table, f"z{n}", {"*": "id"})


def terminal_poset() -> FinCategory:
    """The poset 0 ≤ 1 ≤ 2 whose top element 2 is terminal."""
    arrows = [("a", "0", "1"), ("b", "1", "2"), ("ba", "0", "2")]
    return _with_identities(["0", "1", "2"], arrows, {("b", "a"): "ba"}, "chain3")


def finsets(sizes: Sequence[int]) -> FinCategory:
    """Full subcategory of finite sets on {0..n-1} for each size (a fragment of Set)."""
    objects = [f"[{n}]" for n in sizes]

    def name(n: int, m: int, images: Tuple[int, ...]) -> str:
        return f"{n}>{m}:" + "".join(str(i) for i in images)

    morphisms, ids, funcs = [], {}, {}
    for n in sizes:
        for m in sizes:
            for images in itertools.product(range(m), repeat=n):
                label = name(n, m, images)
                morphisms.append(Morphism(label, f"[{n}]", f"[{m}]"))
                funcs[label] = (n, m, images)
        ids[f"[{n}]"] = name(n, n, tuple(range(n)))
    comp = {}
    for g, (gn, gm, gi) in funcs.items():
        for f, (fn, fm, fi) in funcs.items():
            if fm == gn:
                comp[(g, f)] = name(fn, gm, tuple(gi[i] for i in fi))
    return FinCategory.build(objects, morphisms, ids, comp, "finsets" + "".join(f"_{n}" for n in sizes))


def catalog() -> Dict[str, FinCategory]:
    """The named fixture categories."""
    builders: List[Callable[[], FinCategory]] = [one, pair, arr, parpair, idem, split_idem, poset01, terminal_poset]
    cats = {b().name: b() for b in builders}
    for n in (2, 3):
        cats[f"z{n}"] = cyclic_group(n)
    cats["z2disc"] = discrete_category(["I", "A"], "z2disc")
    cats["z3disc"] = discrete_category(["I", "A", "A2"], "z3disc")
    return cats


# ---------------------------------------------------------------------------
# Seeded random categories
# ---------------------------------------------------------------------------

_OBJECT_NAMES = "abcd"


def random_category(seed: int, max_objects: int = 4, max_morphisms: int = 12) -> FinCategory:
    """A random concrete category: functions between small sets, closed under composition.

    The same seed always yields the same category. Concrete categories are
    valid by construction and contain a good mix of idempotents, retracts and
    non-split idempotents.
    """
    rng = random.Random(seed)
    for attempt in range(50):
        k = rng.randint(1, max_objects)
        sizes = [rng.choice((1, 2, 2, 3)) for _ in range(k)]
        generators = rng.randint(0, max(0, max_morphisms - k))
        closed = _close(rng, sizes, generators, max_morphisms)
        if closed is not None:
            return _concrete_category(sizes, closed, f"random{seed}")
    logger.warning(f"random_category({seed}): falling back to a discrete category")
    return discrete_category(["a"], f"random{seed}")


Arrow = Tuple[int, int, Tuple[int, ...]]


def _close(rng: random.Random, sizes: List[int], generators: int, limit: int):
    k = len(sizes)
    arrows: List[Arrow] = [(i, i, tuple(range(sizes[i]))) for i in range(k)]
    seen = set(arrows)
    for _ in range(generators):
        i, j = rng.randrange(k), rng.randrange(k)
        arrow = (i, j, tuple(rng.randrange(sizes[j]) for _ in range(sizes[i])))
        if arrow not in seen:
            seen.add(arrow)
            arrows.append(arrow)
    changed = True
    while changed:
        changed = False
        for g in list(arrows):
            for f in list(arrows):
                if f[1] != g[0]:
                    continue
                h = (f[0], g[1], tuple(g[2][x] for x in f[2]))
                if h not in seen:
                    seen.add(h)
                    arrows.append(h)
                    changed = True
                    if len(arrows) > limit:
                        return None
    return arrows


def _concrete_category(sizes: List[int], arrows: List[Arrow], name: str) -> FinCategory:
    objects = [_OBJECT_NAMES[i] for i in range(len(sizes))]
    names: Dict[Arrow, str] = {}
    counter = 0
    for arrow in arrows:
        if arrow[0] == arrow[1] and arrow[2] == tuple(range(sizes[arrow[0]])):
            names[arrow] = f"id_{objects[arrow[0]]}"
        else:
            names[arrow] = f"m{counter}"
            counter += 1
    morphisms = [Morphism(names[a], objects[a[0]], objects[a[1]]) for a in arrows]
    ids = {objects[i]: f"id_{objects[i]}" for i in range(len(sizes))}
    comp = {}
    for g in arrows:
        for f in arrows:
            if f[1] == g[0]:
                comp[(names[g], names[f])] = names[(f[0], g[1], tuple(g[2][x] for x in f[2]))]
    return FinCategory.build(objects, morphisms, ids, comp, name)


def random_set_functor(
    c: FinCategory, seed: int, variance: Variance = Variance.COVARIANT, sizes: Sequence[int] = (0, 1, 2)
) -> SetFunctor:
    """A seeded functor from C (or C^op) into sets of the given sizes.

    Drawn from the first functors into the finite-set fragment on `sizes`, so
    every action is a genuine function and the functor laws hold.
    """
    rng = random.Random(seed)
    source = c if variance is Variance.COVARIANT else opposite(c)
    candidates = list(itertools.islice(enumerate_functors(source, finsets(sizes)), 200))
    chosen = rng.choice(candidates)

    def act(m: str, x: int) -> int:
        images = chosen.mor(m).split(":", 1)[1]
        return int(images[x])

    sets = {o: tuple(range(int(chosen.ob(o)[1:-1]))) for o in c.objects}
    return SetFunctor.build(c, variance, sets, act, f"F{seed}")
