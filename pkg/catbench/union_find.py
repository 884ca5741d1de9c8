# catbench/union_find.py

"""Disjoint subsets with canonical class names.

Classes are named by their least member under a caller-supplied sort key, so
the partition and its names do not depend on the order keys were unified in.
"""

from typing import Callable, Dict, Hashable, Iterable, Iterator, Tuple


class DisjointSubsets:
    """Stores keys in disjoint subsets that may be unified."""

    def __init__(self, keys: Iterable[Hashable] = ()):
        # parent is another key of the subset, or None for the representative
        self._parent: Dict[Hashable, Hashable] = {}
        self._size: Dict[Hashable, int] = {}
        for key in keys:
            self.add_key(key)

    def __contains__(self, key: Hashable) -> bool:
        return key in self._parent

    def __len__(self) -> int:
        return len(self._parent)

    def add_key(self, key: Hashable) -> None:
        if key in self._parent:
            return
        self._parent[key] = None
        self._size[key] = 1

    def rep(self, key: Hashable) -> Hashable:
        if key not in self._parent:
            raise KeyError(key)
        root = key
        while self._parent[root] is not None:
            root = self._parent[root]
        # path compression
        while key != root:
            parent = self._parent[key]
            if parent == root:
                break
            self._parent[key] = root
            key = parent
        return root

    def unify(self, key1: Hashable, key2: Hashable) -> bool:
        """Merge the subsets of both keys; False when they were already one."""
        rep1 = self.rep(key1)
        rep2 = self.rep(key2)
        if rep1 == rep2:
            return False
        if self._size[rep1] < self._size[rep2]:
            rep1, rep2 = rep2, rep1
        self._parent[rep2] = rep1
        self._size[rep1] += self._size.pop(rep2)
        return True

    def unified(self, key1: Hashable, key2: Hashable) -> bool:
        return self.rep(key1) == self.rep(key2)

    def key_reps(self) -> Iterator[Tuple[Hashable, Hashable]]:
        for key in self._parent:
            yield key, self.rep(key)

    def classes(self, sort_key: Callable[[Hashable], object]) -> Dict[Hashable, Tuple[Hashable, ...]]:
        """Map each class's least member to the sorted tuple of its members.

        The result is ordered by class name.
        """
        grouped: Dict[Hashable, list] = {}
        for key, rep in self.key_reps():
            grouped.setdefault(rep, []).append(key)
        named = {}
        for members in grouped.values():
            members.sort(key=sort_key)
            named[members[0]] = tuple(members)
        return {name: named[name] for name in sorted(named, key=sort_key)}
