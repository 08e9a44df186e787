from __future__ import annotations

from typing import Generic, Hashable, Iterable, TypeVar

T = TypeVar("T", bound=Hashable)


class UnionFind(Generic[T]):
    """Disjoint sets with path halving and union by size.

    ``classes()`` lists blocks in order of first insertion, so results are
    reproducible for a fixed insertion order.
    """

    def __init__(self, items: Iterable[T] = ()):
        self.parent: dict[T, T] = {}
        self.size: dict[T, int] = {}
        for x in items:
            self.add(x)

    def add(self, x: T) -> None:
        if x not in self.parent:
            self.parent[x] = x
            self.size[x] = 1

    def find(self, x: T) -> T:
        parent = self.parent
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(self, x: T, y: T) -> bool:
        rx, ry = self.find(x), self.find(y)
        if rx == ry:
            return False
        if self.size[rx] < self.size[ry]:
            rx, ry = ry, rx
        self.parent[ry] = rx
        self.size[rx] += self.size[ry]
        return True

    def classes(self) -> list[list[T]]:
        blocks: dict[T, list[T]] = {}
        for x in self.parent:
            blocks.setdefault(self.find(x), []).append(x)
        return list(blocks.values())

    def index(self) -> dict[T, int]:
        """Map each item to the position of its block in ``classes()``."""
        out: dict[T, int] = {}
        roots: dict[T, int] = {}
        for x in self.parent:
            r = self.find(x)
            out[x] = roots.setdefault(r, len(roots))
        return out

    def __len__(self) -> int:
        return sum(1 for x in self.parent if self.parent[x] == x)
