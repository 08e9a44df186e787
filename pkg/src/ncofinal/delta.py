"""Arithmetic in the simplex category and its finite truncations."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations_with_replacement

from .category import FinCategory, Functor


class RankMismatch(ValueError):
    pass


@dataclass(frozen=True, order=True)
class MonotoneMap:
    """A weakly increasing map ``[m] -> [n]`` stored by its values."""

    values: tuple[int, ...]
    target_rank: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "values", tuple(self.values))
        if not self.values:
            raise ValueError("a monotone map needs at least one value")
        if any(a > b for a, b in zip(self.values, self.values[1:])):
            raise ValueError(f"{self.values} is not weakly increasing")
        if self.values[0] < 0 or self.values[-1] > self.target_rank:
            raise ValueError(f"{self.values} leaves [0, {self.target_rank}]")

    @property
    def source_rank(self) -> int:
        return len(self.values) - 1

    def __call__(self, i: int) -> int:
        return self.values[i]

    def is_injective(self) -> bool:
        return len(set(self.values)) == len(self.values)

    def is_surjective(self) -> bool:
        return len(set(self.values)) == self.target_rank + 1

    def is_identity(self) -> bool:
        return self.values == tuple(range(self.target_rank + 1))

    @classmethod
    def identity(cls, n: int) -> MonotoneMap:
        return cls(tuple(range(n + 1)), n)

    def __str__(self) -> str:
        return f"[{self.source_rank}]->[{self.target_rank}]:" + ",".join(map(str, self.values))


def coface(n: int, i: int) -> MonotoneMap:
    """``d^i: [n-1] -> [n]``, the injection missing ``i``."""
    if not 0 <= i <= n or n < 1:
        raise ValueError(f"no coface d^{i} into [{n}]")
    return MonotoneMap(tuple(j for j in range(n + 1) if j != i), n)


def codegeneracy(n: int, i: int) -> MonotoneMap:
    """``s^i: [n+1] -> [n]``, the surjection hitting ``i`` twice."""
    if not 0 <= i <= n:
        raise ValueError(f"no codegeneracy s^{i} onto [{n}]")
    return MonotoneMap(tuple(j if j <= i else j - 1 for j in range(n + 2)), n)


def compose(g: MonotoneMap, f: MonotoneMap) -> MonotoneMap:
    if f.target_rank != g.source_rank:
        raise RankMismatch(f"cannot compose {g} after {f}")
    return MonotoneMap(tuple(g.values[v] for v in f.values), g.target_rank)


def ez_factor(f: MonotoneMap) -> tuple[MonotoneMap, MonotoneMap]:
    """Epi-mono factorization ``f = injection . surjection``."""
    image = sorted(set(f.values))
    position = {v: k for k, v in enumerate(image)}
    surjection = MonotoneMap(tuple(position[v] for v in f.values), len(image) - 1)
    injection = MonotoneMap(tuple(image), f.target_rank)
    return surjection, injection


def enumerate_monotone(m: int, n: int) -> list[MonotoneMap]:
    return [MonotoneMap(v, n) for v in combinations_with_replacement(range(n + 1), m + 1)]


def surjections(m: int, n: int) -> list[MonotoneMap]:
    return [f for f in enumerate_monotone(m, n) if f.is_surjective()]


def obj(n: int) -> str:
    return f"[{n}]"


def _delta(N: int, injective: bool) -> FinCategory:
    if N < 0:
        raise ValueError("N must be non-negative")
    morphisms: dict[str, tuple[str, str]] = {}
    maps: dict[str, MonotoneMap] = {}
    for m in range(N + 1):
        for n in range(N + 1):
            for f in enumerate_monotone(m, n):
                if injective and not f.is_injective():
                    continue
                morphisms[str(f)] = (obj(m), obj(n))
                maps[str(f)] = f
    composition = {}
    for fid, f in maps.items():
        for gid, g in maps.items():
            if f.target_rank == g.source_rank:
                composition[(gid, fid)] = str(compose(g, f))
    identities = {obj(n): str(MonotoneMap.identity(n)) for n in range(N + 1)}
    return FinCategory(tuple(obj(n) for n in range(N + 1)), morphisms, identities, composition)


def delta_leq(N: int) -> FinCategory:
    """Full subcategory of the simplex category on ``[0], ..., [N]``."""
    return _delta(N, injective=False)


def delta_s_leq(N: int) -> FinCategory:
    """Objects ``[0], ..., [N]`` with injective monotone maps only."""
    return _delta(N, injective=True)


def morphism_map(fid: str) -> MonotoneMap:
    """Recover the monotone map from a morphism id of ``delta_leq``."""
    ranks, values = fid.split(":")
    n = int(ranks.split("->")[1].strip("[]"))
    return MonotoneMap(tuple(int(v) for v in values.split(",")), n)


def delta_inclusion(source: FinCategory, target: FinCategory) -> Functor:
    """The inclusion between two truncated simplex categories (either variant)."""
    missing = [m for m in source.morphisms if m not in target.morphisms]
    if missing:
        raise ValueError(f"{missing[0]} has no image in the target")
    return Functor(
        source,
        target,
        {o: o for o in source.objects},
        {m: m for m in source.morphisms},
    )
