"""Finite categories and functors given by explicit composition tables."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product as iproduct
from typing import Iterable, Mapping


class CategoryError(ValueError):
    """Raised when a category or functor is structurally unusable."""


def mid(*parts: str) -> str:
    """Deterministic compound identifier used by every construction."""
    return "<" + ";".join(parts) + ">"


@dataclass(frozen=True)
class Violation:
    kind: str
    items: tuple

    def __str__(self) -> str:
        return f"{self.kind}: {', '.join(map(str, self.items))}"


@dataclass(eq=False)
class FinCategory:
    """A finite category.

    ``morphisms`` maps a morphism id to its ``(source, target)`` pair and
    ``composition`` maps ``(g, f)`` to ``g . f`` for every composable pair
    (``target(f) == source(g)``).
    """

    objects: tuple[str, ...]
    morphisms: dict[str, tuple[str, str]]
    identities: dict[str, str]
    composition: dict[tuple[str, str], str]
    _hom: dict[tuple[str, str], tuple[str, ...]] = field(init=False, repr=False)

    def __post_init__(self) -> None:
        self.objects = tuple(sorted(set(self.objects)))
        hom: dict[tuple[str, str], list[str]] = {}
        for m in sorted(self.morphisms):
            hom.setdefault(self.morphisms[m], []).append(m)
        self._hom = {k: tuple(v) for k, v in hom.items()}

    @classmethod
    def build(
        cls,
        objects: Iterable[str],
        morphisms: Mapping[str, tuple[str, str]],
        identities: Mapping[str, str],
        composition: Mapping[tuple[str, str], str],
    ) -> FinCategory:
        """Build a category, filling in the composites involving identities."""
        morphisms = {m: tuple(st) for m, st in morphisms.items()}
        identities = dict(identities)
        for obj, i in identities.items():
            morphisms.setdefault(i, (obj, obj))
        table = dict(composition)
        for m, (s, t) in morphisms.items():
            if s in identities:
                table.setdefault((m, identities[s]), m)
            if t in identities:
                table.setdefault((identities[t], m), m)
        return cls(tuple(objects), morphisms, identities, table)

    def source(self, m: str) -> str:
        return self.morphisms[m][0]

    def target(self, m: str) -> str:
        return self.morphisms[m][1]

    def identity(self, obj: str) -> str:
        return self.identities[obj]

    def is_identity(self, m: str) -> bool:
        return self.identities.get(self.morphisms[m][0]) == m

    def compose(self, g: str, f: str) -> str:
        try:
            return self.composition[(g, f)]
        except KeyError:
            raise CategoryError(f"{g} . {f} is not composable") from None

    def compose_path(self, *arrows: str) -> str:
        """Compose right-to-left: ``compose_path(h, g, f) == h . g . f``."""
        result = arrows[-1]
        for g in reversed(arrows[:-1]):
            result = self.compose(g, result)
        return result

    def hom(self, a: str, b: str) -> tuple[str, ...]:
        return self._hom.get((a, b), ())

    def out_of(self, a: str) -> list[str]:
        return [m for b in self.objects for m in self.hom(a, b)]

    def into(self, b: str) -> list[str]:
        return [m for a in self.objects for m in self.hom(a, b)]

    def non_identity(self) -> list[str]:
        return [m for m in sorted(self.morphisms) if not self.is_identity(m)]

    def __len__(self) -> int:
        return len(self.objects)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FinCategory):
            return NotImplemented
        return (
            self.objects == other.objects
            and self.morphisms == other.morphisms
            and self.identities == other.identities
            and self.composition == other.composition
        )

    def __repr__(self) -> str:
        return f"FinCategory({len(self.objects)} objects, {len(self.morphisms)} morphisms)"


def validate(C: FinCategory) -> list[Violation]:
    """Every broken category axiom, with the offending morphisms."""
    out: list[Violation] = []
    objs = set(C.objects)
    for m, (s, t) in sorted(C.morphisms.items()):
        if s not in objs or t not in objs:
            out.append(Violation("unknown endpoint", (m, s, t)))
    for obj in C.objects:
        i = C.identities.get(obj)
        if i is None:
            out.append(Violation("missing identity", (obj,)))
        elif C.morphisms.get(i) != (obj, obj):
            out.append(Violation("identity has wrong endpoints", (obj, i)))
    if out:
        return out
    for (g, f), h in sorted(C.composition.items()):
        if g not in C.morphisms or f not in C.morphisms or h not in C.morphisms:
            out.append(Violation("unknown morphism in table", (g, f, h)))
        elif C.target(f) != C.source(g):
            out.append(Violation("composite of non-composable pair", (g, f)))
        elif C.morphisms[h] != (C.source(f), C.target(g)):
            out.append(Violation("mistargeted composite", (g, f, h)))
    if out:
        return out
    for f in sorted(C.morphisms):
        for g in C.out_of(C.target(f)):
            if (g, f) not in C.composition:
                out.append(Violation("missing composite", (g, f)))
    if out:
        return out
    for f, (s, t) in sorted(C.morphisms.items()):
        if C.composition[(f, C.identities[s])] != f or C.composition[(C.identities[t], f)] != f:
            out.append(Violation("identity law", (f,)))
    for f in sorted(C.morphisms):
        for g in C.out_of(C.target(f)):
            gf = C.composition[(g, f)]
            for h in C.out_of(C.target(g)):
                if C.composition[(h, gf)] != C.composition[(C.composition[(h, g)], f)]:
                    out.append(Violation("associativity", (h, g, f)))
    return out


def check(C: FinCategory) -> FinCategory:
    problems = validate(C)
    if problems:
        raise CategoryError("; ".join(map(str, problems[:5])))
    return C


@dataclass(eq=False)
class Functor:
    domain: FinCategory
    codomain: FinCategory
    object_map: dict[str, str]
    morphism_map: dict[str, str]

    def __call__(self, x: str) -> str:
        if x in self.object_map:
            return self.object_map[x]
        return self.morphism_map[x]

    def ob(self, x: str) -> str:
        return self.object_map[x]

    def mor(self, m: str) -> str:
        return self.morphism_map[m]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Functor):
            return NotImplemented
        return (
            self.domain == other.domain
            and self.codomain == other.codomain
            and self.object_map == other.object_map
            and self.morphism_map == other.morphism_map
        )

    def __repr__(self) -> str:
        return f"Functor({self.domain!r} -> {self.codomain!r})"


def validate_functor(F: Functor) -> list[Violation]:
    C, D = F.domain, F.codomain
    out: list[Violation] = []
    for obj in C.objects:
        if F.object_map.get(obj) not in D.identities:
            out.append(Violation("object not mapped", (obj,)))
    for m in sorted(C.morphisms):
        if F.morphism_map.get(m) not in D.morphisms:
            out.append(Violation("morphism not mapped", (m,)))
    if out:
        return out
    for m, (s, t) in sorted(C.morphisms.items()):
        if D.morphisms[F.morphism_map[m]] != (F.object_map[s], F.object_map[t]):
            out.append(Violation("endpoints not preserved", (m,)))
    for obj in C.objects:
        if F.morphism_map[C.identities[obj]] != D.identities[F.object_map[obj]]:
            out.append(Violation("identity not preserved", (obj,)))
    if out:
        return out
    for (g, f), h in sorted(C.composition.items()):
        if D.composition[(F.morphism_map[g], F.morphism_map[f])] != F.morphism_map[h]:
            out.append(Violation("composition not preserved", (g, f)))
    return out


def check_functor(F: Functor) -> Functor:
    problems = validate_functor(F)
    if problems:
        raise CategoryError("; ".join(map(str, problems[:5])))
    return F


# -- small standard categories and functors ---------------------------------


def terminal() -> FinCategory:
    return FinCategory.build(["*"], {"id_*": ("*", "*")}, {"*": "id_*"}, {})


def discrete(objects: Iterable[str]) -> FinCategory:
    objects = sorted(objects)
    return FinCategory.build(
        objects, {f"id_{o}": (o, o) for o in objects}, {o: f"id_{o}" for o in objects}, {}
    )


def walking_arrow() -> FinCategory:
    return FinCategory.build(
        ["0", "1"],
        {"id_0": ("0", "0"), "id_1": ("1", "1"), "f": ("0", "1")},
        {"0": "id_0", "1": "id_1"},
        {},
    )


def parallel_pair() -> FinCategory:
    return FinCategory.build(
        ["0", "1"],
        {"id_0": ("0", "0"), "id_1": ("1", "1"), "s": ("0", "1"), "t": ("0", "1")},
        {"0": "id_0", "1": "id_1"},
        {},
    )


def identity_functor(C: FinCategory) -> Functor:
    return Functor(C, C, {o: o for o in C.objects}, {m: m for m in C.morphisms})


def constant_functor(C: FinCategory, D: FinCategory, d: str) -> Functor:
    if d not in D.identities:
        raise CategoryError(f"unknown object {d!r}")
    return Functor(C, D, {o: d for o in C.objects}, {m: D.identities[d] for m in C.morphisms})


def point_at(D: FinCategory, d: str) -> Functor:
    """The functor from the terminal category picking out ``d``."""
    return constant_functor(terminal(), D, d)


def compose_functors(G: Functor, F: Functor) -> Functor:
    if F.codomain != G.domain:
        raise CategoryError("functors are not composable")
    return Functor(
        F.domain,
        G.codomain,
        {o: G.object_map[F.object_map[o]] for o in F.domain.objects},
        {m: G.morphism_map[F.morphism_map[m]] for m in F.domain.morphisms},
    )


def opposite(C: FinCategory) -> FinCategory:
    return FinCategory(
        C.objects,
        {m: (t, s) for m, (s, t) in C.morphisms.items()},
        dict(C.identities),
        {(f, g): h for (g, f), h in C.composition.items()},
    )


def opposite_functor(F: Functor) -> Functor:
    return Functor(opposite(F.domain), opposite(F.codomain), dict(F.object_map), dict(F.morphism_map))


def product(C: FinCategory, D: FinCategory) -> FinCategory:
    objects = [mid(a, b) for a, b in iproduct(C.objects, D.objects)]
    morphisms = {}
    for f, g in iproduct(C.morphisms, D.morphisms):
        (s1, t1), (s2, t2) = C.morphisms[f], D.morphisms[g]
        morphisms[mid(f, g)] = (mid(s1, s2), mid(t1, t2))
    identities = {mid(a, b): mid(C.identities[a], D.identities[b]) for a, b in iproduct(C.objects, D.objects)}
    composition = {}
    for (g1, f1), h1 in C.composition.items():
        for (g2, f2), h2 in D.composition.items():
            composition[(mid(g1, g2), mid(f1, f2))] = mid(h1, h2)
    return FinCategory(tuple(objects), morphisms, identities, composition)


def product_functor(F: Functor, G: Functor) -> Functor:
    dom = product(F.domain, G.domain)
    cod = product(F.codomain, G.codomain)
    return Functor(
        dom,
        cod,
        {mid(a, b): mid(F.ob(a), G.ob(b)) for a, b in iproduct(F.domain.objects, G.domain.objects)},
        {mid(f, g): mid(F.mor(f), G.mor(g)) for f, g in iproduct(F.domain.morphisms, G.domain.morphisms)},
    )


def diagonal(C: FinCategory) -> Functor:
    return Functor(
        C,
        product(C, C),
        {o: mid(o, o) for o in C.objects},
        {m: mid(m, m) for m in C.morphisms},
    )


def projection(C: FinCategory, D: FinCategory, index: int) -> Functor:
    P = product(C, D)
    objects = {mid(a, b): (a, b)[index] for a, b in iproduct(C.objects, D.objects)}
    morphisms = {mid(f, g): (f, g)[index] for f, g in iproduct(C.morphisms, D.morphisms)}
    return Functor(P, (C, D)[index], objects, morphisms)


def full_subcategory(C: FinCategory, objects: Iterable[str]) -> tuple[FinCategory, Functor]:
    keep = set(objects)
    morphisms = {m: st for m, st in C.morphisms.items() if st[0] in keep and st[1] in keep}
    sub = FinCategory(
        tuple(keep),
        morphisms,
        {o: C.identities[o] for o in keep},
        {k: h for k, h in C.composition.items() if k[0] in morphisms and k[1] in morphisms},
    )
    return sub, Functor(sub, C, {o: o for o in keep}, {m: m for m in morphisms})


def is_connected(C: FinCategory) -> bool:
    if not C.objects:
        return False
    parent = {o: o for o in C.objects}

    def find(x: str) -> str:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for s, t in C.morphisms.values():
        parent[find(s)] = find(t)
    return len({find(o) for o in C.objects}) == 1
