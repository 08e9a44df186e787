"""Seeded random finite categories, functors, diagrams and simplicial sets.

Every generator takes an explicit ``random.Random``; nothing here touches the
global random state.
"""

from __future__ import annotations

import random
from itertools import product as iproduct
from typing import Iterator

from .category import FinCategory, Functor
from .diagrams import SetDiagram, SSetDiagram
from .sset import Simplex, SSet, validate_sset
from .unionfind import UnionFind

OBJECT_NAMES = "abcdefgh"


class GenerationFailed(RuntimeError):
    pass


# -- categories ------------------------------------------------------------------------


def _closure(sizes: dict[str, int], gens: list[tuple[str, str, tuple]], cap: int):
    """Close ``gens`` (concrete functions between finite sets) under composition."""
    arrows: dict[tuple[str, str, tuple], None] = {}
    for o, n in sizes.items():
        arrows[(o, o, tuple(range(n)))] = None
    frontier = [g for g in gens if g not in arrows]
    for g in frontier:
        arrows[g] = None
    while frontier:
        if len(arrows) > cap:
            return None
        new = []
        current = list(arrows)
        for f in frontier:
            for g in current:
                for (a, b, u), (c, d, v) in ((f, g), (g, f)):
                    if b == c:
                        h = (a, d, tuple(v[x] for x in u))
                        if h not in arrows:
                            arrows[h] = None
                            new.append(h)
        frontier = new
    return list(arrows) if len(arrows) <= cap else None


def concrete_category(sizes: dict[str, int], arrows: list[tuple[str, str, tuple]]) -> FinCategory:
    """The category whose morphisms are the given functions, named in order of appearance."""
    names: dict[tuple, str] = {}
    identities = {}
    counter = 0
    for key in arrows:
        a, b, u = key
        if a == b and u == tuple(range(sizes[a])):
            names[key] = f"1{a}"
            identities[a] = names[key]
        else:
            names[key] = f"f{counter}"
            counter += 1
    morphisms = {names[k]: (k[0], k[1]) for k in arrows}
    composition = {}
    for g in arrows:
        for f in arrows:
            if f[1] == g[0]:
                h = (f[0], g[1], tuple(g[2][x] for x in f[2]))
                composition[(names[g], names[f])] = names[h]
    return FinCategory(tuple(sizes), morphisms, identities, composition)


def random_category(
    rng: random.Random,
    max_objects: int = 3,
    max_morphisms: int = 8,
    max_set: int = 3,
    max_generators: int = 4,
) -> FinCategory:
    """A random subcategory of finite sets generated by random functions.

    Relations between composites are whatever equalities the underlying
    functions satisfy, so the result is always a valid category.
    """
    for _ in range(200):
        k = rng.randint(1, max_objects)
        objs = OBJECT_NAMES[:k]
        sizes = {o: rng.choice([0] + [n for n in range(1, max_set + 1)] * 3) for o in objs}
        gens = []
        for _ in range(rng.randint(0, max_generators)):
            a, b = rng.choice(objs), rng.choice(objs)
            if sizes[a] and not sizes[b]:
                continue
            gens.append((a, b, tuple(rng.randrange(sizes[b]) for _ in range(sizes[a]))))
        arrows = _closure(sizes, gens, max_morphisms)
        if arrows is not None:
            return concrete_category(sizes, arrows)
    raise GenerationFailed("no category within the morphism budget")


def enumerate_functors(C: FinCategory, D: FinCategory, limit: int | None = None) -> Iterator[Functor]:
    """All functors ``C -> D`` in a deterministic order."""
    gens = sorted(C.non_identity())
    objs = C.objects
    count = 0
    for images in iproduct(D.objects, repeat=len(objs)):
        ob = dict(zip(objs, images))
        mor = {C.identity(c): D.identity(ob[c]) for c in objs}
        choices = [D.hom(ob[C.source(m)], ob[C.target(m)]) for m in gens]
        if any(not ch for ch in choices):
            continue

        def extend(k: int) -> Iterator[dict]:
            if k == len(gens):
                yield dict(mor)
                return
            m = gens[k]
            for image in choices[k]:
                mor[m] = image
                ok = True
                for (g, f), h in C.composition.items():
                    if g in mor and f in mor and h in mor and (g == m or f == m or h == m):
                        if D.compose(mor[g], mor[f]) != mor[h]:
                            ok = False
                            break
                if ok:
                    yield from extend(k + 1)
                del mor[m]

        for m_map in extend(0):
            yield Functor(C, D, dict(ob), m_map)
            count += 1
            if limit is not None and count >= limit:
                return


def random_functor(rng: random.Random, C: FinCategory, D: FinCategory, cap: int = 2000) -> Functor | None:
    functors = list(enumerate_functors(C, D, limit=cap))
    return rng.choice(functors) if functors else None


def functor_corpus(seed: int, size: int = 300, **kw) -> list[Functor]:
    """Random functors between random small categories, plus identities."""
    rng = random.Random(seed)
    out: list[Functor] = []
    while len(out) < size:
        C = random_category(rng, **kw)
        D = random_category(rng, **kw)
        if rng.random() < 0.15:
            C = D
        F = random_functor(rng, C, D)
        if F is not None:
            out.append(F)
    return out


# -- set-valued diagrams ---------------------------------------------------------------


def _congruence(C: FinCategory, uf: UnionFind, elements: dict[str, list]) -> None:
    """Close ``uf`` so that every action respects it."""
    changed = True
    while changed:
        changed = False
        for m, (s, t) in C.morphisms.items():
            blocks: dict = {}
            for x in elements[s]:
                blocks.setdefault(uf.find((s, x)), []).append(x)
            for xs in blocks.values():
                images = [(t, (i, C.compose(m, f))) for i, f in xs]
                for y in images[1:]:
                    if uf.union(images[0], y):
                        changed = True


def random_set_diagram(
    rng: random.Random,
    C: FinCategory,
    max_size: int = 5,
    max_generators: int = 3,
) -> SetDiagram:
    """A quotient of a coproduct of representables ``Hom(a, -)``.

    Random identifications are added inside single value sets and closed
    under the actions; further merges shrink every set to ``max_size``.
    """
    if not C.objects:
        return SetDiagram.build(C, {}, {})
    gens = [rng.choice(C.objects) for _ in range(rng.randint(0, max_generators))]
    elements = {c: [(i, f) for i, a in enumerate(gens) for f in C.hom(a, c)] for c in C.objects}
    uf = UnionFind((c, x) for c in C.objects for x in elements[c])
    for _ in range(rng.randint(0, 3)):
        c = rng.choice(C.objects)
        if len(elements[c]) >= 2:
            x, y = rng.sample(elements[c], 2)
            uf.union((c, x), (c, y))
    _congruence(C, uf, elements)
    while True:
        big = [c for c in C.objects if len({uf.find((c, x)) for x in elements[c]}) > max_size]
        if not big:
            break
        c = big[0]
        roots = sorted({uf.find((c, x)) for x in elements[c]}, key=repr)
        x, y = rng.sample(roots, 2)
        uf.union(x, y)
        _congruence(C, uf, elements)
    return _quotient_diagram(C, uf, elements)


def _quotient_diagram(C: FinCategory, uf: UnionFind, elements: dict[str, list]) -> SetDiagram:
    label: dict[str, dict] = {}
    values = {}
    for c in C.objects:
        roots: dict = {}
        for x in elements[c]:
            roots.setdefault(uf.find((c, x)), len(roots))
        label[c] = roots
        values[c] = tuple(range(len(roots)))
    actions = {}
    for m, (s, t) in C.morphisms.items():
        act = {}
        for x in elements[s]:
            i, f = x
            act[label[s][uf.find((s, x))]] = label[t][uf.find((t, (i, C.compose(m, f))))]
        actions[m] = act
    return SetDiagram(C, values, actions)


def random_function_diagram(rng: random.Random, C: FinCategory, max_size: int = 5, tries: int = 50) -> SetDiagram | None:
    """Random values and random actions, kept only if functorial."""
    for _ in range(tries):
        values = {c: tuple(range(rng.randint(0, max_size))) for c in C.objects}
        actions = {}
        ok = True
        for m, (s, t) in C.morphisms.items():
            if m in C.identities.values():
                actions[m] = {x: x for x in values[s]}
            elif values[s] and not values[t]:
                ok = False
                break
            else:
                actions[m] = {x: rng.choice(values[t]) for x in values[s]}
        if not ok:
            continue
        if all(
            actions[g][actions[f][x]] == actions[h][x]
            for (g, f), h in C.composition.items()
            for x in values[C.source(f)]
        ):
            return SetDiagram(C, values, actions)
    return None


# -- simplicial sets and diagrams on them --------------------------------------------------


def random_sset_diagram(
    rng: random.Random,
    max_nondeg: int = 8,
    max_set: int = 4,
    truncation: int = 2,
) -> SSetDiagram:
    """A random coherent diagram on a random 2-dimensional simplicial set.

    Edges carry random functions.  Each 2-simplex is glued onto a composable
    pair of (possibly degenerate) edges, and its long edge is either an
    existing edge with the composite action or a fresh edge carrying it.
    """
    n_vertices = rng.randint(1, min(3, max_nondeg))
    vertices = [f"v{i}" for i in range(n_vertices)]
    values = {v: tuple(range(rng.randint(0, max_set))) for v in vertices}
    edges: dict[str, tuple[str, str]] = {}
    actions: dict[str, dict] = {}
    budget = max_nondeg - n_vertices

    def new_edge(a: str, b: str, act: dict) -> str:
        e = f"e{len(edges)}"
        edges[e] = (a, b)
        actions[e] = act
        return e

    def random_action(a: str, b: str) -> dict | None:
        if values[a] and not values[b]:
            return None
        return {x: rng.choice(values[b]) for x in values[a]}

    for _ in range(rng.randint(0, max(0, budget - 1))):
        a, b = rng.choice(vertices), rng.choice(vertices)
        act = random_action(a, b)
        if act is not None and budget > 0:
            new_edge(a, b, act)
            budget -= 1

    triangles: dict[str, tuple[Simplex, Simplex, Simplex]] = {}
    if truncation >= 2:
        for _ in range(rng.randint(0, 3)):
            if budget <= 0:
                break
            # an edge (or degenerate edge) is (simplex, source, target, action)
            options = [(Simplex((0, 1), e), s, t, actions[e]) for e, (s, t) in edges.items()]
            options += [(Simplex((0, 0), v), v, v, {x: x for x in values[v]}) for v in vertices]
            first = rng.choice(options)
            follow = [o for o in options if o[1] == first[2]]
            second = rng.choice(follow)
            a, c = first[1], second[2]
            comp = {x: second[3][first[3][x]] for x in values[a]}
            matches = [e for e, (s, t) in edges.items() if (s, t) == (a, c) and actions[e] == comp]
            if a == c and comp == {x: x for x in values[a]} and rng.random() < 0.3:
                long_edge = Simplex((0, 0), a)
            elif matches and (budget < 2 or rng.random() < 0.5):
                long_edge = Simplex((0, 1), rng.choice(matches))
            elif budget >= 2:
                long_edge = Simplex((0, 1), new_edge(a, c, comp))
                budget -= 1
            else:
                continue
            triangles[f"t{len(triangles)}"] = (second[0], long_edge, first[0])
            budget -= 1

    generators: dict[int, dict[str, tuple]] = {0: {v: () for v in vertices}}
    generators[1] = {e: (Simplex((0,), t), Simplex((0,), s)) for e, (s, t) in edges.items()}
    if truncation >= 2:
        generators[2] = dict(triangles)
    for k in range(3, truncation + 1):
        generators[k] = {}
    S = SSet(truncation, generators)
    assert not validate_sset(S)
    return SSetDiagram(S, values, actions)


def random_sset(rng: random.Random, max_nondeg: int = 8, truncation: int = 2) -> SSet:
    return random_sset_diagram(rng, max_nondeg=max_nondeg, truncation=truncation).base


def random_sset_sample(seed: int, count: int, **kw) -> list[SSet]:
    rng = random.Random(seed)
    return [random_sset(rng, **kw) for _ in range(count)]
