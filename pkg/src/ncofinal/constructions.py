"""Comma categories, pullbacks, nerves, categories of simplices and of elements."""

from __future__ import annotations

from itertools import product as iproduct
from typing import NamedTuple, Sequence

from .category import (
    CategoryError,
    FinCategory,
    Functor,
    identity_functor,
    mid,
    opposite,
    point_at,
)
from .delta import MonotoneMap, enumerate_monotone
from .diagrams import SetDiagram
from .sset import Simplex, SSet, TruncationError


def comma(F: Functor, G: Functor) -> tuple[FinCategory, Functor, Functor]:
    """``(F | G)``: objects ``(a, b, f: F a -> G b)``, morphisms commuting squares."""
    if F.codomain != G.codomain:
        raise CategoryError("comma needs a shared codomain")
    A, B, C = F.domain, G.domain, F.codomain
    triples = {}
    for a, b in iproduct(A.objects, B.objects):
        for f in C.hom(F.ob(a), G.ob(b)):
            triples[mid(a, b, f)] = (a, b, f)
    by_ab: dict[tuple[str, str], list[str]] = {}
    for oid, (a, b, _) in triples.items():
        by_ab.setdefault((a, b), []).append(oid)
    morphisms, parts = {}, {}
    for sid, (a, b, f) in triples.items():
        for alpha in A.out_of(a):
            for beta in B.out_of(b):
                gbf = C.compose(G.mor(beta), f)
                for tid in by_ab.get((A.target(alpha), B.target(beta)), ()):
                    f2 = triples[tid][2]
                    if C.compose(f2, F.mor(alpha)) == gbf:
                        m = mid(alpha, beta, sid, tid)
                        morphisms[m] = (sid, tid)
                        parts[m] = (alpha, beta)
    identities = {oid: mid(A.identity(a), B.identity(b), oid, oid) for oid, (a, b, _) in triples.items()}
    # a morphism is pinned down by its components and both endpoints
    lookup = {(parts[m][0], parts[m][1], s, t): m for m, (s, t) in morphisms.items()}
    by_source: dict[str, list[str]] = {}
    for m, (s, _) in morphisms.items():
        by_source.setdefault(s, []).append(m)
    composition = {}
    for f, (s, t) in morphisms.items():
        for g in by_source.get(t, ()):
            alpha = A.compose(parts[g][0], parts[f][0])
            beta = B.compose(parts[g][1], parts[f][1])
            composition[(g, f)] = lookup[(alpha, beta, s, morphisms[g][1])]
    cat = FinCategory(tuple(triples), morphisms, identities, composition)
    pa = Functor(cat, A, {o: v[0] for o, v in triples.items()}, {m: p[0] for m, p in parts.items()})
    pb = Functor(cat, B, {o: v[1] for o, v in triples.items()}, {m: p[1] for m, p in parts.items()})
    return cat, pa, pb


def _check_object(D: FinCategory, d: str) -> None:
    if d not in D.identities:
        raise CategoryError(f"unknown object {d!r}")


def slice_along(p: Functor, d: str) -> FinCategory:
    """``C x_D D_{/d}``: pairs ``(c, f: p(c) -> d)``."""
    _check_object(p.codomain, d)
    return comma(p, point_at(p.codomain, d))[0]


def coslice_along(p: Functor, d: str) -> FinCategory:
    """``C x_D D_{d/}``: pairs ``(c, f: d -> p(c))``."""
    _check_object(p.codomain, d)
    return comma(point_at(p.codomain, d), p)[0]


def slice(C: FinCategory, d: str) -> FinCategory:
    return slice_along(identity_functor(C), d)


def coslice(C: FinCategory, d: str) -> FinCategory:
    return coslice_along(identity_functor(C), d)


def coslice_projection(C: FinCategory, d: str) -> Functor:
    _check_object(C, d)
    return comma(point_at(C, d), identity_functor(C))[2]


def pullback(F: Functor, G: Functor) -> tuple[FinCategory, Functor, Functor]:
    """Strict pullback ``A x_C B``."""
    if F.codomain != G.codomain:
        raise CategoryError("pullback needs a shared codomain")
    A, B = F.domain, G.domain
    objects = {mid(a, b): (a, b) for a, b in iproduct(A.objects, B.objects) if F.ob(a) == G.ob(b)}
    morphisms, parts = {}, {}
    for al, be in iproduct(A.morphisms, B.morphisms):
        if F.mor(al) != G.mor(be):
            continue
        s, t = mid(A.source(al), B.source(be)), mid(A.target(al), B.target(be))
        morphisms[mid(al, be)] = (s, t)
        parts[mid(al, be)] = (al, be)
    by_source: dict[str, list[str]] = {}
    for m, (s, _) in morphisms.items():
        by_source.setdefault(s, []).append(m)
    composition = {}
    for f, (s, t) in morphisms.items():
        for g in by_source.get(t, ()):
            (a1, b1), (a2, b2) = parts[f], parts[g]
            composition[(g, f)] = mid(A.compose(a2, a1), B.compose(b2, b1))
    identities = {o: mid(A.identity(a), B.identity(b)) for o, (a, b) in objects.items()}
    cat = FinCategory(tuple(objects), morphisms, identities, composition)
    pa = Functor(cat, A, {o: v[0] for o, v in objects.items()}, {m: v[0] for m, v in parts.items()})
    pb = Functor(cat, B, {o: v[1] for o, v in objects.items()}, {m: v[1] for m, v in parts.items()})
    return cat, pa, pb


def multislice(C: FinCategory, objects: Sequence[str]) -> FinCategory:
    """Wide pullback ``C_{a_1/} x_C ... x_C C_{a_m/}``; ``C`` itself when empty."""
    objects = tuple(objects)
    for a in objects:
        _check_object(C, a)
    if not objects:
        return C
    tuples = {}
    for c in C.objects:
        for fs in iproduct(*(C.hom(a, c) for a in objects)):
            tuples[mid(c, *fs)] = (c, fs)
    morphisms, arrow = {}, {}
    for sid, (c, fs) in tuples.items():
        for h in C.out_of(c):
            image = tuple(C.compose(h, f) for f in fs)
            tid = mid(C.target(h), *image)
            m = mid(h, sid)
            morphisms[m] = (sid, tid)
            arrow[m] = h
    lookup = {(arrow[m], s): m for m, (s, _) in morphisms.items()}
    composition = {}
    for f, (s, t) in morphisms.items():
        for h in C.out_of(C.target(arrow[f])):
            g = lookup[(h, t)]
            composition[(g, f)] = lookup[(C.compose(h, arrow[f]), s)]
    identities = {o: mid(C.identity(c), o) for o, (c, _) in tuples.items()}
    return FinCategory(tuple(tuples), morphisms, identities, composition)


# -- nerves -------------------------------------------------------------------------


def _chain_id(chain: Sequence[str]) -> str:
    return "|".join(chain)


def _chain_normal_form(C: FinCategory, chain: Sequence[str], start: str) -> Simplex:
    kept: list[str] = []
    op = [0]
    for f in chain:
        if not C.is_identity(f):
            kept.append(f)
        op.append(len(kept))
    return Simplex(tuple(op), _chain_id(kept) if kept else start)


def nerve(C: FinCategory, dim_bound: int) -> SSet:
    """Nerve truncated at ``dim_bound``; k-simplices are chains of k composable arrows."""
    if dim_bound < 0:
        raise ValueError("dim_bound must be non-negative")
    if any("|" in m for m in C.morphisms):
        raise CategoryError("morphism ids may not contain '|'")
    arrows = C.non_identity()
    starting = {a: [f for f in arrows if C.source(f) == a] for a in C.objects}
    gens: dict[int, dict[str, list[Simplex]]] = {0: {o: [] for o in C.objects}}
    chains = [(f,) for f in arrows]
    for k in range(1, dim_bound + 1):
        level = {}
        for chain in chains:
            faces = []
            for i in range(k + 1):
                if k == 1:
                    faces.append(Simplex((0,), C.target(chain[0]) if i == 0 else C.source(chain[0])))
                    continue
                if i == 0:
                    rest = chain[1:]
                elif i == k:
                    rest = chain[:-1]
                else:
                    rest = chain[: i - 1] + (C.compose(chain[i], chain[i - 1]),) + chain[i + 1:]
                faces.append(_chain_normal_form(C, rest, C.source(rest[0])))
            level[_chain_id(chain)] = faces
        gens[k] = level
        chains = [c + (g,) for c in chains for g in starting[C.target(c[-1])]]
    return SSet(dim_bound, gens)


def morphism_of_edge(C: FinCategory, e: Simplex) -> str:
    """The arrow of ``C`` named by an edge of ``nerve(C)``."""
    if e.is_degenerate():
        return C.identity(e.gen)
    return e.gen


class SimplexCategory(NamedTuple):
    category: FinCategory
    simplices: dict[str, Simplex]
    maps: dict[str, MonotoneMap]
    first_vertex: Functor | dict[str, str]
    last_vertex: Functor | dict[str, str]


def category_of_simplices(
    S: SSet,
    dim_bound: int,
    semisimplicial: bool = False,
    base: FinCategory | None = None,
) -> SimplexCategory:
    """The category of simplices of ``S`` up to ``dim_bound``.

    A morphism ``sigma -> rho`` is a monotone ``alpha`` with ``alpha^* rho == sigma``.
    With ``semisimplicial`` only nondegenerate simplices and injective maps are kept.

    When ``S == nerve(base, ...)`` the vertex maps are returned as functors
    ``first_vertex: opposite(category) -> base`` and
    ``last_vertex: category -> base``; otherwise they are plain object maps
    ``simplex id -> vertex``.
    """
    if dim_bound > S.truncation:
        raise TruncationError(f"dim_bound {dim_bound} exceeds truncation {S.truncation}")
    simplices: dict[str, Simplex] = {}
    for k in range(dim_bound + 1):
        pool = [Simplex(tuple(range(k + 1)), g) for g in S.nondegenerate(k)] if semisimplicial else S.all_simplices(k)
        for x in pool:
            simplices[x.encode()] = x
    morphisms, alphas = {}, {}
    for rid, rho in simplices.items():
        for m in range(dim_bound + 1):
            for alpha in enumerate_monotone(m, rho.dim):
                if semisimplicial and not alpha.is_injective():
                    continue
                sigma = S.apply(rho, alpha.values)
                mid_ = mid(str(alpha), rid)
                morphisms[mid_] = (sigma.encode(), rid)
                alphas[mid_] = alpha
    lookup = {(alphas[m].values, t): m for m, (_, t) in morphisms.items()}
    by_source: dict[str, list[str]] = {}
    for m, (s, _) in morphisms.items():
        by_source.setdefault(s, []).append(m)
    composition = {}
    for f, (s, t) in morphisms.items():
        a = alphas[f]
        for g in by_source.get(t, ()):
            b = alphas[g]
            composition[(g, f)] = lookup[(tuple(b.values[v] for v in a.values), morphisms[g][1])]
    identities = {sid: mid(str(MonotoneMap.identity(x.dim)), sid) for sid, x in simplices.items()}
    cat = FinCategory(tuple(simplices), morphisms, identities, composition)

    first = {sid: S.vertex(x, 0) for sid, x in simplices.items()}
    last = {sid: S.vertex(x, x.dim) for sid, x in simplices.items()}
    if base is None:
        return SimplexCategory(cat, simplices, alphas, first, last)
    first_f = Functor(
        opposite(cat),
        base,
        first,
        {m: morphism_of_edge(base, S.edge(simplices[t], 0, alphas[m].values[0])) for m, (_, t) in morphisms.items()},
    )
    last_f = Functor(
        cat,
        base,
        last,
        {
            m: morphism_of_edge(base, S.edge(simplices[t], alphas[m].values[-1], simplices[t].dim))
            for m, (_, t) in morphisms.items()
        },
    )
    return SimplexCategory(cat, simplices, alphas, first_f, last_f)


# -- categories of elements ----------------------------------------------------------


class Elements(NamedTuple):
    category: FinCategory
    projection: Functor
    points: dict[str, tuple[str, object]]


def _el(x) -> str:
    return repr(x)


def grothendieck(X: SetDiagram) -> Elements:
    """Category of elements of a covariant ``X: C -> FinSet`` with its projection."""
    C = X.shape
    points = {mid(c, _el(x)): (c, x) for c in C.objects for x in X.values[c]}
    morphisms, arrow = {}, {}
    for oid, (c, x) in points.items():
        for f in C.out_of(c):
            tid = mid(C.target(f), _el(X.actions[f][x]))
            m = mid(f, oid)
            morphisms[m] = (oid, tid)
            arrow[m] = f
    lookup = {(arrow[m], s): m for m, (s, _) in morphisms.items()}
    composition = {}
    for f, (s, t) in morphisms.items():
        for g in C.out_of(C.target(arrow[f])):
            composition[(lookup[(g, t)], f)] = lookup[(C.compose(g, arrow[f]), s)]
    identities = {oid: mid(C.identity(c), oid) for oid, (c, _) in points.items()}
    E = FinCategory(tuple(points), morphisms, identities, composition)
    proj = Functor(E, C, {o: c for o, (c, _) in points.items()}, dict(arrow))
    return Elements(E, proj, points)


def elements_of_presheaf(X: SetDiagram) -> Elements:
    """Category of elements of a presheaf ``X: C^op -> FinSet``.

    ``X.shape`` is ``C^op``; objects are ``(c, x)`` and a morphism
    ``(c, x) -> (c', x')`` is an ``f: c -> c'`` in ``C`` with ``X(f)(x') == x``.
    The projection lands in ``C``.
    """
    Cop = X.shape
    C = opposite(Cop)
    points = {mid(c, _el(x)): (c, x) for c in C.objects for x in X.values[c]}
    morphisms, arrow = {}, {}
    for tid, (c2, x2) in points.items():
        for f in C.into(c2):
            sid = mid(C.source(f), _el(X.actions[f][x2]))
            m = mid(f, tid)
            morphisms[m] = (sid, tid)
            arrow[m] = f
    lookup = {(arrow[m], t): m for m, (_, t) in morphisms.items()}
    composition = {}
    by_source: dict[str, list[str]] = {}
    for m, (s, _) in morphisms.items():
        by_source.setdefault(s, []).append(m)
    for f, (s, t) in morphisms.items():
        for g in by_source.get(t, ()):
            composition[(g, f)] = lookup[(C.compose(arrow[g], arrow[f]), morphisms[g][1])]
    identities = {oid: mid(C.identity(c), oid) for oid, (c, _) in points.items()}
    E = FinCategory(tuple(points), morphisms, identities, composition)
    proj = Functor(E, C, {o: c for o, (c, _) in points.items()}, dict(arrow))
    return Elements(E, proj, points)
