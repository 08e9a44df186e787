"""Exact colimits and limits of finite-set-valued diagrams.

Also hosts the two comparison theorems made executable here: reshaping a
diagram over a simplicial set into a simplicial object, and decomposing a
colimit over a category of elements fibrewise.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product as iproduct
from typing import Hashable

from .category import FinCategory, Functor, mid, opposite
from .constructions import category_of_simplices, grothendieck, nerve, slice_along
from .delta import delta_leq, enumerate_monotone, obj as delta_obj
from .diagrams import SetDiagram, SSetDiagram, precompose, validate_sset_diagram
from .topology import pi0
from .unionfind import UnionFind


class IncoherentDiagram(ValueError):
    pass


@dataclass
class Quotient:
    """A colimit: classes numbered ``0..count-1`` and a leg per shape object."""

    count: int
    legs: dict[str, dict[Hashable, int]]

    def members(self) -> list[list[tuple[str, Hashable]]]:
        out: list[list[tuple[str, Hashable]]] = [[] for _ in range(self.count)]
        for c, leg in self.legs.items():
            for x, k in leg.items():
                out[k].append((c, x))
        return out


def colim_finset(D: SetDiagram) -> Quotient:
    """Disjoint union of the values modulo ``x ~ D(f)(x)``."""
    C = D.shape
    uf = UnionFind((c, x) for c in C.objects for x in D.values[c])
    for m, (s, t) in C.morphisms.items():
        act = D.actions[m]
        for x in D.values[s]:
            uf.union((s, x), (t, act[x]))
    index = uf.index()
    legs = {c: {x: index[(c, x)] for x in D.values[c]} for c in C.objects}
    return Quotient(len(uf), legs)


def is_cocone(D: SetDiagram, Q: Quotient) -> bool:
    hit = set()
    for m, (s, t) in D.shape.morphisms.items():
        if any(Q.legs[t][D.actions[m][x]] != Q.legs[s][x] for x in D.values[s]):
            return False
    for leg in Q.legs.values():
        hit.update(leg.values())
    return hit == set(range(Q.count))


@dataclass
class Limit:
    """A limit: compatible families, one entry per shape object (in ``objects`` order)."""

    objects: tuple[str, ...]
    families: list[tuple]

    def leg(self, c: str) -> dict[int, Hashable]:
        i = self.objects.index(c)
        return {k: fam[i] for k, fam in enumerate(self.families)}

    def __len__(self) -> int:
        return len(self.families)


def lim_finset(D: SetDiagram) -> Limit:
    """Families ``(x_c)`` with ``D(f)(x_s) == x_t`` for every ``f: s -> t``; by backtracking."""
    C = D.shape
    objects = C.objects
    position = {c: i for i, c in enumerate(objects)}
    # constraints checked as soon as both endpoints are assigned
    checks: dict[int, list[tuple[str, int, int]]] = {i: [] for i in range(len(objects))}
    for m, (s, t) in C.morphisms.items():
        i, j = position[s], position[t]
        checks[max(i, j)].append((m, i, j))
    families: list[tuple] = []
    current: list = []

    def extend(k: int) -> None:
        if k == len(objects):
            families.append(tuple(current))
            return
        for x in D.values[objects[k]]:
            current.append(x)
            if all(D.actions[m][current[i]] == current[j] for m, i, j in checks[k]):
                extend(k + 1)
            current.pop()

    extend(0)
    return Limit(objects, families)


def naive_limit(D: SetDiagram) -> Limit:
    """Filter the full product; an independent check on :func:`lim_finset`."""
    C = D.shape
    fams = []
    for fam in iproduct(*(D.values[c] for c in C.objects)):
        point = dict(zip(C.objects, fam))
        if all(D.actions[m][point[s]] == point[t] for m, (s, t) in C.morphisms.items()):
            fams.append(fam)
    return Limit(C.objects, fams)


# -- comparison maps ----------------------------------------------------------------------


def colimit_comparison(D: SetDiagram, p: Functor) -> dict[int, int]:
    """The canonical map ``colim(D . p) -> colim(D)`` as a class-to-class function.

    Raises if it is not well defined (it always is for a valid diagram).
    """
    top, bottom = colim_finset(precompose(D, p)), colim_finset(D)
    phi: dict[int, int] = {}
    for c, leg in top.legs.items():
        for x, k in leg.items():
            image = bottom.legs[p.ob(c)][x]
            if phi.setdefault(k, image) != image:
                raise IncoherentDiagram("comparison map is not well defined")
    return phi


def comparison_is_bijective(D: SetDiagram, p: Functor) -> bool:
    phi = colimit_comparison(D, p)
    bottom = colim_finset(D)
    top_count = colim_finset(precompose(D, p)).count
    return len(phi) == top_count and len(set(phi.values())) == len(phi) == bottom.count


def limit_comparison_is_bijective(D: SetDiagram, p: Functor) -> bool:
    """``lim D -> lim (D . p)`` restricts a compatible family along ``p``."""
    full = lim_finset(D)
    restricted = lim_finset(precompose(D, p))
    pos = {c: i for i, c in enumerate(full.objects)}
    images = {tuple(fam[pos[p.ob(c)]] for c in restricted.objects) for fam in full.families}
    return len(images) == len(full.families) and images == set(restricted.families)


# -- reshaping over a simplicial set -------------------------------------------------------


def reshape_build(F: SSetDiagram, n_max: int) -> SetDiagram:
    """The simplicial replacement of ``F`` over ``opposite(delta_leq(n_max))``.

    Level ``r`` is the disjoint union over all ``r``-simplices ``sigma`` of
    ``F(sigma(0))``; a map ``alpha: [m] -> [n]`` acts on the ``rho`` summand by
    the spine composite ``(rho|[0, alpha(0)])_*`` into the ``alpha^* rho`` summand.
    """
    S = F.base
    if n_max < 1:
        raise ValueError("n_max must be at least 1")
    if n_max > S.truncation:
        raise IncoherentDiagram(f"base truncation {S.truncation} is below level {n_max}")
    simplices = {r: S.all_simplices(r) for r in range(n_max + 1)}
    values = {
        delta_obj(r): tuple((x.encode(), a) for x in simplices[r] for a in F.values[S.vertex(x, 0)])
        for r in range(n_max + 1)
    }
    shape = opposite(delta_leq(n_max))
    prefix: dict[tuple, dict] = {}
    actions = {}
    for m in range(n_max + 1):
        for n in range(n_max + 1):
            for alpha in enumerate_monotone(m, n):
                act = {}
                for rho in simplices[n]:
                    key = (rho, alpha.values[0])
                    if key not in prefix:
                        prefix[key] = F.spine_composite(rho, 0, alpha.values[0])
                    push = prefix[key]
                    sigma = S.apply(rho, alpha.values).encode()
                    for a in F.values[S.vertex(rho, 0)]:
                        act[(rho.encode(), a)] = (sigma, push[a])
                actions[str(alpha)] = act
    return SetDiagram(shape, values, actions)


def direct_diagram(F: SSetDiagram, dim_bound: int = 2) -> SetDiagram:
    """``sigma -> F(sigma(0))`` over the opposite of the category of simplices."""
    S = F.base
    sc = category_of_simplices(S, dim_bound)
    cat = sc.category
    shape = opposite(cat)
    values = {sid: F.values[S.vertex(x, 0)] for sid, x in sc.simplices.items()}
    actions = {}
    cache: dict[tuple, dict] = {}
    for m, (sigma_id, rho_id) in cat.morphisms.items():
        # m: sigma -> rho with alpha^* rho == sigma; in the opposite it runs rho -> sigma
        alpha0 = sc.maps[m].values[0]
        key = (rho_id, alpha0)
        if key not in cache:
            cache[key] = F.spine_composite(sc.simplices[rho_id], 0, alpha0)
        actions[m] = cache[key]
    return SetDiagram(shape, values, actions)


@dataclass
class ReshapeReport:
    ok: bool
    reshaped_classes: int
    direct_classes: int
    bijection: dict[int, int] = field(default_factory=dict)
    failures: list[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "ok": self.ok,
            "reshaped_classes": self.reshaped_classes,
            "direct_classes": self.direct_classes,
            "bijection": {str(k): v for k, v in sorted(self.bijection.items())},
            "failures": self.failures,
        }


def reshape_colim_check(F: SSetDiagram) -> ReshapeReport:
    """Compare the coequalizer of the reshaped diagram with the direct colimit."""
    S = F.base
    if S.truncation < 2:
        raise IncoherentDiagram("the base must be truncated at level >= 2")
    problems = validate_sset_diagram(F)
    if problems:
        raise IncoherentDiagram("; ".join(map(str, problems[:3])))
    reshaped = colim_finset(reshape_build(F, 1))
    direct = colim_finset(direct_diagram(F, 2))
    failures = []
    phi: dict[int, int] = {}
    for r in (0, 1):
        for x in S.all_simplices(r):
            sid = x.encode()
            for a in F.values[S.vertex(x, 0)]:
                k = reshaped.legs[delta_obj(r)][(sid, a)]
                image = direct.legs[sid][a]
                if phi.setdefault(k, image) != image:
                    failures.append(f"cocone mismatch at {sid}, {a!r}")
    if len(phi) != reshaped.count:
        failures.append("map not total")
    if len(set(phi.values())) != len(phi):
        failures.append("map not injective")
    if set(phi.values()) != set(range(direct.count)):
        failures.append("map not surjective")
    return ReshapeReport(not failures, reshaped.count, direct.count, phi, failures)


# -- decomposition along a category of elements --------------------------------------------


@dataclass
class DecompositionReport:
    ok: bool
    total_classes: int
    decomposed_classes: int
    failures: list[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "ok": self.ok,
            "total_classes": self.total_classes,
            "decomposed_classes": self.decomposed_classes,
            "failures": self.failures,
        }


def decompose_check(X: SetDiagram, F: SetDiagram) -> DecompositionReport:
    """``colim F`` against ``colim_i (coprod_{x in X(i)} F(i, x))``."""
    E = grothendieck(X)
    if F.shape != E.category:
        raise IncoherentDiagram("F must be indexed by the category of elements of X")
    K = X.shape
    point_id = {pt: oid for oid, pt in E.points.items()}
    values = {
        i: tuple((x, y) for x in X.values[i] for y in F.values[point_id[(i, x)]]) for i in K.objects
    }
    actions = {}
    for k, (i, _) in K.morphisms.items():
        act = {}
        for x, y in values[i]:
            over = mid(k, point_id[(i, x)])
            act[(x, y)] = (X.actions[k][x], F.actions[over][y])
        actions[k] = act
    outer = SetDiagram(K, values, actions)
    total = colim_finset(F)
    fibred = colim_finset(outer)
    phi: dict[int, int] = {}
    failures = []
    for oid, (i, x) in E.points.items():
        for y in F.values[oid]:
            a, b = total.legs[oid][y], fibred.legs[i][(x, y)]
            if phi.setdefault(a, b) != b:
                failures.append(f"not well defined at {oid}")
    if len(set(phi.values())) != len(phi) or len(phi) != total.count or fibred.count != total.count:
        failures.append("not a bijection")
    return DecompositionReport(not failures, total.count, fibred.count, failures)


# -- colimits inside a finite category ------------------------------------------------------


def cocones(C: FinCategory, D: Functor, apex: str) -> list[dict[str, str]]:
    """All cocones under ``D: J -> C`` with vertex ``apex``."""
    J = D.domain
    objs = J.objects
    position = {j: i for i, j in enumerate(objs)}
    checks: dict[int, list[tuple[str, int, int]]] = {i: [] for i in range(len(objs))}
    for u, (s, t) in J.morphisms.items():
        checks[max(position[s], position[t])].append((u, position[s], position[t]))
    out: list[dict[str, str]] = []
    current: list[str] = []

    def extend(k: int) -> None:
        if k == len(objs):
            out.append(dict(zip(objs, current)))
            return
        for lam in C.hom(D.ob(objs[k]), apex):
            current.append(lam)
            if all(C.compose(current[j], D.mor(u)) == current[i] for u, i, j in checks[k]):
                extend(k + 1)
            current.pop()

    extend(0)
    return out


def colim_in_category(C: FinCategory, D: Functor) -> tuple[str, dict[str, str]] | None:
    """A universal cocone under ``D``, found by exhaustive search, or ``None``."""
    all_cocones = [(c, lam) for c in C.objects for lam in cocones(C, D, c)]
    for c, lam in all_cocones:
        universal = True
        for c2, mu in all_cocones:
            mediators = [
                h for h in C.hom(c, c2) if all(C.compose(h, lam[j]) == mu[j] for j in lam)
            ]
            if len(mediators) != 1:
                universal = False
                break
        if universal:
            return c, lam
    return None


# -- representables --------------------------------------------------------------------------


@dataclass
class RepresentableReport:
    object: str
    classes: int
    components: int

    @property
    def agree(self) -> bool:
        return self.classes == self.components

    def to_dict(self) -> dict:
        return {"object": self.object, "classes": self.classes, "components": self.components, "agree": self.agree}


def representable_over(p: Functor, d: str) -> SetDiagram:
    """``c -> Hom_D(p(c), d)`` as a diagram over ``C^op``."""
    C, D = p.domain, p.codomain
    values = {c: D.hom(p.ob(c), d) for c in C.objects}
    actions = {m: {g: D.compose(g, p.mor(m)) for g in values[C.target(m)]} for m in C.morphisms}
    return SetDiagram(opposite(C), {c: tuple(v) for c, v in values.items()}, actions)


def representable_colim_check(p: Functor, d: str) -> RepresentableReport:
    """Classes of ``colim_{C^op} Hom_D(p(-), d)`` against components of ``C x_D D_{/d}``."""
    classes = colim_finset(representable_over(p, d)).count
    components = pi0(nerve(slice_along(p, d), 1))[0]
    return RepresentableReport(d, classes, components)
