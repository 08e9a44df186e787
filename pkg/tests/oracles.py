"""Brute-force reference computations used to cross-check the library.

Nothing here imports the library's algorithms; inputs are plain Python
data (tuples, dicts), so a bug in the library cannot leak into its oracle.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations, product
from math import gcd


# -- simplex category ----------------------------------------------------------------


def monotone_maps(m: int, n: int) -> list[tuple[int, ...]]:
    return [v for v in product(range(n + 1), repeat=m + 1) if all(a <= b for a, b in zip(v, v[1:]))]


def compose_values(g: tuple[int, ...], f: tuple[int, ...]) -> tuple[int, ...]:
    return tuple(g[x] for x in f)


def epi_mono_pairs(f: tuple[int, ...], n: int) -> list[tuple[tuple, tuple]]:
    """All (surjection, injection) pairs whose composite is ``f``."""
    m = len(f) - 1
    out = []
    for k in range(m + 1):
        for s in monotone_maps(m, k):
            if set(s) != set(range(k + 1)):
                continue
            for i in monotone_maps(k, n):
                if len(set(i)) == len(i) and compose_values(i, s) == f:
                    out.append((s, i))
    return out


def delta_hom_sizes(N: int, injective: bool) -> dict[tuple[int, int], int]:
    out = {}
    for a in range(N + 1):
        for b in range(N + 1):
            maps = monotone_maps(a, b)
            if injective:
                maps = [v for v in maps if len(set(v)) == len(v)]
            out[(a, b)] = len(maps)
    return out


# -- categories as plain tables -------------------------------------------------------


def table(C) -> dict:
    """Copy a category into plain dicts (the only library touch point)."""
    return {
        "objects": list(C.objects),
        "morphisms": dict(C.morphisms),
        "identities": dict(C.identities),
        "composition": dict(C.composition),
    }


def non_identity_chains(T: dict, k: int) -> list[tuple[str, ...]]:
    """Composable chains of ``k`` non-identity morphisms (nondegenerate nerve simplices)."""
    ids = set(T["identities"].values())
    arrows = [m for m in T["morphisms"] if m not in ids]
    if k == 0:
        return [(o,) for o in T["objects"]]
    chains = [(m,) for m in arrows]
    for _ in range(k - 1):
        chains = [c + (m,) for c in chains for m in arrows if T["morphisms"][m][0] == T["morphisms"][c[-1]][1]]
    return chains


def coslice_along_objects(T_C: dict, T_D: dict, ob: dict, d: str) -> int:
    """Objects ``(c, f: d -> p(c))``."""
    return sum(1 for c in T_C["objects"] for m, (s, t) in T_D["morphisms"].items() if s == d and t == ob[c])


def slice_along_objects(T_C: dict, T_D: dict, ob: dict, d: str) -> int:
    return sum(1 for c in T_C["objects"] for m, (s, t) in T_D["morphisms"].items() if s == ob[c] and t == d)


def components(vertices, edges) -> int:
    adj = {v: set() for v in vertices}
    for a, b in edges:
        adj[a].add(b)
        adj[b].add(a)
    seen, count = set(), 0
    for v in adj:
        if v in seen:
            continue
        count += 1
        stack = [v]
        while stack:
            x = stack.pop()
            if x in seen:
                continue
            seen.add(x)
            stack.extend(adj[x] - seen)
    return count


def colimit_classes(objects, morphisms, values, actions) -> int:
    verts = [(c, x) for c in objects for x in values[c]]
    edges = [((s, x), (t, actions[m][x])) for m, (s, t) in morphisms.items() for x in values[s]]
    return components(verts, edges)


def limit_families(objects, morphisms, values, actions) -> set[tuple]:
    out = set()
    for fam in product(*(values[c] for c in objects)):
        point = dict(zip(objects, fam))
        if all(actions[m][point[s]] == point[t] for m, (s, t) in morphisms.items()):
            out.add(fam)
    return out


# -- integer linear algebra ---------------------------------------------------------------


def det(M: list[list[int]]) -> int:
    n = len(M)
    A = [[Fraction(x) for x in row] for row in M]
    sign = 1
    result = Fraction(1)
    for i in range(n):
        pivot = next((r for r in range(i, n) if A[r][i] != 0), None)
        if pivot is None:
            return 0
        if pivot != i:
            A[i], A[pivot] = A[pivot], A[i]
            sign = -sign
        result *= A[i][i]
        for r in range(i + 1, n):
            q = A[r][i] / A[i][i]
            A[r] = [a - q * b for a, b in zip(A[r], A[i])]
    return int(sign * result)


def rank(M: list[list[int]]) -> int:
    A = [[Fraction(x) for x in row] for row in M]
    r = 0
    cols = len(A[0]) if A else 0
    for c in range(cols):
        pivot = next((i for i in range(r, len(A)) if A[i][c] != 0), None)
        if pivot is None:
            continue
        A[r], A[pivot] = A[pivot], A[r]
        for i in range(len(A)):
            if i != r and A[i][c] != 0:
                q = A[i][c] / A[r][c]
                A[i] = [a - q * b for a, b in zip(A[i], A[r])]
        r += 1
    return r


def rank_mod(M: list[list[int]], p: int) -> int:
    A = [[x % p for x in row] for row in M]
    r = 0
    cols = len(A[0]) if A else 0
    for c in range(cols):
        pivot = next((i for i in range(r, len(A)) if A[i][c]), None)
        if pivot is None:
            continue
        A[r], A[pivot] = A[pivot], A[r]
        inv = pow(A[r][c], -1, p)
        A[r] = [a * inv % p for a in A[r]]
        for i in range(len(A)):
            if i != r and A[i][c]:
                q = A[i][c]
                A[i] = [(a - q * b) % p for a, b in zip(A[i], A[r])]
        r += 1
    return r


def invariant_factors(M: list[list[int]]) -> list[int]:
    """Nonzero invariant factors as ratios of determinantal divisors (gcd of k x k minors)."""
    rows, cols = len(M), len(M[0]) if M else 0
    divisors = [1]
    for k in range(1, min(rows, cols) + 1):
        g = 0
        for rs in combinations(range(rows), k):
            for cs in combinations(range(cols), k):
                g = gcd(g, det([[M[i][j] for j in cs] for i in rs]))
        if g == 0:
            break
        divisors.append(g)
    return [divisors[i] // divisors[i - 1] for i in range(1, len(divisors))]


# -- simplicial complexes -----------------------------------------------------------------


def ordered_complex_boundaries(facets) -> dict[int, list[list[int]]]:
    """Boundary matrices of the ordered simplicial complex generated by ``facets``."""
    simplices: dict[int, set] = {}
    for f in facets:
        f = tuple(sorted(f))
        for k in range(len(f)):
            for face in combinations(f, k + 1):
                simplices.setdefault(k, set()).add(face)
    basis = {k: sorted(v) for k, v in simplices.items()}
    out = {}
    for k in range(1, max(basis) + 1):
        index = {s: i for i, s in enumerate(basis[k - 1])}
        M = [[0] * len(basis[k]) for _ in basis[k - 1]]
        for j, s in enumerate(basis[k]):
            for i in range(len(s)):
                M[index[s[:i] + s[i + 1:]]][j] += (-1) ** i
        out[k] = M
    out["sizes"] = {k: len(v) for k, v in basis.items()}
    return out


def homology_ranks_over_field(facets, p: int | None = None) -> list[int]:
    """Betti numbers over Q (``p is None``) or over F_p."""
    B = ordered_complex_boundaries(facets)
    sizes = B["sizes"]
    top = max(sizes)
    rk = {k: (rank(B[k]) if p is None else rank_mod(B[k], p)) for k in range(1, top + 1)}
    return [sizes[k] - rk.get(k, 0) - rk.get(k + 1, 0) for k in range(top + 1)]


def is_functor_table(TC: dict, TD: dict, ob: dict, mor: dict) -> bool:
    for m, (s, t) in TC["morphisms"].items():
        if TD["morphisms"][mor[m]] != (ob[s], ob[t]):
            return False
    for o, i in TC["identities"].items():
        if mor[i] != TD["identities"][ob[o]]:
            return False
    return all(TD["composition"][(mor[g], mor[f])] == mor[h] for (g, f), h in TC["composition"].items())


def all_functors(TC: dict, TD: dict) -> list[tuple[dict, dict]]:
    """Every functor, by trying all assignments (tiny inputs only)."""
    out = []
    Cm = sorted(TC["morphisms"])
    for images in product(TD["objects"], repeat=len(TC["objects"])):
        ob = dict(zip(TC["objects"], images))
        options = [[x for x, st in TD["morphisms"].items() if st == (ob[TC["morphisms"][m][0]], ob[TC["morphisms"][m][1]])] for m in Cm]
        for choice in product(*options):
            mor = dict(zip(Cm, choice))
            if is_functor_table(TC, TD, ob, mor):
                out.append((ob, mor))
    return out


# -- plain-table categories built from scratch ---------------------------------------------


def delta_table(N: int, injective: bool = False) -> dict:
    """Delta^{<=N} (or its injective part) with morphisms keyed by (m, n, values)."""
    objects = list(range(N + 1))
    morphisms = {}
    for m in objects:
        for n in objects:
            for v in monotone_maps(m, n):
                if injective and len(set(v)) != len(v):
                    continue
                morphisms[(m, n, v)] = (m, n)
    identities = {n: (n, n, tuple(range(n + 1))) for n in objects}
    composition = {}
    for g in morphisms:
        for f in morphisms:
            if f[1] == g[0]:
                composition[(g, f)] = (f[0], g[1], compose_values(g[2], f[2]))
    return {"objects": objects, "morphisms": morphisms, "identities": identities, "composition": composition}


def opposite_table(T: dict) -> dict:
    return {
        "objects": T["objects"],
        "morphisms": {m: (t, s) for m, (s, t) in T["morphisms"].items()},
        "identities": T["identities"],
        "composition": {(f, g): h for (g, f), h in T["composition"].items()},
    }


def product_table(A: dict, B: dict) -> dict:
    objects = [(a, b) for a in A["objects"] for b in B["objects"]]
    morphisms = {
        (f, g): ((A["morphisms"][f][0], B["morphisms"][g][0]), (A["morphisms"][f][1], B["morphisms"][g][1]))
        for f in A["morphisms"]
        for g in B["morphisms"]
    }
    identities = {(a, b): (A["identities"][a], B["identities"][b]) for a, b in objects}
    composition = {}
    for (g1, f1), h1 in A["composition"].items():
        for (g2, f2), h2 in B["composition"].items():
            composition[((g1, g2), (f1, f2))] = (h1, h2)
    return {"objects": objects, "morphisms": morphisms, "identities": identities, "composition": composition}


def hom(T: dict, a, b) -> list:
    return [m for m, st in T["morphisms"].items() if st == (a, b)]


def comma_counts(T_C: dict, T_D: dict, ob: dict, mor: dict, d, side: str) -> tuple[int, int]:
    """(objects, morphisms) of the coslice (``side='co'``) or slice of ``p`` at ``d``."""
    if side == "co":
        objs = [(c, f) for c in T_C["objects"] for f in hom(T_D, d, ob[c])]
    else:
        objs = [(c, f) for c in T_C["objects"] for f in hom(T_D, ob[c], d)]
    arrows = 0
    for c1, f1 in objs:
        for c2, f2 in objs:
            for h in hom(T_C, c1, c2):
                if side == "co" and T_D["composition"][(mor[h], f1)] == f2:
                    arrows += 1
                if side != "co" and T_D["composition"][(f2, mor[h])] == f1:
                    arrows += 1
    return len(objs), arrows


def identity_maps(T: dict) -> tuple[dict, dict]:
    return {o: o for o in T["objects"]}, {m: m for m in T["morphisms"]}


def diagonal_maps(T: dict) -> tuple[dict, dict]:
    return {o: (o, o) for o in T["objects"]}, {m: (m, m) for m in T["morphisms"]}


def pair_comma_counts(T: dict, a, b) -> tuple[int, int, int]:
    """Objects, non-identity morphisms and components of C_{a/} x_C C_{b/}."""
    objs = [(c, f, g) for c in T["objects"] for f in hom(T, a, c) for g in hom(T, b, c)]
    ids = set(T["identities"].values())
    edges = []
    non_id = 0
    for x in objs:
        for y in objs:
            for h in hom(T, x[0], y[0]):
                if T["composition"][(h, x[1])] == y[1] and T["composition"][(h, x[2])] == y[2]:
                    edges.append((x, y))
                    if h not in ids:
                        non_id += 1
    return len(objs), non_id, components(objs, edges)



# -- colimit and limit comparisons along a functor --------------------------------------------


def colimit_labels(objects, morphisms, values, actions) -> dict:
    """Component label of every element ``(c, x)`` of ``colim``."""
    verts = [(c, x) for c in objects for x in values[c]]
    parent = {v: v for v in verts}

    def find(v):
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for m, (s, t) in morphisms.items():
        for x in values[s]:
            a, b = find((s, x)), find((t, actions[m][x]))
            if a != b:
                parent[a] = b
    roots = {}
    return {v: roots.setdefault(find(v), len(roots)) for v in verts}


def restriction_colimit_bijective(C_objects, C_morphisms, ob, mor, D_objects, D_morphisms, values, actions) -> bool:
    """Is ``colim_C F.p -> colim_D F`` a bijection?  (``values``/``actions`` describe ``F`` on ``D``.)"""
    down = colimit_labels(D_objects, D_morphisms, values, actions)
    pv = {c: values[ob[c]] for c in C_objects}
    pa = {m: actions[mor[m]] for m in C_morphisms}
    up = colimit_labels(C_objects, C_morphisms, pv, pa)
    induced = {}
    for (c, x), k in up.items():
        if induced.setdefault(k, down[(ob[c], x)]) != down[(ob[c], x)]:
            return False
    n_down = len(set(down.values()))
    return len(induced) == len(set(up.values())) and len(set(induced.values())) == len(induced) == n_down


def restriction_limit_bijective(C_objects, C_morphisms, ob, mor, D_objects, D_morphisms, values, actions) -> bool:
    """Is ``lim_D F -> lim_C F.p`` a bijection?"""
    big = limit_families(list(D_objects), D_morphisms, values, actions)
    pv = {c: values[ob[c]] for c in C_objects}
    pa = {m: actions[mor[m]] for m in C_morphisms}
    small = limit_families(list(C_objects), C_morphisms, pv, pa)
    index = {d: i for i, d in enumerate(D_objects)}
    image = {tuple(fam[index[ob[c]]] for c in C_objects) for fam in big}
    return len(image) == len(big) and image == small


def product_colimit_preserved(objects, morphisms, X, Y) -> bool:
    """Does ``colim (X x Y) -> colim X x colim Y`` biject?  ``X``, ``Y`` are ``(values, actions)``."""
    (xv, xa), (yv, ya) = X, Y
    pv = {c: [(a, b) for a in xv[c] for b in yv[c]] for c in objects}
    pa = {m: {(a, b): (xa[m][a], ya[m][b]) for a in xv[s] for b in yv[s]} for m, (s, t) in morphisms.items()}
    lx, ly = colimit_labels(objects, morphisms, xv, xa), colimit_labels(objects, morphisms, yv, ya)
    lp = colimit_labels(objects, morphisms, pv, pa)
    induced = {}
    for (c, (a, b)), k in lp.items():
        target = (lx[(c, a)], ly[(c, b)])
        if induced.setdefault(k, target) != target:
            return False
    total = len(set(lx.values())) * len(set(ly.values()))
    return len(set(induced.values())) == len(induced) == total
