"""Truncated simplicial sets stored in Eilenberg-Zilber normal form.

Only nondegenerate simplices are stored. A general simplex is a pair
``Simplex(op, gen)`` where ``op`` is a surjection ``[k] ->> [j]`` (given by
its values) and ``gen`` a nondegenerate ``j``-simplex; it stands for
``op^* gen``.
"""

from __future__ import annotations

from itertools import combinations, product as iproduct
from typing import Iterable, Mapping, NamedTuple, Sequence

from .category import Violation, mid
from .delta import codegeneracy, coface, surjections


class TruncationError(ValueError):
    """An operation needs simplices above the stored truncation level."""


class Simplex(NamedTuple):
    op: tuple[int, ...]
    gen: str

    @property
    def dim(self) -> int:
        return len(self.op) - 1

    @property
    def gen_dim(self) -> int:
        return self.op[-1]

    def is_degenerate(self) -> bool:
        return self.op[-1] != len(self.op) - 1

    def encode(self) -> str:
        return f"{self.gen}@{','.join(map(str, self.op))}"


def nondeg(gen: str, k: int) -> Simplex:
    return Simplex(tuple(range(k + 1)), gen)


def decode(text: str) -> Simplex:
    gen, _, op = text.rpartition("@")
    return Simplex(tuple(int(v) for v in op.split(",")), gen)


class SSet:
    """A simplicial set truncated at dimension ``truncation``.

    ``generators[k]`` maps each nondegenerate ``k``-simplex id to its faces
    ``(d_0 x, ..., d_k x)``, each already in normal form.
    """

    def __init__(self, truncation: int, generators: Mapping[int, Mapping[str, Sequence[Simplex]]]):
        if truncation < 0:
            raise ValueError("truncation must be non-negative")
        self.truncation = truncation
        self.generators: dict[int, dict[str, tuple[Simplex, ...]]] = {}
        for k in range(truncation + 1):
            level = generators.get(k, {})
            self.generators[k] = {
                g: tuple(Simplex(tuple(f[0]), f[1]) for f in level[g]) for g in sorted(level)
            }
        extra = [k for k, v in generators.items() if k > truncation and v]
        if extra:
            raise TruncationError(f"generators in dimension {extra[0]} above truncation {truncation}")
        self._memo: dict[tuple[Simplex, tuple[int, ...]], Simplex] = {}

    # -- structure ------------------------------------------------------------

    def nondegenerate(self, k: int) -> list[str]:
        return list(self.generators.get(k, {}))

    def count(self, k: int) -> int:
        return len(self.generators.get(k, {}))

    def dimension(self) -> int:
        dims = [k for k, v in self.generators.items() if v]
        return max(dims) if dims else -1

    def vertices(self) -> list[str]:
        return self.nondegenerate(0)

    def is_empty(self) -> bool:
        return not self.generators[0]

    def apply(self, x: Simplex, values: Sequence[int]) -> Simplex:
        """``theta^* x`` for the monotone map ``theta: [m] -> [dim x]`` with these values."""
        values = tuple(values)
        key = (x, values)
        hit = self._memo.get(key)
        if hit is not None:
            return hit
        through = tuple(x.op[v] for v in values)
        image = sorted(set(through))
        position = {v: p for p, v in enumerate(image)}
        epi = tuple(position[v] for v in through)
        y = self._restrict(x.gen, x.gen_dim, tuple(image))
        result = Simplex(tuple(y.op[e] for e in epi), y.gen)
        self._memo[key] = result
        return result

    def _restrict(self, gen: str, j: int, mono: tuple[int, ...]) -> Simplex:
        if len(mono) == j + 1:
            return nondeg(gen, j)
        missing = max(set(range(j + 1)) - set(mono))
        rest = tuple(v if v < missing else v - 1 for v in mono)
        try:
            face = self.generators[j][gen][missing]
        except KeyError:
            raise KeyError(f"unknown {j}-simplex {gen!r}") from None
        return self.apply(face, rest)

    def face(self, x: Simplex, i: int) -> Simplex:
        return self.apply(x, coface(x.dim, i).values)

    def degeneracy(self, x: Simplex, i: int) -> Simplex:
        if x.dim + 1 > self.truncation:
            raise TruncationError(f"s_{i} of a {x.dim}-simplex exceeds truncation {self.truncation}")
        return self.apply(x, codegeneracy(x.dim, i).values)

    def vertex(self, x: Simplex, i: int) -> str:
        """The ``i``-th vertex of ``x``: all faces except ``d_i`` applied."""
        if not 0 <= i <= x.dim:
            raise IndexError(f"vertex {i} of a {x.dim}-simplex")
        return self.apply(x, (i,)).gen

    def edge(self, x: Simplex, i: int, j: int) -> Simplex:
        """The edge of ``x`` from vertex ``i`` to vertex ``j``."""
        return self.apply(x, (i, j))

    def all_simplices(self, k: int) -> list[Simplex]:
        if k > self.truncation:
            raise TruncationError(f"level {k} exceeds truncation {self.truncation}")
        out = []
        for j in range(k + 1):
            ops = [s.values for s in surjections(k, j)]
            for g in self.generators[j]:
                out.extend(Simplex(op, g) for op in ops)
        return out

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SSet):
            return NotImplemented
        return self.truncation == other.truncation and self.generators == other.generators

    def __repr__(self) -> str:
        counts = ", ".join(str(self.count(k)) for k in range(self.truncation + 1))
        return f"SSet(truncation={self.truncation}, nondegenerate=[{counts}])"


def validate_sset(S: SSet) -> list[Violation]:
    out = []
    for k in range(S.truncation + 1):
        for g, faces in S.generators[k].items():
            if k == 0:
                if faces:
                    out.append(Violation("vertex with faces", (g,)))
                continue
            if len(faces) != k + 1:
                out.append(Violation("wrong face count", (g, len(faces))))
                continue
            for i, f in enumerate(faces):
                if len(f.op) != k or list(f.op) != sorted(f.op) or set(f.op) != set(range(f.op[-1] + 1)):
                    out.append(Violation("face operator not a surjection", (g, i, f.op)))
                elif f.gen not in S.generators.get(f.op[-1], {}):
                    out.append(Violation("face references unknown simplex", (g, i, f.gen)))
    if out:
        return out
    for k in range(2, S.truncation + 1):
        for g in S.generators[k]:
            x = nondeg(g, k)
            for j in range(k + 1):
                for i in range(j):
                    if S.face(S.face(x, j), i) != S.face(S.face(x, i), j - 1):
                        out.append(Violation("simplicial identity d_i d_j", (g, i, j)))
    return out


def simplicial_identity_failures(S: SSet) -> list[tuple]:
    """Exhaustive check of all simplicial identities on the expanded structure."""
    bad = []
    for k in range(S.truncation + 1):
        for x in S.all_simplices(k):
            if k >= 2:
                for j in range(k + 1):
                    for i in range(j):
                        if S.face(S.face(x, j), i) != S.face(S.face(x, i), j - 1):
                            bad.append(("dd", x, i, j))
            if k + 1 > S.truncation:
                continue
            for j in range(k + 1):
                y = S.degeneracy(x, j)
                if S.face(y, j) != x or S.face(y, j + 1) != x:
                    bad.append(("ds=id", x, j))
                for i in range(k + 2):
                    if i < j and k >= 1:
                        if S.face(y, i) != S.degeneracy(S.face(x, i), j - 1):
                            bad.append(("ds", x, i, j))
                    elif i > j + 1 and k >= 1:
                        if S.face(y, i) != S.degeneracy(S.face(x, i - 1), j):
                            bad.append(("ds", x, i, j))
                if k + 2 <= S.truncation:
                    for i in range(j + 1):
                        if S.degeneracy(y, i) != S.degeneracy(S.degeneracy(x, i), j + 1):
                            bad.append(("ss", x, i, j))
    return bad


# -- constructors ---------------------------------------------------------------


def _sid(vs: Iterable[int]) -> str:
    return "(" + ",".join(map(str, vs)) + ")"


def from_ordered_complex(facets: Iterable[Iterable[int]], truncation: int | None = None) -> SSet:
    """Simplicial set of an ordered simplicial complex (vertices ordered by value)."""
    simplices: set[tuple[int, ...]] = set()
    for facet in facets:
        facet = tuple(sorted(set(facet)))
        for r in range(1, len(facet) + 1):
            simplices.update(combinations(facet, r))
    top = max((len(s) - 1 for s in simplices), default=0)
    truncation = top if truncation is None else truncation
    gens: dict[int, dict[str, list]] = {}
    for s in simplices:
        k = len(s) - 1
        if k > truncation:
            continue
        faces = [] if k == 0 else [nondeg(_sid(s[:i] + s[i + 1:]), k - 1) for i in range(k + 1)]
        gens.setdefault(k, {})[_sid(s)] = faces
    return SSet(truncation, gens)


def standard(n: int) -> SSet:
    return from_ordered_complex([range(n + 1)], n)


def boundary(n: int) -> SSet:
    if n < 1:
        raise ValueError("boundary needs n >= 1")
    return from_ordered_complex(combinations(range(n + 1), n), n)


def horn(n: int, k: int) -> SSet:
    if not 0 <= k <= n or n < 1:
        raise ValueError(f"no horn Lambda^{n}_{k}")
    facets = [tuple(v for v in range(n + 1) if v != i) for i in range(n + 1) if i != k]
    return from_ordered_complex(facets, n)


def point(truncation: int = 0) -> SSet:
    return from_ordered_complex([[0]], truncation)


def circle(truncation: int = 2) -> SSet:
    """One vertex and one nondegenerate loop."""
    return SSet(truncation, {0: {"v": []}, 1: {"e": [nondeg("v", 0), nondeg("v", 0)]}})


# Minimal six-vertex triangulation of the real projective plane.
RP2_FACETS = (
    (0, 1, 2), (0, 2, 3), (0, 3, 4), (0, 4, 5), (0, 1, 5),
    (1, 2, 4), (2, 3, 5), (1, 3, 4), (2, 4, 5), (1, 3, 5),
)


def projective_plane() -> SSet:
    return from_ordered_complex(RP2_FACETS, 2)


def disjoint_union(S: SSet, T: SSet) -> SSet:
    D = min(S.truncation, T.truncation)

    def tag(x: Simplex, side: str) -> Simplex:
        return Simplex(x.op, mid(side, x.gen))

    gens = {}
    for k in range(D + 1):
        level = {}
        for side, X in (("0", S), ("1", T)):
            for g, faces in X.generators[k].items():
                level[mid(side, g)] = [tag(f, side) for f in faces]
        gens[k] = level
    return SSet(D, gens)


def skeleton(S: SSet, k: int) -> SSet:
    """Drop the generators above dimension ``k``; the truncation level is kept."""
    return SSet(S.truncation, {j: S.generators[j] for j in range(min(k, S.truncation) + 1)})


def truncate(S: SSet, k: int) -> SSet:
    if k > S.truncation:
        raise TruncationError(f"cannot raise truncation {S.truncation} to {k}")
    return SSet(k, {j: S.generators[j] for j in range(k + 1)})


def _reverse(x: Simplex) -> Simplex:
    m, j = x.dim, x.gen_dim
    return Simplex(tuple(j - x.op[m - t] for t in range(m + 1)), x.gen)


def opposite(S: SSet) -> SSet:
    gens = {}
    for k in range(S.truncation + 1):
        gens[k] = {g: [_reverse(faces[k - i]) for i in range(k + 1)] if k else [] for g, faces in S.generators[k].items()}
    return SSet(S.truncation, gens)


def _joint_normal_form(S: SSet, T: SSet, a: Simplex, b: Simplex) -> Simplex:
    k = a.dim
    eps = [0]
    for t in range(k):
        collapse = a.op[t] == a.op[t + 1] and b.op[t] == b.op[t + 1]
        eps.append(eps[-1] + (0 if collapse else 1))
    section = [eps.index(v) for v in range(eps[-1] + 1)]
    a2, b2 = S.apply(a, section), T.apply(b, section)
    return Simplex(tuple(eps), mid(a2.encode(), b2.encode()))


def product(S: SSet, T: SSet, dim_bound: int | None = None) -> SSet:
    """Levelwise product, truncated at ``dim_bound``."""
    D = min(S.truncation, T.truncation) if dim_bound is None else dim_bound
    if D > S.truncation or D > T.truncation:
        raise TruncationError("dim_bound exceeds a factor's truncation")
    gens: dict[int, dict[str, list[Simplex]]] = {}
    for k in range(D + 1):
        level = {}
        for a, b in iproduct(S.all_simplices(k), T.all_simplices(k)):
            if any(a.op[t] == a.op[t + 1] and b.op[t] == b.op[t + 1] for t in range(k)):
                continue
            faces = [] if k == 0 else [
                _joint_normal_form(S, T, S.face(a, i), T.face(b, i)) for i in range(k + 1)
            ]
            level[mid(a.encode(), b.encode())] = faces
        gens[k] = level
    return SSet(D, gens)
