"""Finite-set-valued diagrams over finite categories and over simplicial sets."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Hashable, Mapping, Sequence

from .category import FinCategory, Functor, Violation
from .sset import Simplex, SSet

Function = dict  # element -> element


def _sort_key(x: Hashable):
    return (type(x).__name__, repr(x))


def sorted_elements(xs) -> tuple:
    return tuple(sorted(set(xs), key=_sort_key))


def _same_values(a: dict, b: dict) -> bool:
    """Value sets compared as sets; their stored order is immaterial."""
    return a.keys() == b.keys() and all(set(a[k]) == set(b[k]) for k in a)


@dataclass(eq=False)
class SetDiagram:
    """A functor ``shape -> FinSet``."""

    shape: FinCategory
    values: dict[str, tuple]
    actions: dict[str, Function]

    @classmethod
    def build(
        cls,
        shape: FinCategory,
        values: Mapping[str, Sequence],
        actions: Mapping[str, Mapping],
    ) -> SetDiagram:
        """Identity actions may be omitted."""
        vals = {c: sorted_elements(values.get(c, ())) for c in shape.objects}
        acts = {m: dict(f) for m, f in actions.items()}
        for c, i in shape.identities.items():
            acts.setdefault(i, {x: x for x in vals[c]})
        return cls(shape, vals, acts)

    def act(self, m: str, x):
        return self.actions[m][x]

    def elements(self) -> list[tuple[str, object]]:
        return [(c, x) for c in self.shape.objects for x in self.values[c]]

    def size(self) -> int:
        return sum(len(v) for v in self.values.values())

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SetDiagram):
            return NotImplemented
        return self.shape == other.shape and _same_values(self.values, other.values) and self.actions == other.actions

    def __repr__(self) -> str:
        sizes = {c: len(v) for c, v in self.values.items()}
        return f"SetDiagram({sizes})"


def validate_diagram(D: SetDiagram) -> list[Violation]:
    C = D.shape
    out = []
    for c in C.objects:
        if c not in D.values:
            out.append(Violation("missing value", (c,)))
    if out:
        return out
    for m, (s, t) in sorted(C.morphisms.items()):
        f = D.actions.get(m)
        if f is None:
            out.append(Violation("missing action", (m,)))
            continue
        if set(f) != set(D.values[s]):
            out.append(Violation("action domain mismatch", (m,)))
        elif any(y not in set(D.values[t]) for y in f.values()):
            out.append(Violation("action leaves codomain", (m,)))
    if out:
        return out
    for c, i in C.identities.items():
        if any(D.actions[i][x] != x for x in D.values[c]):
            out.append(Violation("identity acts non-trivially", (c,)))
    for (g, f), h in sorted(C.composition.items()):
        fg, ff, fh = D.actions[g], D.actions[f], D.actions[h]
        if any(fg[ff[x]] != fh[x] for x in D.values[C.source(f)]):
            out.append(Violation("composition not respected", (g, f)))
    return out


def precompose(D: SetDiagram, p: Functor) -> SetDiagram:
    """``D . p`` for a functor ``p`` into ``D.shape``."""
    return SetDiagram(
        p.domain,
        {c: D.values[p.ob(c)] for c in p.domain.objects},
        {m: D.actions[p.mor(m)] for m in p.domain.morphisms},
    )


def constant_diagram(C: FinCategory, elements: Sequence = ("*",)) -> SetDiagram:
    return SetDiagram.build(C, {c: elements for c in C.objects}, {m: {x: x for x in elements} for m in C.morphisms})


def covariant_representable(C: FinCategory, a: str) -> SetDiagram:
    """``Hom(a, -)`` with elements the morphism ids."""
    values = {c: C.hom(a, c) for c in C.objects}
    actions = {m: {f: C.compose(m, f) for f in values[C.source(m)]} for m in C.morphisms}
    return SetDiagram(C, {c: tuple(v) for c, v in values.items()}, actions)


def pointwise_product(X: SetDiagram, Y: SetDiagram) -> SetDiagram:
    C = X.shape
    values = {c: tuple((x, y) for x in X.values[c] for y in Y.values[c]) for c in C.objects}
    actions = {
        m: {(x, y): (X.actions[m][x], Y.actions[m][y]) for (x, y) in values[C.source(m)]}
        for m in C.morphisms
    }
    return SetDiagram(C, values, actions)


@dataclass(eq=False)
class SSetDiagram:
    """A diagram ``base -> FinSet`` given on vertices and nondegenerate edges.

    An edge ``e`` goes from its vertex 0 (``d_1 e``) to its vertex 1
    (``d_0 e``); degenerate edges act as identities.
    """

    base: SSet
    values: dict[str, tuple]
    actions: dict[str, Function]

    def edge_action(self, e: Simplex) -> Function:
        if e.is_degenerate():
            return {x: x for x in self.values[e.gen]}
        return self.actions[e.gen]

    def spine_composite(self, x: Simplex, i: int, j: int) -> Function:
        """``(x|[i, j])_*``, composed left to right along consecutive spine edges."""
        S = self.base
        start = S.vertex(x, i)
        f = {a: a for a in self.values[start]}
        for k in range(i, j):
            step = self.edge_action(S.edge(x, k, k + 1))
            f = {a: step[b] for a, b in f.items()}
        return f

    def spine_composite_rtl(self, x: Simplex, i: int, j: int) -> Function:
        """Same composite, associated from the right."""
        S = self.base
        end = S.vertex(x, j)
        f = {a: a for a in self.values[end]}
        for k in reversed(range(i, j)):
            step = self.edge_action(S.edge(x, k, k + 1))
            f = {a: f[step[a]] for a in step}
        return f

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SSetDiagram):
            return NotImplemented
        return self.base == other.base and _same_values(self.values, other.values) and self.actions == other.actions


def validate_sset_diagram(F: SSetDiagram) -> list[Violation]:
    S = F.base
    out = []
    for v in S.vertices():
        if v not in F.values:
            out.append(Violation("missing value", (v,)))
    if out:
        return out
    for e in S.nondegenerate(1):
        x = Simplex((0, 1), e)
        src, tgt = S.vertex(x, 0), S.vertex(x, 1)
        f = F.actions.get(e)
        if f is None:
            out.append(Violation("missing action", (e,)))
        elif set(f) != set(F.values[src]) or any(y not in set(F.values[tgt]) for y in f.values()):
            out.append(Violation("action has wrong endpoints", (e,)))
    if out or S.truncation < 2:
        return out
    for g in S.nondegenerate(2):
        x = Simplex((0, 1, 2), g)
        a = F.edge_action(S.face(x, 2))
        b = F.edge_action(S.face(x, 0))
        c = F.edge_action(S.face(x, 1))
        if any(b[a[t]] != c[t] for t in a):
            out.append(Violation("2-simplex does not commute", (g,)))
    return out
