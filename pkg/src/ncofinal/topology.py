"""Connectivity invariants of finite truncated simplicial sets.

pi_0 by union-find, integral homology through Smith normal form, edge-path
presentations of pi_1 with a bounded Tietze search, and the tri-valued
n-connectivity verdict built from them.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from enum import Enum
from typing import Sequence

from .sset import Simplex, SSet
from .unionfind import UnionFind

DEFAULT_TIETZE_BUDGET = 10_000


class Verdict(str, Enum):
    YES = "yes"
    NO = "no"
    UNKNOWN = "unknown"

    @classmethod
    def combine(cls, verdicts) -> Verdict:
        verdicts = list(verdicts)
        if any(v is cls.NO for v in verdicts):
            return cls.NO
        if all(v is cls.YES for v in verdicts):
            return cls.YES
        return cls.UNKNOWN


# -- pi_0 -----------------------------------------------------------------------------


def pi0(S: SSet) -> tuple[int, dict[str, int]]:
    uf = UnionFind(S.vertices())
    if S.truncation >= 1:
        for e in S.nondegenerate(1):
            d0, d1 = S.generators[1][e][0], S.generators[1][e][1]
            uf.union(d1.gen, d0.gen)
    index = uf.index()
    return len(uf), index


# -- chains and Smith normal form --------------------------------------------------------


@dataclass
class ChainComplex:
    """Normalized chains: ``boundaries[k]`` has rows indexed by ``bases[k-1]``."""

    bases: dict[int, list[str]]
    boundaries: dict[int, list[list[int]]]

    def rank(self, k: int) -> int:
        return len(self.bases.get(k, []))


def chain_complex(S: SSet, top: int | None = None) -> ChainComplex:
    top = S.truncation if top is None else min(top, S.truncation)
    bases = {k: S.nondegenerate(k) for k in range(top + 1)}
    boundaries = {}
    for k in range(1, top + 1):
        row = {g: i for i, g in enumerate(bases[k - 1])}
        M = [[0] * len(bases[k]) for _ in bases[k - 1]]
        for j, g in enumerate(bases[k]):
            x = Simplex(tuple(range(k + 1)), g)
            for i in range(k + 1):
                f = S.face(x, i)
                if not f.is_degenerate():
                    M[row[f.gen]][j] += -1 if i % 2 else 1
        boundaries[k] = M
    return ChainComplex(bases, boundaries)


def matmul(A: Sequence[Sequence[int]], B: Sequence[Sequence[int]]) -> list[list[int]]:
    if not A or not B:
        return [[0] * (len(B[0]) if B else 0) for _ in A]
    cols = list(zip(*B))
    return [[sum(a * b for a, b in zip(row, col)) for col in cols] for row in A]


def _identity(n: int) -> list[list[int]]:
    return [[int(i == j) for j in range(n)] for i in range(n)]


@dataclass
class SmithForm:
    factors: list[int]
    diagonal: list[list[int]]
    U: list[list[int]] | None = None
    V: list[list[int]] | None = None

    @property
    def rank(self) -> int:
        return len(self.factors)


def smith_normal_form(M: Sequence[Sequence[int]], witnesses: bool = False) -> SmithForm:
    """Invariant factors ``d_1 | d_2 | ...`` of an integer matrix.

    With ``witnesses`` also returns unimodular ``U, V`` with ``U M V`` diagonal.
    Python integers keep the arithmetic exact.
    """
    A = [list(map(int, row)) for row in M]
    m = len(A)
    n = len(A[0]) if m else 0
    U = _identity(m) if witnesses else None
    V = _identity(n) if witnesses else None

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        if U is not None:
            U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in A:
            row[i], row[j] = row[j], row[i]
        if V is not None:
            for row in V:
                row[i], row[j] = row[j], row[i]

    def add_row(dst, src, q):  # row[dst] += q * row[src]
        A[dst] = [a + q * b for a, b in zip(A[dst], A[src])]
        if U is not None:
            U[dst] = [a + q * b for a, b in zip(U[dst], U[src])]

    def add_col(dst, src, q):
        for row in A:
            row[dst] += q * row[src]
        if V is not None:
            for row in V:
                row[dst] += q * row[src]

    t = 0
    while t < min(m, n):
        pivot = None
        for i in range(t, m):
            for j in range(t, n):
                if A[i][j] and (pivot is None or abs(A[i][j]) < abs(A[pivot[0]][pivot[1]])):
                    pivot = (i, j)
        if pivot is None:
            break
        swap_rows(t, pivot[0])
        swap_cols(t, pivot[1])
        while True:
            dirty = False
            for i in range(t + 1, m):
                if A[i][t]:
                    add_row(i, t, -(A[i][t] // A[t][t]))
                    if A[i][t]:
                        swap_rows(t, i)
                        dirty = True
            for j in range(t + 1, n):
                if A[t][j]:
                    add_col(j, t, -(A[t][j] // A[t][t]))
                    if A[t][j]:
                        swap_cols(t, j)
                        dirty = True
            if dirty:
                continue
            bad = next(
                (i for i in range(t + 1, m) for j in range(t + 1, n) if A[i][j] % A[t][t]),
                None,
            )
            if bad is None:
                break
            add_row(t, bad, 1)
        if A[t][t] < 0:
            A[t] = [-a for a in A[t]]
            if U is not None:
                U[t] = [-a for a in U[t]]
        t += 1
    factors = [A[i][i] for i in range(min(m, n)) if A[i][i]]
    return SmithForm(factors, A, U, V)


# -- homology ----------------------------------------------------------------------------


@dataclass(frozen=True)
class HomologyGroup:
    betti: int
    torsion: tuple[int, ...] = ()

    def is_zero(self) -> bool:
        return self.betti == 0 and not self.torsion

    def __str__(self) -> str:
        parts = ["Z"] * self.betti + [f"Z/{t}" for t in self.torsion]
        return " + ".join(parts) if parts else "0"


def homology(S: SSet, top: int | None = None, reduced: bool = False) -> list[HomologyGroup]:
    """``H_0 .. H_top`` (default: up to the truncation level)."""
    top = S.truncation if top is None else min(top, S.truncation)
    cc = chain_complex(S, min(top + 1, S.truncation))
    forms = {k: smith_normal_form(M) for k, M in cc.boundaries.items()}
    out = []
    for k in range(top + 1):
        rk_out = forms[k].rank if k in forms else 0
        incoming = forms.get(k + 1)
        rk_in = incoming.rank if incoming else 0
        torsion = tuple(d for d in incoming.factors if d > 1) if incoming else ()
        betti = cc.rank(k) - rk_out - rk_in
        if reduced and k == 0 and cc.rank(0):
            betti -= 1
        out.append(HomologyGroup(betti, torsion))
    return out


# -- fundamental group -------------------------------------------------------------------

Letter = tuple[str, int]
Word = tuple[Letter, ...]


def free_reduce(word: Sequence[Letter]) -> Word:
    out: list[Letter] = []
    for g, e in word:
        if out and out[-1][0] == g and out[-1][1] == -e:
            out.pop()
        else:
            out.append((g, e))
    return tuple(out)


def cyclic_reduce(word: Sequence[Letter]) -> Word:
    w = list(free_reduce(word))
    while len(w) >= 2 and w[0][0] == w[-1][0] and w[0][1] == -w[-1][1]:
        w = w[1:-1]
    return tuple(w)


def invert(word: Sequence[Letter]) -> Word:
    return tuple((g, -e) for g, e in reversed(word))


@dataclass(frozen=True)
class GroupPresentation:
    generators: tuple[str, ...]
    relators: tuple[Word, ...]

    def __str__(self) -> str:
        def spell(w):
            return "".join(g if e > 0 else f"{g}^-1" for g, e in w) or "1"

        return f"<{', '.join(self.generators)} | {', '.join(spell(r) for r in self.relators)}>"


def spanning_tree(S: SSet, basepoint: str) -> tuple[list[str], set[str]]:
    """Breadth-first tree from ``basepoint``; neighbours visited in edge-id order.

    Returns the vertices reached (in visiting order) and the tree edges.
    """
    adjacent: dict[str, list[tuple[str, str]]] = {v: [] for v in S.vertices()}
    if S.truncation >= 1:
        for e in S.nondegenerate(1):
            tgt, src = S.generators[1][e][0].gen, S.generators[1][e][1].gen
            adjacent[src].append((e, tgt))
            adjacent[tgt].append((e, src))
    for v in adjacent:
        adjacent[v].sort()
    seen, order, tree = {basepoint}, [basepoint], set()
    queue = deque([basepoint])
    while queue:
        v = queue.popleft()
        for e, w in adjacent[v]:
            if w not in seen:
                seen.add(w)
                order.append(w)
                tree.add(e)
                queue.append(w)
    return order, tree


def pi1_presentation(S: SSet, basepoint: str | None = None) -> GroupPresentation:
    """Edge-path presentation of the fundamental group at ``basepoint``."""
    vertices = S.vertices()
    if basepoint is None:
        if not vertices:
            raise ValueError("empty simplicial set has no basepoint")
        basepoint = vertices[0]
    if basepoint not in S.generators[0]:
        raise ValueError(f"{basepoint!r} is not a vertex")
    reached, tree = spanning_tree(S, basepoint)
    component = set(reached)
    edges = [e for e in S.nondegenerate(1) if S.generators[1][e][1].gen in component] if S.truncation >= 1 else []
    generators = tuple(e for e in edges if e not in tree)
    live = set(generators)

    def letter(f: Simplex, sign: int) -> Word:
        if f.is_degenerate() or f.gen not in live:
            return ()
        return ((f.gen, sign),)

    relators = []
    if S.truncation >= 2:
        for g in S.nondegenerate(2):
            x = Simplex((0, 1, 2), g)
            if S.vertex(x, 0) not in component:
                continue
            word = letter(S.face(x, 2), 1) + letter(S.face(x, 0), 1) + letter(S.face(x, 1), -1)
            relators.append(free_reduce(word))
    return GroupPresentation(generators, tuple(relators))


def abelianization(P: GroupPresentation) -> HomologyGroup:
    col = {g: j for j, g in enumerate(P.generators)}
    M = []
    for r in P.relators:
        row = [0] * len(P.generators)
        for g, e in r:
            row[col[g]] += e
        M.append(row)
    if not P.generators:
        return HomologyGroup(0)
    form = smith_normal_form(M) if M else SmithForm([], [])
    return HomologyGroup(len(P.generators) - form.rank, tuple(d for d in form.factors if d > 1))


@dataclass
class TietzeResult:
    certified: bool
    trace: list[dict] = field(default_factory=list)
    remaining: GroupPresentation | None = None
    steps: int = 0


def _substitute(word: Word, g: str, replacement: Word) -> Word:
    out: list[Letter] = []
    for h, e in word:
        if h == g:
            out.extend(replacement if e > 0 else invert(replacement))
        else:
            out.append((h, e))
    return cyclic_reduce(out)


def _find_elimination(relators: list[Word]):
    best = None
    for idx, r in enumerate(relators):
        counts: dict[str, int] = {}
        for g, _ in r:
            counts[g] = counts.get(g, 0) + 1
        for g in sorted(counts):
            if counts[g] == 1:
                key = (len(r), g, idx)
                if best is None or key < best:
                    best = key
    return best


def _solve(r: Word, g: str) -> Word:
    """From ``r == 1`` with ``g`` occurring once, express ``g`` as a word."""
    k = next(i for i, (h, _) in enumerate(r) if h == g)
    rotated = r[k:] + r[:k]
    e, rest = rotated[0][1], rotated[1:]
    # g^e . rest == 1
    return invert(rest) if e > 0 else free_reduce(rest)


def _shorten(relators: list[Word]):
    """One relator-driven rewrite that strictly shortens some relator, if any."""
    for i, s in enumerate(relators):
        n = len(s)
        if n == 0:
            continue
        for word in (s, invert(s)):
            for k in range(n):
                rot = word[k:] + word[:k]
                for ulen in range(n // 2 + 1, n + 1):
                    u, v = rot[:ulen], rot[ulen:]
                    # u v == 1, so u may be replaced by v^-1
                    for j, r in enumerate(relators):
                        if j == i or len(r) < ulen:
                            continue
                        m = len(r)
                        doubled = r + r
                        for start in range(m):
                            if doubled[start:start + ulen] == u:
                                new = doubled[start + ulen:start + m] + invert(v)
                                new = cyclic_reduce(new)
                                if len(new) < m:
                                    return j, i, new
    return None


def tietze_trivialize(P: GroupPresentation, budget: int = DEFAULT_TIETZE_BUDGET) -> TietzeResult:
    """Bounded search for a proof that ``P`` presents the trivial group.

    Generators are eliminated through relators in which they occur exactly
    once; when none exists, relators are shortened using the others. The
    result is certified only when every generator was eliminated, and the
    trace can be replayed with :func:`replay_tietze`.
    """
    gens = list(P.generators)
    rels = [cyclic_reduce(r) for r in P.relators]
    trace: list[dict] = []
    steps = 0
    while True:
        rels = [r for r in rels if r]
        if not gens:
            return TietzeResult(True, trace, GroupPresentation((), ()), steps)
        if steps >= budget:
            break
        found = _find_elimination(rels)
        if found is not None:
            _, g, idx = found
            r = rels.pop(idx)
            replacement = _solve(r, g)
            rels = [_substitute(w, g, replacement) for w in rels]
            gens.remove(g)
            trace.append({"op": "eliminate", "generator": g, "relator": r, "replacement": replacement})
            steps += 1 + len(rels)
            continue
        rewrite = _shorten(rels)
        if rewrite is None:
            break
        j, i, new = rewrite
        trace.append({"op": "rewrite", "target": rels[j], "using": rels[i], "result": new})
        rels[j] = new
        steps += 1
    return TietzeResult(False, trace, GroupPresentation(tuple(gens), tuple(rels)), steps)


def replay_tietze(P: GroupPresentation, trace: list[dict]) -> bool:
    """Independently re-check a certified trace: every step is a valid Tietze move."""
    gens = set(P.generators)
    rels = {cyclic_reduce(r) for r in P.relators} - {()}
    for step in trace:
        if step["op"] == "eliminate":
            g, r, replacement = step["generator"], tuple(step["relator"]), tuple(step["replacement"])
            if r not in rels or sum(1 for h, _ in r if h == g) != 1:
                return False
            if cyclic_reduce(_substitute(r, g, replacement)) != ():
                return False
            if any(h == g for h, _ in replacement):
                return False
            rels.discard(r)
            rels = {_substitute(w, g, replacement) for w in rels} - {()}
            gens.discard(g)
        elif step["op"] == "rewrite":
            target, using, result = tuple(step["target"]), tuple(step["using"]), tuple(step["result"])
            if target not in rels or using not in rels:
                return False
            # result must equal target in the free group modulo the normal closure of ``using``;
            # the rewrite replaced a cyclic subword u of target by v^-1 where uv is a conjugate of using^{+-1}
            if not _is_rewrite(target, using, result):
                return False
            rels.discard(target)
            if result:
                rels.add(result)
        else:
            return False
    return not gens


def _is_rewrite(target: Word, using: Word, result: Word) -> bool:
    n, m = len(using), len(target)
    for word in (using, invert(using)):
        for k in range(n):
            rot = word[k:] + word[:k]
            for ulen in range(1, n + 1):
                u, v = rot[:ulen], rot[ulen:]
                doubled = target + target
                for start in range(m):
                    if doubled[start:start + ulen] == u:
                        if cyclic_reduce(doubled[start + ulen:start + m] + invert(v)) == result:
                            return True
    return False


# -- connectivity ------------------------------------------------------------------------


@dataclass
class ConnectivityReport:
    level: int | str
    verdict: Verdict
    witness: dict | None = None
    certificate: dict | None = None
    reason: str | None = None

    def to_dict(self) -> dict:
        out = {"level": self.level, "verdict": self.verdict.value}
        if self.witness is not None:
            out["witness"] = self.witness
        if self.certificate is not None:
            out["certificate"] = self.certificate
        if self.reason is not None:
            out["reason"] = self.reason
        return out


def _disconnection_witness(S: SSet) -> dict | None:
    count, comp = pi0(S)
    if count <= 1:
        return None
    first: dict[int, str] = {}
    for v in S.vertices():
        first.setdefault(comp[v], v)
    return {"kind": "disconnected", "vertices": [first[0], first[1]], "components": count}


def _trace_to_json(trace: list[dict]) -> list[dict]:
    def word(w):
        return [[g, e] for g, e in w]

    return [{k: word(v) if isinstance(v, tuple) else v for k, v in step.items()} for step in trace]


def connectivity(S: SSet, n: int, tietze_budget: int = DEFAULT_TIETZE_BUDGET) -> ConnectivityReport:
    """Whether ``S`` is ``n``-connective (0: nonempty, 1: connected, 2: simply connected, ...).

    ``No`` is only reported from invariants fully determined by the stored
    truncation; if the truncation is below ``n`` and nothing fails, the
    answer is ``Unknown``.
    """
    if n <= -1:
        return ConnectivityReport(n, Verdict.YES)
    if S.is_empty():
        return ConnectivityReport(n, Verdict.NO, witness={"kind": "empty"})
    if n == 0:
        return ConnectivityReport(n, Verdict.YES)
    split = _disconnection_witness(S)
    if split:
        return ConnectivityReport(n, Verdict.NO, witness=split)
    if n == 1:
        return ConnectivityReport(n, Verdict.YES)

    if S.truncation >= 2:
        P = pi1_presentation(S)
        ab = abelianization(P)
        if not ab.is_zero():
            return ConnectivityReport(
                n, Verdict.NO, witness={"kind": "abelianization", "betti": ab.betti, "torsion": list(ab.torsion)}
            )
    top = min(n - 1, S.truncation - 1)
    if top >= 2:
        groups = homology(S, top)
        for k in range(2, top + 1):
            if not groups[k].is_zero():
                return ConnectivityReport(
                    n,
                    Verdict.NO,
                    witness={"kind": "homology", "degree": k, "betti": groups[k].betti, "torsion": list(groups[k].torsion)},
                )
    if S.truncation < n:
        return ConnectivityReport(n, Verdict.UNKNOWN, reason="insufficient truncation")
    result = tietze_trivialize(P, tietze_budget)
    if not result.certified:
        return ConnectivityReport(n, Verdict.UNKNOWN, reason="pi_1 not certified trivial within budget")
    return ConnectivityReport(
        n,
        Verdict.YES,
        certificate={
            "presentation": str(P),
            "tietze_trace": _trace_to_json(result.trace),
            "vanishing_homology_degrees": list(range(1, n)),
        },
    )


def weak_contractible(S: SSet, tietze_budget: int = DEFAULT_TIETZE_BUDGET) -> ConnectivityReport:
    """Contractibility of ``S`` viewed as a complex of dimension ``S.truncation``."""
    level = "inf"
    if S.is_empty():
        return ConnectivityReport(level, Verdict.NO, witness={"kind": "empty"})
    split = _disconnection_witness(S)
    if split:
        return ConnectivityReport(level, Verdict.NO, witness=split)
    P = None
    if S.truncation >= 2:
        P = pi1_presentation(S)
        ab = abelianization(P)
        if not ab.is_zero():
            return ConnectivityReport(
                level, Verdict.NO, witness={"kind": "abelianization", "betti": ab.betti, "torsion": list(ab.torsion)}
            )
    groups = homology(S, reduced=True)
    for k, h in enumerate(groups):
        if not h.is_zero():
            return ConnectivityReport(
                level, Verdict.NO, witness={"kind": "homology", "degree": k, "betti": h.betti, "torsion": list(h.torsion)}
            )
    if P is None:
        # a connected graph with H_1 = 0 is a tree
        return ConnectivityReport(level, Verdict.YES, certificate={"vanishing_homology_degrees": list(range(S.truncation + 1))})
    result = tietze_trivialize(P, tietze_budget)
    if not result.certified:
        return ConnectivityReport(level, Verdict.UNKNOWN, reason="pi_1 not certified trivial within budget")
    return ConnectivityReport(
        level,
        Verdict.YES,
        certificate={
            "presentation": str(P),
            "tietze_trace": _trace_to_json(result.trace),
            "vanishing_homology_degrees": list(range(S.truncation + 1)),
        },
    )
