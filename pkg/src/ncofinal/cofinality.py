"""Cofinality and siftedness checks for functors between finite categories,
plus probes that test the verdicts against colimit and limit behaviour."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import product as iproduct

from .category import FinCategory, Functor, check_functor, mid, opposite, opposite_functor
from .colimits import colim_finset, comparison_is_bijective, limit_comparison_is_bijective
from .constructions import coslice_along, coslice_projection, multislice, nerve, pullback, slice_along
from .diagrams import SetDiagram, constant_diagram, covariant_representable, pointwise_product, precompose, validate_diagram
from .random_gen import random_set_diagram
from .topology import DEFAULT_TIETZE_BUDGET, ConnectivityReport, Verdict, connectivity, weak_contractible
from .unionfind import UnionFind

INF = "inf"


def _aggregate(reports) -> Verdict:
    return Verdict.combine([r.verdict for r in reports])


def initial_or_terminal(K: FinCategory) -> dict | None:
    """An initial or terminal object of ``K``, if any; its nerve is then contractible."""
    for o in K.objects:
        if all(len(K.hom(o, x)) == 1 for x in K.objects):
            return {"kind": "initial object", "object": o}
    for o in K.objects:
        if all(len(K.hom(x, o)) == 1 for x in K.objects):
            return {"kind": "terminal object", "object": o}
    return None


def comma_connectivity(
    K: FinCategory,
    n: int | str,
    tietze_budget: int = DEFAULT_TIETZE_BUDGET,
    inf_dim: int = 3,
    shortcuts: bool = True,
) -> ConnectivityReport:
    """Connectivity of the nerve of ``K`` at level ``n``.

    A category with an initial or terminal object has contractible nerve, so
    that case is answered Yes at every level with the object as certificate
    (disable with ``shortcuts=False``).  ``n == "inf"`` otherwise is decided
    only when the nerve has no nondegenerate simplices above ``inf_dim``; a
    finite-level No is still reported and anything else is Unknown.
    """
    if shortcuts and K.objects:
        cert = initial_or_terminal(K)
        if cert is not None:
            return ConnectivityReport(n, Verdict.YES, None, cert, None)
    if n == INF:
        N = nerve(K, inf_dim + 1)
        if not N.nondegenerate(inf_dim + 1):
            return weak_contractible(nerve(K, inf_dim), tietze_budget)
        rep = connectivity(nerve(K, inf_dim), inf_dim, tietze_budget)
        if rep.verdict is Verdict.NO:
            return rep
        return ConnectivityReport(INF, Verdict.UNKNOWN, None, None, "nerve exceeds inspected dimension")
    # levels <= 1 read only vertices and edges
    dim = 1 if n <= 1 else max(n, 2)
    return connectivity(nerve(K, dim), n, tietze_budget)


@dataclass
class CofinalityReport:
    direction: str
    level: int | str
    overall: Verdict
    per_object: dict[str, ConnectivityReport]
    witness: dict | None = None

    def to_dict(self) -> dict:
        from .serialize import category_to_payload

        out = {
            "direction": self.direction,
            "level": self.level,
            "overall": self.overall.value,
            "per_object": {d: r.to_dict() for d, r in self.per_object.items()},
            "witness": None,
        }
        if self.witness is not None:
            out["witness"] = {
                "object": self.witness["object"],
                "comma": category_to_payload(self.witness["comma"]),
            }
        return out


def _cofinal(p: Functor, n, direction: str, tietze_budget: int, shortcuts: bool) -> CofinalityReport:
    check_functor(p)
    build = coslice_along if direction == "right" else slice_along
    per_object: dict[str, ConnectivityReport] = {}
    commas: dict[str, FinCategory] = {}
    for d in p.codomain.objects:
        commas[d] = build(p, d)
        per_object[d] = comma_connectivity(commas[d], n, tietze_budget, shortcuts=shortcuts)
    overall = _aggregate(per_object.values())
    witness = None
    if overall is Verdict.NO:
        d = next(d for d, r in per_object.items() if r.verdict is Verdict.NO)
        witness = {"object": d, "comma": commas[d]}
    return CofinalityReport(direction, n, overall, per_object, witness)


def right_n_cofinal(
    p: Functor, n, tietze_budget: int = DEFAULT_TIETZE_BUDGET, shortcuts: bool = True
) -> CofinalityReport:
    """Every ``coslice_along(p, d)`` must have ``n``-connective nerve."""
    return _cofinal(p, n, "right", tietze_budget, shortcuts)


def left_n_cofinal(
    p: Functor, n, tietze_budget: int = DEFAULT_TIETZE_BUDGET, shortcuts: bool = True
) -> CofinalityReport:
    """Every ``slice_along(p, d)`` must have ``n``-connective nerve."""
    return _cofinal(p, n, "left", tietze_budget, shortcuts)


# -- probes ----------------------------------------------------------------------------------


@dataclass
class ProbeResult:
    passed: bool
    kind: str  # "pass", "representable", "components", "random", "empty-product"
    witness: tuple[SetDiagram, ...] = ()
    details: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        from .serialize import set_diagram_to_payload

        return {
            "passed": self.passed,
            "kind": self.kind,
            "witness": [set_diagram_to_payload(W) for W in self.witness],
            "details": self.details,
        }


def representable_classes(p: Functor, d: str) -> int:
    """Classes of ``colim_C Hom_D(d, p(-))``; equals the number of components of ``C_{d/}``."""
    return colim_finset(precompose(covariant_representable(p.codomain, d), p)).count


def preservation_probe(p: Functor, trials: int = 20, seed: int = 0, max_size: int = 5) -> ProbeResult:
    """Look for ``F: D -> Set`` whose colimit changes under restriction along ``p``.

    Representables ``Hom_D(d, -)`` are tried first, exhaustively over ``d``:
    their colimit over ``D`` is a point, so a mismatch is exactly a coslice
    that is empty or disconnected.  Then ``trials`` random diagrams follow.
    """
    check_functor(p)
    D = p.codomain
    for d in D.objects:
        R = covariant_representable(D, d)
        if not comparison_is_bijective(R, p):
            return ProbeResult(False, "representable", (R,), {"object": d, "classes": representable_classes(p, d)})
    rng = random.Random(seed)
    for t in range(trials):
        F = random_set_diagram(rng, D, max_size=max_size)
        if not comparison_is_bijective(F, p):
            return ProbeResult(False, "random", (F,), {"trial": t})
    return ProbeResult(True, "pass", (), {"trials": trials})


def components_diagram(p: Functor) -> SetDiagram:
    """``d -> pi0(C_{/d})``, the left Kan extension of the point along ``p``.

    Restricting limits along ``p`` is bijective for every diagram iff this
    diagram is isomorphic to the point, and when it is not, the diagram itself
    witnesses the failure.
    """
    D = p.codomain
    label: dict[str, dict[str, int]] = {}
    values = {}
    for d in D.objects:
        K = slice_along(p, d)
        uf = UnionFind(K.objects)
        for s, t in K.morphisms.values():
            uf.union(s, t)
        label[d] = {o: k for o, k in uf.index().items()}
        values[d] = tuple(range(len(uf)))
    actions = {}
    for m, (s, t) in D.morphisms.items():
        act = {}
        for c in p.domain.objects:
            for g in D.hom(p.ob(c), s):
                act[label[s][mid(c, "*", g)]] = label[t][mid(c, "*", D.compose(m, g))]
        actions[m] = act
    return SetDiagram(D, values, actions)


def limit_probe(p: Functor, trials: int = 20, seed: int = 0, max_size: int = 5) -> ProbeResult:
    """Look for ``F: D -> Set`` whose limit changes under restriction along ``p``."""
    check_functor(p)
    D = p.codomain
    P = components_diagram(p)
    if not limit_comparison_is_bijective(P, p):
        sizes = {d: len(v) for d, v in P.values.items()}
        return ProbeResult(False, "components", (P,), {"component_counts": sizes})
    rng = random.Random(seed)
    for t in range(trials):
        F = random_set_diagram(rng, D, max_size=max_size)
        if not limit_comparison_is_bijective(F, p):
            return ProbeResult(False, "random", (F,), {"trial": t})
    return ProbeResult(True, "pass", (), {"trials": trials})


# -- siftedness --------------------------------------------------------------------------------


@dataclass
class SiftednessReport:
    level: int | str
    nonempty: bool
    overall: Verdict
    per_pair: dict[tuple[str, ...], ConnectivityReport]
    witness: dict | None = None
    cosifted: bool = False

    def to_dict(self) -> dict:
        from .serialize import category_to_payload

        out = {
            "level": self.level,
            "cosifted": self.cosifted,
            "nonempty": self.nonempty,
            "overall": self.overall.value,
            "per_pair": [
                {"objects": list(k), "report": r.to_dict()} for k, r in self.per_pair.items()
            ],
            "witness": None,
        }
        if self.witness is not None:
            K = self.witness["comma"]
            out["witness"] = {
                "objects": list(self.witness["objects"]),
                "comma": None if K is None else category_to_payload(K),
            }
        return out


def pair_comma(C: FinCategory, a: str, b: str) -> FinCategory:
    """``C_{a/} x_C C_{b/}``."""
    return pullback(coslice_projection(C, a), coslice_projection(C, b))[0]


def _sifted_from(
    commas: dict[tuple, FinCategory], n, nonempty: bool, tietze_budget: int, shortcuts: bool
) -> SiftednessReport:
    if not nonempty:
        return SiftednessReport(n, False, Verdict.NO, {}, {"objects": (), "comma": None})
    per: dict[tuple, ConnectivityReport] = {}
    for key, K in commas.items():
        per[key] = comma_connectivity(K, n, tietze_budget, shortcuts=shortcuts)
    overall = _aggregate(per.values())
    witness = None
    if overall is Verdict.NO:
        key = next(k for k, r in per.items() if r.verdict is Verdict.NO)
        witness = {"objects": key, "comma": commas[key]}
    return SiftednessReport(n, True, overall, per, witness)


def n_sifted(
    C: FinCategory, n, tietze_budget: int = DEFAULT_TIETZE_BUDGET, shortcuts: bool = True
) -> SiftednessReport:
    """Nonempty, and every ``C_{a/} x_C C_{b/}`` has ``n``-connective nerve."""
    commas = {(a, b): pair_comma(C, a, b) for a in C.objects for b in C.objects}
    return _sifted_from(commas, n, bool(C.objects), tietze_budget, shortcuts)


def n_cosifted(
    C: FinCategory, n, tietze_budget: int = DEFAULT_TIETZE_BUDGET, shortcuts: bool = True
) -> SiftednessReport:
    report = n_sifted(opposite(C), n, tietze_budget, shortcuts)
    report.cosifted = True
    return report


def multi_sifted(
    C: FinCategory, n, m: int, tietze_budget: int = DEFAULT_TIETZE_BUDGET, shortcuts: bool = True
) -> SiftednessReport:
    """Connectivity of ``multislice(C, t)`` for every ``m``-tuple ``t`` of objects.

    For ``m == 0`` the single check is on ``C`` itself.
    """
    if m < 0:
        raise ValueError("m must be non-negative")
    if m == 0:
        rep = comma_connectivity(C, n, tietze_budget, shortcuts=shortcuts)
        per = {(): rep}
        witness = {"objects": (), "comma": C} if rep.verdict is Verdict.NO else None
        return SiftednessReport(n, bool(C.objects), rep.verdict, per, witness)
    commas = {t: multislice(C, t) for t in iproduct(C.objects, repeat=m)}
    return _sifted_from(commas, n, bool(C.objects), tietze_budget, shortcuts)


# -- products ------------------------------------------------------------------------------


def product_comparison(X: SetDiagram, Y: SetDiagram) -> tuple[bool, dict]:
    """Is ``colim(X x Y) -> colim X x colim Y`` a bijection?"""
    qx, qy = colim_finset(X), colim_finset(Y)
    P = pointwise_product(X, Y)
    qp = colim_finset(P)
    phi: dict[int, tuple[int, int]] = {}
    for c, leg in qp.legs.items():
        for (x, y), k in leg.items():
            phi[k] = (qx.legs[c][x], qy.legs[c][y])
    bijective = len(set(phi.values())) == qp.count == qx.count * qy.count
    return bijective, {"product_classes": qp.count, "left_classes": qx.count, "right_classes": qy.count}


def _merge_quotients(X: SetDiagram) -> list[SetDiagram]:
    """Diagrams obtained from ``X`` by identifying two elements of one value set."""
    C = X.shape
    out = []
    for c in C.objects:
        vals = X.values[c]
        for i in range(len(vals)):
            for j in range(i + 1, len(vals)):
                uf = UnionFind((o, x) for o in C.objects for x in X.values[o])
                uf.union((c, vals[i]), (c, vals[j]))
                changed = True
                while changed:
                    changed = False
                    for m, (s, t) in C.morphisms.items():
                        seen: dict = {}
                        for x in X.values[s]:
                            r = uf.find((s, x))
                            y = (t, X.actions[m][x])
                            if r in seen:
                                changed |= uf.union(seen[r], y)
                            else:
                                seen[r] = y
                out.append(_quotient(X, uf))
    return out


def _quotient(X: SetDiagram, uf: UnionFind) -> SetDiagram:
    C = X.shape
    label = {}
    values = {}
    for c in C.objects:
        roots: dict = {}
        for x in X.values[c]:
            roots.setdefault(uf.find((c, x)), len(roots))
        label[c] = {x: roots[uf.find((c, x))] for x in X.values[c]}
        values[c] = tuple(range(len(roots)))
    actions = {
        m: {label[s][x]: label[t][X.actions[m][x]] for x in X.values[s]}
        for m, (s, t) in C.morphisms.items()
    }
    return SetDiagram(C, values, actions)


def _max_size(*Ws: SetDiagram) -> int:
    return max((len(v) for W in Ws for v in W.values.values()), default=0)


def shrink_product_witness(X: SetDiagram, Y: SetDiagram) -> tuple[SetDiagram, SetDiagram]:
    """Greedily quotient ``X`` and ``Y`` while the product comparison keeps failing."""
    improved = True
    while improved:
        improved = False
        for side in (0, 1):
            current = (X, Y)[side]
            for Q in _merge_quotients(current):
                pair = (Q, Y) if side == 0 else (X, Q)
                if not product_comparison(*pair)[0]:
                    X, Y = pair
                    improved = True
                    break
            if improved:
                break
    return X, Y


def product_preservation_probe(C: FinCategory, trials: int = 50, seed: int = 0, max_size: int = 3) -> ProbeResult:
    """Look for a pair of diagrams on ``C`` whose colimits do not commute with products.

    The empty product is tested first (the colimit of the point is one class
    iff ``C`` is nonempty and connected), then every pair of representables,
    shrunk greedily, then random pairs with sets of size at most ``max_size``.
    """
    count = colim_finset(constant_diagram(C)).count
    if count != 1:
        return ProbeResult(False, "empty-product", (constant_diagram(C),), {"classes": count})
    for a in C.objects:
        for b in C.objects:
            X, Y = covariant_representable(C, a), covariant_representable(C, b)
            ok, info = product_comparison(X, Y)
            if not ok:
                X, Y = shrink_product_witness(X, Y)
                ok, info = product_comparison(X, Y)
                info.update({"objects": [a, b], "max_set_size": _max_size(X, Y)})
                return ProbeResult(False, "representable", (X, Y), info)
    rng = random.Random(seed)
    for t in range(trials):
        X = random_set_diagram(rng, C, max_size=max_size)
        Y = random_set_diagram(rng, C, max_size=max_size)
        ok, info = product_comparison(X, Y)
        if not ok:
            info.update({"trial": t, "max_set_size": _max_size(X, Y)})
            return ProbeResult(False, "random", (X, Y), info)
    return ProbeResult(True, "pass", (), {"trials": trials})


def replay_probe_witness(result: ProbeResult, p: Functor | None = None, mode: str = "colimit") -> bool:
    """Independently confirm that a failing probe's witness really fails."""
    if result.passed:
        return False
    if any(validate_diagram(W) for W in result.witness):
        return False
    if mode == "colimit":
        return not comparison_is_bijective(result.witness[0], p)
    if mode == "limit":
        return not limit_comparison_is_bijective(result.witness[0], p)
    if result.kind == "empty-product":
        return colim_finset(result.witness[0]).count != 1
    return not product_comparison(*result.witness)[0]


def right_via_opposite(
    p: Functor, n, tietze_budget: int = DEFAULT_TIETZE_BUDGET, shortcuts: bool = True
) -> CofinalityReport:
    """Right cofinality of ``p`` computed as left cofinality of ``p^op``."""
    return left_n_cofinal(opposite_functor(p), n, tietze_budget, shortcuts)


__all__ = [
    "INF",
    "CofinalityReport",
    "ProbeResult",
    "SiftednessReport",
    "comma_connectivity",
    "components_diagram",
    "initial_or_terminal",
    "left_n_cofinal",
    "limit_probe",
    "multi_sifted",
    "n_cosifted",
    "n_sifted",
    "pair_comma",
    "preservation_probe",
    "product_comparison",
    "product_preservation_probe",
    "replay_probe_witness",
    "representable_classes",
    "right_n_cofinal",
    "right_via_opposite",
    "shrink_product_witness",
]
