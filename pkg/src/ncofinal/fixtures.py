"""Named built-in categories, functors and simplicial sets."""

from __future__ import annotations

import re
from collections import deque
from typing import Callable

from .category import FinCategory, Functor, opposite, opposite_functor, parallel_pair
from .delta import delta_inclusion, delta_leq, delta_s_leq
from .sset import boundary, circle, horn, projective_plane, standard

MAX_DELTA = 4


class UnknownFixture(KeyError):
    pass


def named_concrete_category(
    sizes: dict[str, int], generators: dict[str, tuple[str, str, tuple[int, ...]]]
) -> FinCategory:
    """Close named functions under composition; a composite is named by its shortest word ``g.f``."""
    key_of: dict[tuple, str] = {}
    identities = {}
    for o, n in sizes.items():
        key = (o, o, tuple(range(n)))
        key_of[key] = f"id_{o}"
        identities[o] = f"id_{o}"
    queue = deque()
    for name, key in generators.items():
        if key in key_of:
            raise ValueError(f"generator {name} duplicates {key_of[key]}")
        key_of[key] = name
        queue.append(key)
    gens = list(generators.items())
    while queue:
        f = queue.popleft()
        for gname, g in gens:
            if g[0] == f[1]:
                h = (f[0], g[1], tuple(g[2][x] for x in f[2]))
                if h not in key_of:
                    key_of[h] = f"{gname}.{key_of[f]}"
                    queue.append(h)
    morphisms = {name: (k[0], k[1]) for k, name in key_of.items()}
    composition = {}
    for g, gn in key_of.items():
        for f, fn in key_of.items():
            if f[1] == g[0]:
                composition[(gn, fn)] = key_of[(f[0], g[1], tuple(g[2][x] for x in f[2]))]
    return FinCategory(tuple(sizes), morphisms, identities, composition)


def no_coequalizer() -> FinCategory:
    """Reflexive coequalizer ``a => b -> c`` beside a pair ``u, v: a -> d`` with ``q.u != q.v``.

    Realized by explicit functions: ``s, t`` share the section ``r`` and ``w``
    is their coequalizer, while nothing out of ``d`` identifies ``u`` and ``v``.
    The maps are chosen so that ``u.r`` and ``v.r`` do not coequalize ``s, t``
    (otherwise ``w`` would lose its universal property) and so that every
    reflexive pair in the category has a coequalizer.
    """
    sizes = {"a": 3, "b": 2, "c": 1, "d": 2, "e": 2}
    gens = {
        "s": ("a", "b", (0, 1, 0)),
        "t": ("a", "b", (0, 1, 1)),
        "r": ("b", "a", (0, 1)),
        "w": ("b", "c", (0, 0)),
        "u": ("a", "d", (0, 1, 0)),
        "v": ("a", "d", (0, 1, 1)),
        "q": ("d", "e", (0, 1)),
    }
    return named_concrete_category(sizes, gens)


def pair_into(C: FinCategory, f: str, g: str) -> Functor:
    """The parallel pair ``f, g`` as a diagram in ``C``."""
    J = parallel_pair()
    a, b = C.morphisms[f]
    if C.morphisms[g] != (a, b):
        raise ValueError("not a parallel pair")
    ob = {"0": a, "1": b}
    mor = {J.identity("0"): C.identity(a), J.identity("1"): C.identity(b), "s": f, "t": g}
    return Functor(J, C, ob, mor)


_PATTERNS: list[tuple[str, Callable[..., object]]] = []


def _register(pattern: str):
    def deco(fn):
        _PATTERNS.append((pattern, fn))
        return fn

    return deco


def _n(text: str) -> int:
    k = int(text)
    if k > MAX_DELTA:
        raise UnknownFixture(f"dimension {k} exceeds {MAX_DELTA}")
    return k


def _delta(kind: str, n: int) -> FinCategory:
    return delta_s_leq(n) if kind == "delta_s" else delta_leq(n)


@_register(r"(delta|delta_s)_leq_(\d+)(_op)?")
def _delta_fixture(kind, n, op):
    C = _delta(kind, _n(n))
    return opposite(C) if op else C


@_register(r"incl_(delta|delta_s)(\d+)_(delta|delta_s)(\d+)(_op)?")
def _inclusion_fixture(k1, n1, k2, n2, op):
    src, tgt = _delta(k1, _n(n1)), _delta(k2, _n(n2))
    p = delta_inclusion(src, tgt)
    return opposite_functor(p) if op else p


@_register(r"boundary_(\d+)")
def _boundary(n):
    return boundary(_n(n))


@_register(r"standard_(\d+)")
def _standard(n):
    return standard(_n(n))


@_register(r"horn_(\d+)_(\d+)")
def _horn(n, k):
    n, k = _n(n), int(k)
    if n < 1 or k > n:
        raise UnknownFixture("horn needs 0 <= k <= n and n >= 1")
    return horn(n, k)


@_register(r"circle")
def _circle():
    return circle()


@_register(r"projective_plane|rp2")
def _rp2():
    return projective_plane()


@_register(r"no-coequalizer")
def _noco():
    return no_coequalizer()


@_register(r"no-coequalizer-(st|uv)")
def _noco_pair(which):
    C = no_coequalizer()
    return pair_into(C, which[0], which[1])


def fixture(name: str):
    for pattern, fn in _PATTERNS:
        m = re.fullmatch(pattern, name)
        if m:
            return fn(*m.groups())
    raise UnknownFixture(name)


def fixture_names() -> list[str]:
    """A representative list of names accepted by :func:`fixture`."""
    names = []
    for n in range(4):
        for kind in ("delta", "delta_s"):
            names += [f"{kind}_leq_{n}", f"{kind}_leq_{n}_op"]
    for n in range(4):
        names += [f"incl_delta_s{n}_delta{n}", f"incl_delta_s{n}_delta{n}_op"]
    for n in range(3):
        names += [f"incl_delta{n}_delta{n + 1}", f"incl_delta{n}_delta{n + 1}_op"]
        names += [f"incl_delta_s{n}_delta_s{n + 1}", f"incl_delta_s{n}_delta_s{n + 1}_op"]
    names += [f"boundary_{n}" for n in range(1, 5)]
    names += [f"standard_{n}" for n in range(5)]
    names += [f"horn_{n}_{k}" for n in (2, 3) for k in range(n + 1)]
    names += ["circle", "projective_plane", "no-coequalizer", "no-coequalizer-st", "no-coequalizer-uv"]
    return names

