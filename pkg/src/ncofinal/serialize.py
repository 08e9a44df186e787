"""JSON interchange documents for categories, functors, simplicial sets and diagrams.

A document is ``{"kind": ..., "format_version": ..., "payload": ...}``.  The
canonical text form sorts every key and every id, omits composites and
actions that are determined by identities, and is what :func:`dumps` emits;
``loads(dumps(x)) == x`` and ``dumps(loads(text)) == text`` for canonical text.
Diagram elements may be integers, strings or (nested) tuples of those;
tuples are written as JSON arrays.
"""

from __future__ import annotations

import json
from typing import Any

from .category import FinCategory, Functor
from .diagrams import SetDiagram, SSetDiagram, sorted_elements
from .sset import Simplex, SSet

FORMAT_VERSION = "1"
KINDS = ("category", "functor", "sset", "set_diagram", "sset_diagram")


class DocumentError(ValueError):
    """A malformed document; ``location`` is a dotted path into the document."""

    def __init__(self, location: str, message: str):
        super().__init__(f"{location}: {message}")
        self.location = location
        self.message = message


# -- elements ------------------------------------------------------------------------


def encode_element(x: Any, where: str = "element"):
    if isinstance(x, bool) or not isinstance(x, (int, str, tuple)):
        raise DocumentError(where, f"unsupported element {x!r}")
    if isinstance(x, tuple):
        return [encode_element(y, where) for y in x]
    return x


def decode_element(x: Any, where: str = "element"):
    if isinstance(x, list):
        return tuple(decode_element(y, where) for y in x)
    if isinstance(x, bool) or not isinstance(x, (int, str)):
        raise DocumentError(where, f"unsupported element {x!r}")
    return x


# -- payloads ------------------------------------------------------------------------


def category_to_payload(C: FinCategory) -> dict:
    idset = set(C.identities.values())
    return {
        "objects": list(C.objects),
        "morphisms": {m: list(C.morphisms[m]) for m in sorted(C.morphisms)},
        "identities": {o: C.identities[o] for o in C.objects},
        "composition": sorted(
            [g, f, h] for (g, f), h in C.composition.items() if g not in idset and f not in idset
        ),
    }


def functor_to_payload(F: Functor) -> dict:
    return {
        "domain": category_to_payload(F.domain),
        "codomain": category_to_payload(F.codomain),
        "objects": {c: F.object_map[c] for c in sorted(F.object_map)},
        "morphisms": {m: F.morphism_map[m] for m in sorted(F.morphism_map)},
    }


def _simplex_payload(x: Simplex) -> dict:
    return {"gen": x.gen, "op": list(x.op)}


def sset_to_payload(S: SSet) -> dict:
    return {
        "truncation": S.truncation,
        "generators": {
            str(k): {g: [_simplex_payload(f) for f in faces] for g, faces in sorted(S.generators[k].items())}
            for k in range(S.truncation + 1)
        },
    }


def _values_payload(values: dict, where: str) -> dict:
    return {c: [encode_element(x, where) for x in sorted_elements(v)] for c, v in sorted(values.items())}


def _action_payload(act: dict, where: str) -> list:
    keys = sorted_elements(act)
    return [[encode_element(x, where), encode_element(act[x], where)] for x in keys]


def set_diagram_to_payload(D: SetDiagram) -> dict:
    idset = set(D.shape.identities.values())
    return {
        "shape": category_to_payload(D.shape),
        "values": _values_payload(D.values, "values"),
        "actions": {
            m: _action_payload(D.actions[m], f"actions.{m}") for m in sorted(D.actions) if m not in idset
        },
    }


def sset_diagram_to_payload(F: SSetDiagram) -> dict:
    return {
        "base": sset_to_payload(F.base),
        "values": _values_payload(F.values, "values"),
        "actions": {e: _action_payload(F.actions[e], f"actions.{e}") for e in sorted(F.actions)},
    }


# -- parsing ---------------------------------------------------------------------------


def _require(obj: Any, key: str, kind: type, where: str):
    if not isinstance(obj, dict):
        raise DocumentError(where, "expected an object")
    if key not in obj:
        raise DocumentError(f"{where}.{key}", "missing field")
    value = obj[key]
    if not isinstance(value, kind):
        raise DocumentError(f"{where}.{key}", f"expected {kind.__name__}")
    return value


def _str(x: Any, where: str) -> str:
    if not isinstance(x, str):
        raise DocumentError(where, "expected a string")
    return x


def category_from_payload(p: Any, where: str = "payload") -> FinCategory:
    objects = [_str(o, f"{where}.objects[{i}]") for i, o in enumerate(_require(p, "objects", list, where))]
    morphisms = {}
    for m, st in _require(p, "morphisms", dict, where).items():
        loc = f"{where}.morphisms.{m}"
        if not (isinstance(st, list) and len(st) == 2):
            raise DocumentError(loc, "expected [source, target]")
        s, t = _str(st[0], loc), _str(st[1], loc)
        for o in (s, t):
            if o not in objects:
                raise DocumentError(loc, f"unknown object {o!r}")
        morphisms[m] = (s, t)
    identities = {}
    for o, i in _require(p, "identities", dict, where).items():
        loc = f"{where}.identities.{o}"
        if o not in objects or _str(i, loc) not in morphisms:
            raise DocumentError(loc, "unknown object or morphism")
        identities[o] = i
    missing = [o for o in objects if o not in identities]
    if missing:
        raise DocumentError(f"{where}.identities", f"no identity for {missing[0]!r}")
    composition = {}
    for k, row in enumerate(_require(p, "composition", list, where)):
        loc = f"{where}.composition[{k}]"
        if not (isinstance(row, list) and len(row) == 3 and all(isinstance(x, str) for x in row)):
            raise DocumentError(loc, "expected [g, f, g.f]")
        for x in row:
            if x not in morphisms:
                raise DocumentError(loc, f"unknown morphism {x!r}")
        composition[(row[0], row[1])] = row[2]
    return FinCategory.build(objects, morphisms, identities, composition)


def functor_from_payload(p: Any, where: str = "payload") -> Functor:
    C = category_from_payload(_require(p, "domain", dict, where), f"{where}.domain")
    D = category_from_payload(_require(p, "codomain", dict, where), f"{where}.codomain")
    ob = dict(_require(p, "objects", dict, where))
    mor = dict(_require(p, "morphisms", dict, where))
    for c in C.objects:
        if c not in ob or ob[c] not in D.objects:
            raise DocumentError(f"{where}.objects.{c}", "missing or unknown image")
    for c in C.objects:
        mor.setdefault(C.identity(c), D.identity(ob[c]))
    for m in C.morphisms:
        if m not in mor or mor[m] not in D.morphisms:
            raise DocumentError(f"{where}.morphisms.{m}", "missing or unknown image")
    return Functor(C, D, ob, mor)


def _simplex_from(x: Any, where: str) -> Simplex:
    gen = _str(_require(x, "gen", str, where), f"{where}.gen")
    op = _require(x, "op", list, where)
    if not op or not all(isinstance(v, int) and not isinstance(v, bool) for v in op):
        raise DocumentError(f"{where}.op", "expected a nonempty list of integers")
    return Simplex(tuple(op), gen)


def sset_from_payload(p: Any, where: str = "payload") -> SSet:
    trunc = _require(p, "truncation", int, where)
    gens_raw = _require(p, "generators", dict, where)
    generators: dict[int, dict[str, tuple[Simplex, ...]]] = {}
    for k_text, level in gens_raw.items():
        loc = f"{where}.generators.{k_text}"
        try:
            k = int(k_text)
        except ValueError:
            raise DocumentError(loc, "dimension key must be an integer") from None
        if not isinstance(level, dict):
            raise DocumentError(loc, "expected an object")
        generators[k] = {}
        for g, faces in level.items():
            if not isinstance(faces, list):
                raise DocumentError(f"{loc}.{g}", "expected a list of faces")
            generators[k][g] = tuple(_simplex_from(f, f"{loc}.{g}[{i}]") for i, f in enumerate(faces))
    try:
        return SSet(trunc, generators)
    except ValueError as exc:
        raise DocumentError(where, str(exc)) from None


def _values_from(p: Any, keys, where: str) -> dict:
    raw = _require(p, "values", dict, where)
    out = {}
    for c in keys:
        if c not in raw or not isinstance(raw[c], list):
            raise DocumentError(f"{where}.values.{c}", "missing value set")
        out[c] = sorted_elements(decode_element(x, f"{where}.values.{c}") for x in raw[c])
    return out


def _action_from(rows: Any, where: str) -> dict:
    if not isinstance(rows, list):
        raise DocumentError(where, "expected a list of [x, y] pairs")
    act = {}
    for i, row in enumerate(rows):
        if not (isinstance(row, list) and len(row) == 2):
            raise DocumentError(f"{where}[{i}]", "expected [x, y]")
        act[decode_element(row[0], where)] = decode_element(row[1], where)
    return act


def set_diagram_from_payload(p: Any, where: str = "payload") -> SetDiagram:
    C = category_from_payload(_require(p, "shape", dict, where), f"{where}.shape")
    values = _values_from(p, C.objects, where)
    raw = _require(p, "actions", dict, where)
    actions = {}
    for m in C.morphisms:
        if m in raw:
            actions[m] = _action_from(raw[m], f"{where}.actions.{m}")
        elif m not in C.identities.values():
            raise DocumentError(f"{where}.actions.{m}", "missing action")
    return SetDiagram.build(C, values, actions)


def sset_diagram_from_payload(p: Any, where: str = "payload") -> SSetDiagram:
    S = sset_from_payload(_require(p, "base", dict, where), f"{where}.base")
    values = _values_from(p, S.vertices(), where)
    raw = _require(p, "actions", dict, where)
    actions = {}
    for e in S.nondegenerate(1):
        if e not in raw:
            raise DocumentError(f"{where}.actions.{e}", "missing action")
        actions[e] = _action_from(raw[e], f"{where}.actions.{e}")
    return SSetDiagram(S, values, actions)


_WRITERS = {
    FinCategory: ("category", category_to_payload),
    Functor: ("functor", functor_to_payload),
    SSet: ("sset", sset_to_payload),
    SetDiagram: ("set_diagram", set_diagram_to_payload),
    SSetDiagram: ("sset_diagram", sset_diagram_to_payload),
}

_READERS = {
    "category": category_from_payload,
    "functor": functor_from_payload,
    "sset": sset_from_payload,
    "set_diagram": set_diagram_from_payload,
    "sset_diagram": sset_diagram_from_payload,
}


def to_document(x: Any) -> dict:
    for cls, (kind, writer) in _WRITERS.items():
        if isinstance(x, cls):
            return {"kind": kind, "format_version": FORMAT_VERSION, "payload": writer(x)}
    raise TypeError(f"cannot serialize {type(x).__name__}")


def report_document(command: str, payload: dict) -> dict:
    """Reports are output-only documents of kind ``report``."""
    return {"kind": "report", "format_version": FORMAT_VERSION, "command": command, "payload": payload}


def dumps_json(doc: dict) -> str:
    return json.dumps(doc, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def dumps(x: Any) -> str:
    return dumps_json(to_document(x))


def from_document(doc: Any):
    if not isinstance(doc, dict):
        raise DocumentError("document", "expected an object")
    kind = _require(doc, "kind", str, "document")
    version = _require(doc, "format_version", str, "document")
    if version != FORMAT_VERSION:
        raise DocumentError("document.format_version", f"unsupported version {version!r}")
    if kind not in _READERS:
        raise DocumentError("document.kind", f"unknown kind {kind!r}")
    if "payload" not in doc:
        raise DocumentError("document.payload", "missing field")
    return kind, _READERS[kind](doc["payload"])


def loads(text: str):
    """Parse a document, returning the value only."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(f"line {exc.lineno} column {exc.colno}", exc.msg) from None
    return from_document(doc)[1]


def loads_with_kind(text: str) -> tuple[str, Any]:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(f"line {exc.lineno} column {exc.colno}", exc.msg) from None
    return from_document(doc)
