"""Command-line interface.

Inputs are document files, ``-`` for standard input, or ``fixtures:<name>``.
Verdict commands exit 0 for yes/pass, 1 for no/fail and 2 for unknown;
usage errors and malformed documents exit 3, semantically invalid inputs 4.
"""

from __future__ import annotations

import argparse
import sys
from typing import Any, Sequence

from . import __version__
from .category import FinCategory, Functor, opposite, validate, validate_functor
from .cofinality import (
    INF,
    left_n_cofinal,
    limit_probe,
    multi_sifted,
    n_cosifted,
    n_sifted,
    preservation_probe,
    product_preservation_probe,
    right_n_cofinal,
)
from .colimits import colim_finset, colim_in_category, lim_finset, reshape_build, reshape_colim_check
from .constructions import comma, coslice, coslice_along, nerve, slice, slice_along
from .diagrams import SetDiagram, SSetDiagram, validate_diagram, validate_sset_diagram
from .fixtures import UnknownFixture, fixture, fixture_names
from .serialize import (
    DocumentError,
    dumps_json,
    encode_element,
    loads_with_kind,
    report_document,
    to_document,
)
from .sset import SSet, simplicial_identity_failures, validate_sset
from .topology import (
    DEFAULT_TIETZE_BUDGET,
    Verdict,
    abelianization,
    connectivity,
    homology,
    pi1_presentation,
    weak_contractible,
)

EXIT_YES, EXIT_NO, EXIT_UNKNOWN, EXIT_USAGE, EXIT_INVALID = 0, 1, 2, 3, 4
VERDICT_EXIT = {Verdict.YES: EXIT_YES, Verdict.NO: EXIT_NO, Verdict.UNKNOWN: EXIT_UNKNOWN}

KIND_OF = {FinCategory: "category", Functor: "functor", SSet: "sset", SetDiagram: "set_diagram", SSetDiagram: "sset_diagram"}


class UsageError(Exception):
    pass


class InvalidInput(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        raise UsageError(message)


# -- input ---------------------------------------------------------------------------------


def _kind(x: Any) -> str:
    for cls, kind in KIND_OF.items():
        if isinstance(x, cls):
            return kind
    raise TypeError(type(x).__name__)


def load(ref: str, stdin=None) -> tuple[str, Any]:
    """Resolve a file path, ``-`` or ``fixtures:<name>`` to ``(kind, value)``."""
    if ref.startswith("fixtures:"):
        try:
            x = fixture(ref.split(":", 1)[1])
        except UnknownFixture as exc:
            raise UsageError(f"unknown fixture {exc.args[0]!r}") from None
        return _kind(x), x
    if ref == "-":
        text = (stdin or sys.stdin).read()
    else:
        try:
            with open(ref, encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise UsageError(f"cannot read {ref}: {exc.strerror}") from None
    try:
        return loads_with_kind(text)
    except DocumentError as exc:
        raise DocumentError(f"{ref}: {exc.location}", exc.message) from None


def violations(kind: str, x: Any) -> list[dict]:
    def rows(vs, prefix=""):
        return [{"kind": prefix + v.kind, "items": [str(i) for i in v.items]} for v in vs]

    if kind == "category":
        return rows(validate(x))
    if kind == "functor":
        out = rows(validate(x.domain), "domain: ") + rows(validate(x.codomain), "codomain: ")
        return out or rows(validate_functor(x))
    if kind == "sset":
        out = rows(validate_sset(x))
        if not out:
            out = [{"kind": "simplicial identity", "items": [str(i) for i in f]} for f in simplicial_identity_failures(x)]
        return out
    if kind == "set_diagram":
        return rows(validate(x.shape), "shape: ") or rows(validate_diagram(x))
    return violations("sset", x.base) or rows(validate_sset_diagram(x))


def require(ref: str, kinds: Sequence[str], stdin=None):
    kind, x = load(ref, stdin)
    if kind not in kinds:
        raise UsageError(f"{ref}: expected {' or '.join(kinds)}, got {kind}")
    bad = violations(kind, x)
    if bad:
        first = bad[0]
        raise InvalidInput(f"{ref}: invalid {kind}: {first['kind']} {first['items']}")
    return kind, x


def parse_level(text: str):
    if text in (INF, "infinity", "∞"):
        return INF
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"level must be an integer or 'inf', not {text!r}") from None
    if n < -2:
        raise argparse.ArgumentTypeError("level must be at least -2")
    return n


# -- commands ---------------------------------------------------------------------------------


def cmd_validate(args, out):
    kind, x = load(args.input, args.stdin)
    bad = violations(kind, x)
    out.append(report_document("validate", {"kind": kind, "valid": not bad, "violations": bad}))
    return EXIT_NO if bad else EXIT_YES


def cmd_nerve(args, out):
    _, C = require(args.input, ["category"], args.stdin)
    if args.dim < 0:
        raise UsageError("--dim must be non-negative")
    out.append(to_document(nerve(C, args.dim)))
    return EXIT_YES


def cmd_comma(args, out):
    _, F = require(args.left, ["functor"], args.stdin)
    _, G = require(args.right, ["functor"], args.stdin)
    if F.codomain != G.codomain:
        raise InvalidInput("functors must share a codomain")
    out.append(to_document(comma(F, G)[0]))
    return EXIT_YES


def cmd_slice(args, out):
    kind, x = require(args.input, ["category", "functor"], args.stdin)
    target = x if kind == "category" else x.codomain
    if args.at not in target.objects:
        raise InvalidInput(f"unknown object {args.at!r}")
    if kind == "category":
        K = slice(x, args.at) if args.command == "slice" else coslice(x, args.at)
    else:
        K = slice_along(x, args.at) if args.command == "slice" else coslice_along(x, args.at)
    out.append(to_document(K))
    return EXIT_YES


def cmd_colim(args, out):
    _, D = require(args.input, ["set_diagram"], args.stdin)
    Q = colim_finset(D)
    members = [[[c, encode_element(x)] for c, x in block] for block in Q.members()]
    out.append(report_document("colim", {"classes": Q.count, "members": members}))
    return EXIT_YES


def cmd_lim(args, out):
    _, D = require(args.input, ["set_diagram"], args.stdin)
    L = lim_finset(D)
    fams = [[encode_element(x) for x in fam] for fam in L.families]
    out.append(report_document("lim", {"count": len(L), "objects": list(L.objects), "families": fams}))
    return EXIT_YES


def cmd_colim_in_cat(args, out):
    _, C = require(args.category, ["category"], args.stdin)
    _, D = require(args.diagram, ["functor"], args.stdin)
    if D.codomain != C:
        raise InvalidInput("diagram codomain differs from the category")
    found = colim_in_category(C, D)
    payload = {"exists": found is not None, "apex": None, "legs": None}
    if found is not None:
        payload["apex"], payload["legs"] = found[0], dict(sorted(found[1].items()))
    out.append(report_document("colim-in-cat", payload))
    return EXIT_YES if found is not None else EXIT_NO


def cmd_reshape(args, out):
    _, F = require(args.input, ["sset_diagram"], args.stdin)
    if args.check:
        rep = reshape_colim_check(F)
        out.append(report_document("reshape", rep.to_dict()))
        return EXIT_YES if rep.ok else EXIT_NO
    if args.level < 0:
        raise UsageError("--level must be non-negative")
    out.append(to_document(reshape_build(F, args.level)))
    return EXIT_YES


def cmd_homology(args, out):
    _, S = require(args.input, ["sset"], args.stdin)
    groups = homology(S, reduced=args.reduced)
    payload = {
        "reduced": args.reduced,
        "groups": [{"degree": k, "group": str(h), "betti": h.betti, "torsion": list(h.torsion)} for k, h in enumerate(groups)],
        "truncation": S.truncation,
        "note": "degrees below the truncation are exact; the top degree counts cycles not yet bounded",
    }
    out.append(report_document("homology", payload))
    return EXIT_YES


def cmd_pi1(args, out):
    _, S = require(args.input, ["sset"], args.stdin)
    if not S.vertices():
        raise InvalidInput("empty simplicial set has no basepoint")
    P = pi1_presentation(S, args.basepoint)
    A = abelianization(P)
    payload = {
        "presentation": str(P),
        "generators": list(P.generators),
        "relators": [[[g, e] for g, e in r] for r in P.relators],
        "abelianization": str(A),
    }
    out.append(report_document("pi1", payload))
    return EXIT_YES


def cmd_connectivity(args, out):
    _, S = require(args.input, ["sset"], args.stdin)
    if args.n == INF:
        raise UsageError("use 'contractible' for the infinite level")
    rep = connectivity(S, args.n, args.tietze_budget)
    out.append(report_document("connectivity", rep.to_dict()))
    return VERDICT_EXIT[rep.verdict]


def cmd_contractible(args, out):
    _, S = require(args.input, ["sset"], args.stdin)
    rep = weak_contractible(S, args.tietze_budget)
    out.append(report_document("contractible", rep.to_dict()))
    return VERDICT_EXIT[rep.verdict]


def cmd_cofinal(args, out):
    _, p = require(args.input, ["functor"], args.stdin)
    check = right_n_cofinal if args.side == "right" else left_n_cofinal
    rep = check(p, args.n, args.tietze_budget)
    out.append(report_document("cofinal", rep.to_dict()))
    return VERDICT_EXIT[rep.overall]


def cmd_sifted(args, out):
    _, C = require(args.input, ["category"], args.stdin)
    if args.tuples is not None:
        if args.tuples < 0:
            raise UsageError("--tuples must be non-negative")
        rep = multi_sifted(opposite(C) if args.cosifted else C, args.n, args.tuples, args.tietze_budget)
        rep.cosifted = args.cosifted
    elif args.cosifted:
        rep = n_cosifted(C, args.n, args.tietze_budget)
    else:
        rep = n_sifted(C, args.n, args.tietze_budget)
    out.append(report_document("sifted", rep.to_dict()))
    return VERDICT_EXIT[rep.overall]


def cmd_probe(args, out):
    if args.trials < 0:
        raise UsageError("--trials must be non-negative")
    if args.probe == "products":
        _, C = require(args.input, ["category"], args.stdin)
        res = product_preservation_probe(C, args.trials, args.seed)
    else:
        _, p = require(args.input, ["functor"], args.stdin)
        fn = preservation_probe if args.probe == "preservation" else limit_probe
        res = fn(p, args.trials, args.seed)
    payload = res.to_dict()
    payload.update({"probe": args.probe, "seed": args.seed, "trials": args.trials})
    out.append(report_document("probe", payload))
    return EXIT_YES if res.passed else EXIT_NO


def cmd_fixtures(args, out):
    if args.list or args.name is None:
        out.append(report_document("fixtures", {"names": fixture_names()}))
        return EXIT_YES
    try:
        x = fixture(args.name)
    except UnknownFixture as exc:
        raise UsageError(f"unknown fixture {exc.args[0]!r}") from None
    out.append(to_document(x))
    return EXIT_YES


# -- parser -------------------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="ncofinal", description="Cofinality and siftedness checks for finite categories.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser, required=True)

    def add(name, fn, help_text, inputs=("input",)):
        p = sub.add_parser(name, help=help_text)
        for i in inputs:
            p.add_argument(i)
        p.set_defaults(func=fn)
        return p

    def budget(p):
        p.add_argument("--tietze-budget", type=int, default=DEFAULT_TIETZE_BUDGET)

    add("validate", cmd_validate, "check a document")
    add("nerve", cmd_nerve, "nerve of a category").add_argument("--dim", type=int, required=True)
    p = add("comma", cmd_comma, "comma category of two functors", inputs=())
    p.add_argument("--left", required=True)
    p.add_argument("--right", required=True)
    for name in ("slice", "coslice"):
        add(name, cmd_slice, f"{name} of a category or along a functor").add_argument("--at", required=True)
    add("colim", cmd_colim, "colimit of a set-valued diagram")
    add("lim", cmd_lim, "limit of a set-valued diagram")
    add("colim-in-cat", cmd_colim_in_cat, "colimit of a diagram inside a finite category", inputs=("category", "diagram"))
    p = add("reshape", cmd_reshape, "simplicial replacement of a diagram over a simplicial set")
    p.add_argument("--level", type=int, default=2)
    p.add_argument("--check", action="store_true")
    add("homology", cmd_homology, "integral homology").add_argument("--reduced", action="store_true")
    add("pi1", cmd_pi1, "edge-path presentation of the fundamental group").add_argument("--basepoint")
    p = add("connectivity", cmd_connectivity, "n-connectivity of a simplicial set")
    p.add_argument("--n", type=parse_level, required=True)
    budget(p)
    budget(add("contractible", cmd_contractible, "weak contractibility"))
    p = add("cofinal", cmd_cofinal, "left or right n-cofinality of a functor")
    p.add_argument("--side", choices=["left", "right"], required=True)
    p.add_argument("--n", type=parse_level, required=True)
    budget(p)
    p = add("sifted", cmd_sifted, "n-siftedness of a category")
    p.add_argument("--n", type=parse_level, required=True)
    p.add_argument("--cosifted", action="store_true")
    p.add_argument("--tuples", type=int)
    budget(p)
    p = sub.add_parser("probe", help="test a verdict against colimits, limits or products")
    p.add_argument("probe", choices=["preservation", "limits", "products"])
    p.add_argument("input")
    p.add_argument("--trials", type=int, default=20)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_probe)
    p = sub.add_parser("fixtures", help="emit a built-in document")
    p.add_argument("name", nargs="?")
    p.add_argument("--list", action="store_true")
    p.set_defaults(func=cmd_fixtures)
    return parser


def run(argv: Sequence[str] | None = None, stdout=None, stderr=None, stdin=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    out: list[dict] = []
    try:
        args = parser.parse_args(argv)
        args.stdin = stdin
        code = args.func(args, out)
    except UsageError as exc:
        print(f"usage error: {exc}", file=stderr)
        return EXIT_USAGE
    except DocumentError as exc:
        print(f"malformed document at {exc.location}: {exc.message}", file=stderr)
        return EXIT_USAGE
    except InvalidInput as exc:
        print(f"invalid input: {exc}", file=stderr)
        return EXIT_INVALID
    except SystemExit as exc:  # --help and --version
        return int(exc.code or 0)
    for doc in out:
        stdout.write(dumps_json(doc))
    return code


def main() -> None:
    sys.exit(run())


__all__ = ["run", "main", "build_parser", "load"]
