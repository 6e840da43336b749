"""Command-line entry point.

Every subcommand reads JSON inputs from files and writes one JSON document
(or CSV for ``signature --emit-csv``) to standard output or ``--output``.
Rationals are written as ``"p/q"`` strings.

Exit codes: 0 success, 2 invalid input, 3 computation budget exceeded,
64 usage error.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from fractions import Fraction
from itertools import islice

from .family import FamilyPlan, gap_lower_bound, plan_family, verify_plan
from .fox import fox, fox_classical
from .knot import SeifertMatrix, alexander, arf
from .ring import FreeAbelian, FreeGroup, GroupHom, abelianization, identity_hom, projection, trivial_hom
from .rho import _frac_str, levine_tristram, rho_z, signature_profile
from .solvable import BudgetExceeded
from .tuples import expected_count, find_special_tuple, generate_P
from .words import parse_word

EXIT_OK = 0
EXIT_INVALID = 2
EXIT_BUDGET = 3
EXIT_USAGE = 64


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _load_json(path: str):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except FileNotFoundError:
        raise ValueError(f"{path}: file not found") from None
    except json.JSONDecodeError as exc:
        raise ValueError(f"{path}: malformed JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}") from None


def _load_matrix(path: str) -> SeifertMatrix:
    doc = _load_json(path)
    if not isinstance(doc, dict):
        raise ValueError(f"{path}: expected an object with field 'matrix'")
    if not isinstance(doc.get("matrix"), list) or not all(isinstance(r, list) for r in doc["matrix"]):
        raise ValueError(f"{path}: field 'matrix' must be a list of integer rows")
    for i, row in enumerate(doc["matrix"]):
        for j, x in enumerate(row):
            if not isinstance(x, int) or isinstance(x, bool):
                raise ValueError(f"{path}: field 'matrix[{i}][{j}]' is not an integer")
    try:
        return SeifertMatrix.from_json(doc)
    except ValueError as exc:
        raise ValueError(f"{path}: {exc}") from None


def _load_plan(path: str) -> FamilyPlan:
    doc = _load_json(path)
    if not isinstance(doc, dict):
        raise ValueError(f"{path}: expected a plan object")
    try:
        return FamilyPlan.from_json(doc)
    except ValueError as exc:
        raise ValueError(f"{path}: {exc}") from None


def _rational(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from None


def parse_hom(spec: str, genus: int) -> GroupHom:
    """Homomorphism on F of rank 2g from a short text spec.

    ``abelian``, ``trivial``, ``free``, ``solvable:K``, or explicit images:
    ``abelian:1,0;0,1;...`` (exponent vectors) or ``free:x1 x2;x3^-1;...``
    (words of the same rank, empty for the identity).
    """
    rank = 2 * genus
    name, _, arg = spec.partition(":")
    if name == "abelian" and not arg:
        return abelianization(rank)
    if name == "trivial" and not arg:
        return trivial_hom(rank, 1)
    if name == "free" and not arg:
        return identity_hom(FreeGroup(rank))
    if name == "solvable":
        try:
            k = int(arg)
        except ValueError:
            raise ValueError(f"hom spec 'solvable:K' needs an integer K, got {arg!r}") from None
        if k < 1:
            raise ValueError("hom spec 'solvable:K' needs K >= 1")
        return projection(rank, k)
    parts = arg.split(";")
    if len(parts) != rank:
        raise ValueError(f"hom spec lists {len(parts)} images, expected {rank}")
    if name == "abelian":
        try:
            vecs = [tuple(int(x) for x in p.split(",")) for p in parts]
        except ValueError:
            raise ValueError("abelian images must be comma-separated integers") from None
        return GroupHom(FreeGroup(rank), FreeAbelian(len(vecs[0])), tuple(vecs))
    if name == "free":
        return GroupHom(FreeGroup(rank), FreeGroup(rank), tuple(parse_word(p, rank) for p in parts))
    raise ValueError(f"unknown hom spec {spec!r}")


def _infer_rank(text: str) -> int:
    idx = [int(m) for m in re.findall(r"x(\d+)", text)] or [1]
    top = max(idx)
    return max(2, top + (top % 2))


# subcommands ------------------------------------------------------------------


def cmd_alexander(args):
    return {"coefficients": list(alexander(_load_matrix(args.matrix)).coefficients)}


def cmd_arf(args):
    return {"arf": arf(_load_matrix(args.matrix))}


def cmd_signature(args):
    v = _load_matrix(args.matrix)
    if args.angle is not None:
        return {"angle": _frac_str(args.angle), "signature": levine_tristram(v, args.angle)}
    prof = signature_profile(v)
    if args.emit_csv:
        return prof.to_csv()
    return prof.to_json()


def cmd_rho(args):
    if args.tolerance <= 0:
        raise ValueError("--tolerance must be positive")
    return rho_z(_load_matrix(args.matrix), args.tolerance).to_json()


def cmd_fox(args):
    if args.genus is not None:
        rank = 2 * args.genus
    else:
        rank = args.rank if args.rank is not None else _infer_rank(args.word)
    w = parse_word(args.word, rank)
    d = fox_classical(w, args.index) if args.classical else fox(w, args.index)
    return {
        "word": str(w),
        "rank": rank,
        "index": args.index,
        "convention": "classical" if args.classical else "right",
        "derivative": d.to_text(),
    }


def cmd_tuples(args):
    if args.genus < 1 or args.level < 0:
        raise ValueError("need --genus >= 1 and --level >= 0")
    if args.limit is not None and args.limit < 0:
        raise ValueError("--limit must be nonnegative")
    cursor = generate_P(args.genus, args.level)
    it = iter(cursor) if args.limit is None else islice(cursor, args.limit)
    tuples = [t.to_json() for t in it]
    return {
        "genus": args.genus,
        "level": args.level,
        "total": expected_count(args.genus, args.level),
        "emitted": len(tuples),
        "tuples": tuples,
    }


def cmd_special(args):
    if args.genus < 1 or args.level < 0:
        raise ValueError("need --genus >= 1 and --level >= 0")
    r = parse_hom(args.hom, args.genus)
    return find_special_tuple(r, args.level, budget=args.budget).to_json()


def cmd_plan(args):
    base = _load_matrix(args.matrix)
    return plan_family(base, args.level, args.axes, args.cm, args.count).to_json()


def cmd_verify(args):
    return verify_plan(_load_plan(args.plan)).to_json()


def cmd_gap(args):
    plan = _load_plan(args.plan)
    return gap_lower_bound(plan, args.i, args.j, args.eps_i, args.eps_j).to_json()


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="concordance", description="Exact knot concordance computations.")
    common = _Parser(add_help=False)
    common.add_argument("-o", "--output", help="write to this file instead of standard output")
    sub = parser.add_subparsers(dest="command", metavar="COMMAND", parser_class=_Parser)
    sub.required = True

    def add(name, func, help_text):
        p = sub.add_parser(name, parents=[common], help=help_text)
        p.set_defaults(func=func)
        return p

    for name, func, text in (
        ("alexander", cmd_alexander, "normalized Alexander polynomial"),
        ("arf", cmd_arf, "Arf invariant"),
    ):
        add(name, func, text).add_argument("--matrix", required=True)

    p = add("signature", cmd_signature, "Levine-Tristram signature profile")
    p.add_argument("--matrix", required=True)
    p.add_argument("--emit-csv", action="store_true", help="arc table as CSV")
    p.add_argument("--angle", type=_rational, help="single value at e^{i pi angle}")

    p = add("rho", cmd_rho, "integral of the signature function")
    p.add_argument("--matrix", required=True)
    p.add_argument("--tolerance", type=_rational, default=Fraction(1, 10**9))

    p = add("fox", cmd_fox, "Fox derivative of a word")
    p.add_argument("--word", required=True)
    p.add_argument("--index", type=int, required=True)
    p.add_argument("--classical", action="store_true", help="left convention d(gh) = dg + g dh")
    grp = p.add_mutually_exclusive_group()
    grp.add_argument("--genus", type=int)
    grp.add_argument("--rank", type=int)

    p = add("tuples", cmd_tuples, "enumerate the tuple family P_n")
    p.add_argument("--genus", type=int, required=True)
    p.add_argument("--level", type=int, required=True)
    p.add_argument("--limit", type=int)

    p = add("special", cmd_special, "constructive special-tuple search")
    p.add_argument("--genus", type=int, required=True)
    p.add_argument("--level", type=int, required=True)
    p.add_argument("--hom", default="abelian", help="abelian | trivial | free | solvable:K | abelian:v;... | free:w;...")
    p.add_argument("--budget", type=int, default=5_000_000)

    p = add("plan", cmd_plan, "plan an infection schedule")
    p.add_argument("--matrix", required=True)
    p.add_argument("--level", type=int, required=True)
    p.add_argument("--axes", type=int, required=True)
    p.add_argument("--cm", type=_rational, required=True)
    p.add_argument("--count", type=int, required=True)

    p = add("verify", cmd_verify, "re-verify a plan")
    p.add_argument("--plan", required=True)

    p = add("gap", cmd_gap, "lower bound for the rho difference of two family members")
    p.add_argument("--plan", required=True)
    p.add_argument("--i", type=int, required=True)
    p.add_argument("--j", type=int, required=True)
    p.add_argument("--eps-i", required=True)
    p.add_argument("--eps-j", required=True)
    return parser


def _render(doc) -> str:
    if isinstance(doc, str):
        return doc
    return json.dumps(doc, indent=2) + "\n"


def _fail(code: int, message: str) -> int:
    sys.stderr.write(json.dumps({"error": message}) + "\n")
    return code


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        return _fail(EXIT_USAGE, str(exc))
    try:
        doc = args.func(args)
    except BudgetExceeded as exc:
        return _fail(EXIT_BUDGET, str(exc) or "computation budget exceeded")
    except (ValueError, IndexError, KeyError, TypeError) as exc:
        return _fail(EXIT_INVALID, str(exc))
    text = _render(doc)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
