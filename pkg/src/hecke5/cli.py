"""Command-line surface.

Subcommands: quotient, closure, verify, congruence, census.
Exit codes: 0 success/decided, 1 input error, 2 undecided (a cap was hit).
Structured output (--format json) is newline-delimited JSON records headed
by a version record, and round-trips through the report parsers.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from collections import Counter

from . import __version__
from .golden_ring import Modulus, parse_golden
from .hecke_matrices import NotInG5Error, decompose, eval_word, parse_word
from .quotients import (
    QuotientCapError, build_quotient, kernel_subgroup, normal_closure,
)
from .congruence import (
    UndecidedError, coset_table, enumerate_index, geometric_level_from_table,
    is_congruence, is_normal_table, schreier_generators,
)
from .farey import parse_hfs, side_pairing
from .verify import REGISTRY, run_all, run_check

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_UNDECIDED = 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse defaults to exit code 2
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def _emit(args, records: list[dict], text_lines: list[str]) -> None:
    if args.format == "json":
        print(json.dumps({"record": "version", "version": __version__}))
        for r in records:
            print(json.dumps(r, sort_keys=True))
    else:
        for line in text_lines:
            print(line)


def _modulus(args) -> Modulus:
    if args.mod is not None and args.ideal is not None:
        raise ValueError("give either --mod or --ideal, not both")
    if args.mod is not None:
        return Modulus.rational(args.mod)
    if args.ideal is not None:
        return Modulus.ideal(parse_golden(args.ideal))
    raise ValueError("a modulus is required (--mod N or --ideal G)")


def _quotient_kwargs(args) -> dict:
    kw = {}
    if args.cache_dir and not args.no_cache:
        kw["cache_dir"] = args.cache_dir
    if args.element_cap:
        kw["element_cap"] = args.element_cap
    if args.ring_cap:
        kw["ring_cap"] = args.ring_cap
    return kw


def cmd_quotient(args) -> int:
    mod = _modulus(args)
    q = build_quotient(mod, projective=not args.homogeneous, **_quotient_kwargs(args))
    rec = {"record": "quotient", "modulus": str(mod), "order": q.order,
           "projective": q.projective}
    lines = [f"quotient mod {mod}: order {q.order}"]
    if args.histogram:
        hist = q.order_histogram()
        rec["order_histogram"] = {str(k): v for k, v in sorted(hist.items())}
        lines.append("element orders: "
                     + ", ".join(f"{k}:{v}" for k, v in sorted(hist.items())))
    _emit(args, [rec], lines)
    return EXIT_OK


def cmd_closure(args) -> int:
    mod = _modulus(args)
    q = build_quotient(mod, projective=True, **_quotient_kwargs(args))
    seed = eval_word(parse_word(args.seed))
    h = normal_closure(q, [seed])
    matches = []
    if mod.kind == "rational":
        n = mod.generator.a
        for d in range(1, n + 1):
            if n % d:
                continue
            k = kernel_subgroup(q, Modulus.rational(d))
            if k.members == h.members:
                matches.append(d)
    rec = {"record": "closure", "modulus": str(mod), "seed": args.seed,
           "order": h.order, "kernel_levels": matches}
    lines = [f"normal closure of {args.seed} mod {mod}: order {h.order}"]
    if matches:
        lines.append("equals kernel of reduction to level "
                     + ", ".join(map(str, matches)))
    _emit(args, [rec], lines)
    return EXIT_OK


def cmd_verify(args) -> int:
    if args.all:
        results = run_all()
    elif args.lemma:
        results = run_check(args.lemma, m=args.m, p=args.p, n=args.n,
                            a=args.a, b=args.b, r=args.r, s=args.s, pi=args.pi)
    else:
        raise ValueError("give --lemma ID or --all")
    recs = [{"record": "check", "id": r.check_id, "params": r.params,
             "passed": r.passed, "detail": r.detail} for r in results]
    _emit(args, recs, [r.line() for r in results])
    return EXIT_OK if all(r.passed for r in results) else EXIT_INPUT


def _input_words(args) -> list:
    sources = [args.hfs is not None, args.hfs_file is not None, bool(args.gens)]
    if sum(sources) != 1:
        raise ValueError("give exactly one of --hfs, --hfs-file, --gens")
    if args.gens:
        return [parse_word(g) for g in args.gens]
    text = args.hfs if args.hfs is not None else open(args.hfs_file).read()
    return [decompose(g) for g in side_pairing(parse_hfs(text))]


def cmd_congruence(args) -> int:
    words = _input_words(args)
    report = is_congruence(words)
    lines = [
        f"index {report.index}, geometric level {report.geometric_level}, "
        f"test modulus {report.test_modulus}",
        f"quotient order {report.quotient_order}, image order {report.image_order}",
        f"verdict: {report.verdict}"
        + (f", algebraic level {report.algebraic_level}"
           if report.algebraic_level else ""),
    ]
    rec = report.to_dict()
    rec["record"] = "congruence"
    _emit(args, [rec], lines)
    return EXIT_OK


def cmd_census(args) -> int:
    tables = enumerate_index(args.index)
    recs, lines = [], []
    for i, t in enumerate(tables):
        level = geometric_level_from_table(t)
        normal = is_normal_table(t)
        report = is_congruence(schreier_generators(t), table=t)
        note = "unasserted" if normal and args.index == 5 else ""
        rec = {"record": "census-row", "id": i, "index": t.degree,
               "v2": sum(1 for j in range(t.degree) if t.perm_s[j] == j),
               "geometric_level": level, "normal": normal,
               "verdict": report.verdict,
               "algebraic_level": report.algebraic_level, "note": note}
        recs.append(rec)
        lines.append(
            f"#{i}: index {t.degree}, v2 {rec['v2']}, level {level}, "
            f"{'normal, ' if normal else ''}{report.verdict}"
            + (f" ({report.algebraic_level})" if report.algebraic_level else "")
            + (f" [{note}]" if note else ""))
    lines.append(f"total: {len(tables)} subgroups of index {args.index}")
    _emit(args, recs, lines)
    return EXIT_OK


def build_parser() -> _Parser:
    p = _Parser(prog="hecke5", description=__doc__)
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--format", choices=("text", "json"), default="text")
        sp.add_argument("--cache-dir", default=os.environ.get("HECKE5_CACHE_DIR"))
        sp.add_argument("--no-cache", action="store_true")
        sp.add_argument("--element-cap", type=int, default=None)
        sp.add_argument("--ring-cap", type=int, default=None)

    sp = sub.add_parser("quotient", help="order of the image mod a modulus")
    sp.add_argument("--mod", type=int)
    sp.add_argument("--ideal")
    sp.add_argument("--homogeneous", action="store_true")
    sp.add_argument("--histogram", action="store_true")
    common(sp)
    sp.set_defaults(fn=cmd_quotient)

    sp = sub.add_parser("closure", help="normal closure of a word in a quotient")
    sp.add_argument("--mod", type=int)
    sp.add_argument("--ideal")
    sp.add_argument("--seed", required=True, help='word, e.g. "T^4"')
    common(sp)
    sp.set_defaults(fn=cmd_closure)

    sp = sub.add_parser("verify", help="run registered structural checks")
    sp.add_argument("--lemma", choices=sorted(REGISTRY))
    sp.add_argument("--all", action="store_true")
    sp.add_argument("--m", type=int)
    sp.add_argument("--p", type=int)
    sp.add_argument("--n", type=int)
    sp.add_argument("--a")
    sp.add_argument("--b", type=int)
    sp.add_argument("--r", type=int)
    sp.add_argument("--s", type=int)
    sp.add_argument("--pi")
    common(sp)
    sp.set_defaults(fn=cmd_verify)

    sp = sub.add_parser("congruence", help="decide congruence for a subgroup")
    sp.add_argument("--hfs", help="inline symbol, e.g. '[-inf; *; 0; *; inf]'")
    sp.add_argument("--hfs-file")
    sp.add_argument("--gens", action="append",
                    help="generator word (repeatable)")
    common(sp)
    sp.set_defaults(fn=cmd_congruence)

    sp = sub.add_parser("census", help="all subgroups of a given index")
    sp.add_argument("--index", type=int, required=True)
    common(sp)
    sp.set_defaults(fn=cmd_census)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except (UndecidedError, QuotientCapError) as exc:
        print(f"undecided: {exc}", file=sys.stderr)
        return EXIT_UNDECIDED
    except (ValueError, NotInG5Error, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
