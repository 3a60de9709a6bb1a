"""Command-line entry point.

Exit codes: 0 success (for ``solve``: decided), 1 undecided or a failed
selftest, 2 usage or input error, 3 cross-check discrepancy.
"""
from __future__ import annotations

import argparse
import csv
import json
import random
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from . import boolfun, classifier, generators, reference, transforms
from .errors import DiscrepancyError, ParseError, SublogicError
from .solvers import UNKNOWN, dispatch, solve_typeelim
from .solvers.common import used_clone
from .syntax import EXISTS, FORALL, format_instance, parse, parse_operators, signature

QUANTIFIER_WORDS = {"none": (), "exists": (EXISTS,), "forall": (FORALL,),
                    "both": (EXISTS, FORALL)}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _read(path):
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def _load_operators(path):
    """Operators from an operators file, or those declared by an instance file."""
    text = _read(path)
    try:
        return parse_operators(text)
    except ParseError:
        return parse(text).operators


def _quantifiers(text):
    out = set()
    for word in text.split(","):
        word = word.strip().lower()
        if word not in QUANTIFIER_WORDS:
            raise UsageError(f"unknown quantifier {word!r}")
        out.update(QUANTIFIER_WORDS[word])
    return frozenset(out)


def _emit(args, text, payload):
    if args.json:
        print(json.dumps(payload, sort_keys=True))
    else:
        print(text)


# ---------------------------------------------------------------------------
# Subcommands

def cmd_clone(args):
    desc = boolfun.identify_clone(_load_operators(args.file))
    _emit(args, str(desc), {"named": desc.named, "contains": sorted(desc.contains),
                            "within": sorted(desc.within), "exact": desc.exact})
    return 0


def cmd_classify(args):
    if args.table:
        rows = classifier.overview_table()
        _emit(args, classifier.format_overview().rstrip("\n"),
              [{"problem": k, "quantifiers": q, "column": c, "verdict": v.label()}
               for k, q, c, v in rows])
        return 0
    if not args.file or not args.problem:
        raise UsageError("classify needs --problem and an operators file (or --table)")
    verdict = classifier.classify(args.problem, _quantifiers(args.quantifiers),
                                  _load_operators(args.file))
    _emit(args, str(verdict), {"class": verdict.cls, "label": verdict.label(),
                               "provenance": list(verdict.provenance)})
    return 0


def cmd_solve(args):
    inst = parse(_read(args.file))
    result = dispatch(inst, method=args.method, cross_check=args.cross_check,
                      model=args.model)
    lines = [result.status]
    if args.verbose:
        lines.append(f"method {result.method}")
        if isinstance(result.witness, list):
            lines.extend(result.witness)
        elif result.witness is not None:
            lines.append(str(result.witness))
    if args.model and result.model is not None:
        lines.append(result.model.format().rstrip("\n"))
    payload = {"status": result.status, "method": result.method,
               "stats": result.stats,
               "model": result.model.format() if args.model and result.model else None}
    _emit(args, "\n".join(lines), payload)
    return 1 if result.status == UNKNOWN else 0


def cmd_reduce(args):
    inst = parse(_read(args.file))
    kwargs = {}
    extra = []
    if args.transform == "lift":
        if not args.target:
            raise UsageError("lift needs --target")
        extra = [args.target]
    elif args.transform == "change-base":
        if not args.ops:
            raise UsageError("change-base needs --ops FILE")
        extra = [_load_operators(args.ops)]
    elif args.transform == "dualize":
        kwargs = {"mode": args.mode or inst.kind, "add_missing": args.add_missing}
    out, rep = transforms.apply_transform(inst, args.transform, *extra, **kwargs)
    text = format_instance(out)
    if args.output:
        Path(args.output).write_text(text)
        shown = f"wrote {args.output}"
    else:
        shown = text.rstrip("\n")
    print(rep, file=sys.stderr)
    _emit(args, shown, {"instance": text, "report": str(rep)})
    return 0


def _gen_instance(args):
    rng = random.Random(args.seed)
    if args.family == "gap":
        g = generators.random_digraph(rng, args.nodes, args.degree)
        s, t = rng.randrange(args.nodes), rng.randrange(args.nodes)
        return generators.gen_gap(g, s, t), (not generators.reachable(g, s, t))
    if args.family == "hgap":
        h = generators.random_hypergraph(rng, args.nodes, args.edges or 2 * args.nodes)
        S = set(rng.sample(range(args.nodes), min(args.sources, args.nodes)))
        t = rng.randrange(args.nodes)
        return generators.gen_hgap(h, S, t), t not in generators.hyper_closure(h, S)
    if args.family == "one-in-three":
        clauses = generators.random_clauses(rng, args.vars, args.clauses)
        return generators.gen_one_in_three(clauses), generators.one_in_three_sat(clauses)
    inst = generators.gen_random(args.profile, args.seed, atoms=args.atoms,
                                 axioms=args.axioms, individuals=args.individuals,
                                 depth=args.depth)
    return inst, None


def cmd_gen(args):
    inst, answer = _gen_instance(args)
    text = format_instance(inst)
    if args.with_answer:
        if answer is None:
            answer = solve_typeelim(inst).status == "SAT"
        text += f"# expected: {'sat' if answer else 'unsat'}\n"
    if args.output:
        Path(args.output).write_text(text)
    _emit(args, text.rstrip("\n") if not args.output else f"wrote {args.output}",
          {"instance": text, "expected": None if answer is None or not args.with_answer
           else ("sat" if answer else "unsat")})
    return 0


def _profile_of(inst):
    sig = signature(inst)
    q = {0: "none", 2: "both"}.get(len(sig.quantifiers))
    if q is None:
        q = "exists" if EXISTS in sig.quantifiers else "forall"
    desc = used_clone(inst)
    return f"{inst.kind}/{q}/{desc.named or '?'}"


def _bench_one(job):
    path, method = job
    try:
        inst = parse(Path(path).read_text())
        start = time.perf_counter()
        res = dispatch(inst, method=method)
        ms = (time.perf_counter() - start) * 1000
    except SublogicError as exc:
        return None, f"{path}: {method}: {exc}"
    if res.status == UNKNOWN:
        return None, f"{path}: {method}: undecided"
    return {"id": Path(path).stem, "profile": _profile_of(inst), "method": res.method,
            "status": res.status, "ms": f"{ms:.2f}", "types": res.stats.get("types", ""),
            "rules": res.stats.get("rules", "")}, None


BENCH_FIELDS = ["id", "profile", "method", "status", "ms", "types", "rules"]


def cmd_bench(args):
    files = sorted(p for p in Path(args.directory).iterdir() if p.suffix in (".dl", ".txt")
                   and p.is_file()) if Path(args.directory).is_dir() else None
    if files is None:
        raise UsageError(f"{args.directory} is not a directory")
    methods = [m.strip() for m in args.methods.split(",") if m.strip()]
    jobs = [(str(f), m) for f in files for m in methods]
    if args.jobs > 1:
        with ProcessPoolExecutor(args.jobs) as pool:
            results = list(pool.map(_bench_one, jobs))     # map keeps input order
    else:
        results = [_bench_one(j) for j in jobs]
    rows = []
    for row, err in results:
        if err:
            print(err, file=sys.stderr)
        else:
            rows.append(row)
    if args.json:
        print(json.dumps(rows, sort_keys=True))
    else:
        w = csv.DictWriter(sys.stdout, fieldnames=BENCH_FIELDS, lineterminator="\n")
        w.writeheader()
        w.writerows(rows)
    return 0


def cmd_selftest(args):
    bases = reference.check_bases()
    cells = reference.check_overview()
    total = sum(1 for _ in reference.expected_cells())
    lines = [f"bases: {len(reference.STANDARD_BASES) - len(bases)}/"
             f"{len(reference.STANDARD_BASES)} identified",
             f"overview: {total - len(cells)}/{total} cells match"]
    lines += [f"  base {name}: got {got}" for name, got in bases]
    lines += [f"  {k} {q} {c}: expected {w}, got {g}" for k, q, c, w, g in cells]
    lines.append("selftest " + ("passed" if not bases and not cells else "FAILED"))
    _emit(args, "\n".join(lines), {"bases": bases, "cells": cells,
                                   "passed": not bases and not cells})
    return 0 if not bases and not cells else 1


# ---------------------------------------------------------------------------

def build_parser():
    p = _Parser(prog="sublogic", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, fn, help_):
        sp = sub.add_parser(name, help=help_)
        sp.add_argument("--json", action="store_true", help="machine-readable output")
        sp.set_defaults(fn=fn)
        return sp

    sp = add("clone", cmd_clone, "identify the clone generated by some operators")
    sp.add_argument("file")

    sp = add("classify", cmd_classify, "complexity of a problem for an operator set")
    sp.add_argument("file", nargs="?")
    sp.add_argument("--problem", choices=classifier.CLASSIFIED_KINDS + ("csat",))
    sp.add_argument("--quantifiers", default="none",
                    help="none, exists, forall, both, or a comma list")
    sp.add_argument("--table", action="store_true", help="print the overview table")

    sp = add("solve", cmd_solve, "decide an instance")
    sp.add_argument("file")
    sp.add_argument("--method", default="auto",
                    choices=["auto", "typeelim", "brute", "nlgraph", "saturation", "el",
                             "forallv", "propsat"])
    sp.add_argument("--cross-check", action="store_true")
    sp.add_argument("--model", action="store_true", help="print a model when SAT")
    sp.add_argument("-v", "--verbose", action="store_true", help="print method and witness")

    sp = add("reduce", cmd_reduce, "apply a satisfiability-preserving transform")
    sp.add_argument("transform", choices=sorted(transforms.TRANSFORMS))
    sp.add_argument("file")
    sp.add_argument("--target", choices=["osat", "ocsat", "tcsat", "tsat", "csat"])
    sp.add_argument("--mode", choices=["tsat", "tcsat", "osat", "ocsat"])
    sp.add_argument("--add-missing", action="store_true")
    sp.add_argument("--ops", help="operators file for change-base")
    sp.add_argument("-o", "--output")

    sp = add("gen", cmd_gen, "generate an instance")
    sp.add_argument("family", choices=["gap", "hgap", "one-in-three", "random"])
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--nodes", type=int, default=10)
    sp.add_argument("--degree", type=int, default=2)
    sp.add_argument("--edges", type=int)
    sp.add_argument("--sources", type=int, default=2)
    sp.add_argument("--vars", type=int, default=6)
    sp.add_argument("--clauses", type=int, default=4)
    sp.add_argument("--profile", default="tsat/forall/E")
    sp.add_argument("--atoms", type=int, default=4)
    sp.add_argument("--axioms", type=int, default=5)
    sp.add_argument("--individuals", type=int, default=2)
    sp.add_argument("--depth", type=int, default=2)
    sp.add_argument("--with-answer", action="store_true")
    sp.add_argument("-o", "--output")

    sp = add("bench", cmd_bench, "solve a directory of instances and print CSV")
    sp.add_argument("directory")
    sp.add_argument("--methods", default="auto")
    sp.add_argument("--jobs", type=int, default=1)

    add("selftest", cmd_selftest, "check base identification and the overview table")
    return p


def run_cli(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        return args.fn(args)
    except UsageError as exc:
        print(f"sublogic: error: {exc}", file=sys.stderr)
        return 2
    except DiscrepancyError as exc:
        print(f"sublogic: discrepancy: {exc}", file=sys.stderr)
        return 3
    except SublogicError as exc:
        print(f"sublogic: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2


def main():
    sys.exit(run_cli())
