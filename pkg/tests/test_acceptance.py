"""Acceptance suite: one pass/fail line per criterion.

Run with pytest, or directly with ``python tests/test_acceptance.py``.
"""
from __future__ import annotations

import random
import sys
import time
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).resolve().parent))

import oracles  # noqa: E402
from sublogic import boolfun, classifier, generators, transforms  # noqa: E402
from sublogic.boolfun import (AND, AND_EQ, ANDOR, BOT, EQUIV, MAJ_NEG, NAND, NOT,  # noqa: E402
                              OR, SD, TOP, XOR, XOR3_NEG, NamedOperator, TruthTable)
from sublogic.reference import STANDARD_BASES  # noqa: E402
from sublogic.solvers import (SAT, UNKNOWN, UNSAT, dispatch, solve_bruteforce, solve_el_exists,  # noqa: E402
                              solve_forall_V, solve_nl_graph, solve_prop_sat,
                              solve_saturation_forall, solve_typeelim)
from sublogic.syntax import (EXISTS, FORALL, Atomic, Axiom, Exists, Forall,  # noqa: E402
                             Interpretation, Ontology, ProblemInstance, check_model,
                             signature, unique_subconcepts)

BOTH = frozenset({EXISTS, FORALL})
QROWS = (frozenset(), frozenset({EXISTS}), frozenset({FORALL}), BOTH)


def _report(capsys, n, ok, detail):
    line = f"criterion {n}: {'PASS' if ok else 'FAIL'}  {detail}"
    if capsys is None:
        print(line)
    else:
        with capsys.disabled():
            print("\n" + line)


# ---------------------------------------------------------------------------
# 1. clone identification

def criterion_1():
    bad, slowest = [], 0.0
    for name in STANDARD_BASES:
        base = boolfun.CLONES[name].base
        if oracles.oracle_clone_name([f.table.bits for f in base]) != name:
            bad.append(f"{name}: the oracle disagrees with the base table")
        boolfun._identify_cached.cache_clear()
        start = time.perf_counter()
        got = boolfun.identify_clone(base).named
        took = time.perf_counter() - start
        slowest = max(slowest, took)
        if got != name or took >= 1.0:
            bad.append(f"{name}: got {got} in {took:.2f}s")
    return not bad, f"{len(STANDARD_BASES) - len(bad)}/{len(STANDARD_BASES)} bases, " \
                    f"slowest {slowest * 1000:.0f} ms {bad or ''}"


# ---------------------------------------------------------------------------
# 2. classification tables

_CLASS = {"NL": classifier.NL, "P": classifier.P, "NP": classifier.NP,
          "EXPTIME": classifier.EXPTIME, "trivial": classifier.TRIVIAL,
          "open": classifier.OPEN}


def _column_members(labels, group):
    """Read each column label of the overview as a set of named clones."""
    names = list(boolfun.CLONES)
    members, lower = {}, {}
    for label in labels:
        if label == "otherwise":
            continue
        if " to " in label:
            lows, top = label.split(" to ")
            lows = lows.split("/")
            lower[label] = lows
            members[label] = {c for c in names
                              if any(oracles.oracle_included(lo, c) for lo in lows)
                              and oracles.oracle_included(c, top)}
        else:
            members[label] = set(label.split("/"))
    taken = set().union(*members.values())
    reproducing = ("R0", "R1") if group == "tsat" else ("R1",)
    members["otherwise"] = {c for c in names if c not in taken
                            and any(oracles.oracle_included(c, r) for r in reproducing)}
    taken |= members["otherwise"]
    # Anything left falls in the interval columns it lies above; they must agree.
    leftover = {c: [lab for lab, lows in lower.items()
                    if any(oracles.oracle_included(lo, c) for lo in lows)]
                for c in names if c not in taken}
    return members, leftover


def criterion_2():
    overview = oracles.parse_overview_table()
    appendix = oracles.parse_appendix_table()
    bad, checked = [], 0

    def check(kind, Q, clone, want, where):
        nonlocal checked
        checked += 1
        verdict = classifier.classify(kind, Q, boolfun.CLONES[clone].base)
        if verdict.cls != want:
            bad.append(f"{where} {kind} {sorted(Q)} {clone}: want {want}, got {verdict.cls}")
        if want == classifier.OPEN and verdict.open_bounds != ("P-hard", "in EXPTIME"):
            bad.append(f"{where} {kind} {sorted(Q)} {clone}: bounds {verdict.open_bounds}")

    for group, kinds in (("tsat", ("tsat",)), ("star", ("tcsat", "osat", "ocsat"))):
        labels = [lab for (g, Q, lab) in overview if g == group and Q == frozenset()]
        members, leftover = _column_members(labels, group)
        for kind in kinds:
            for Q in QROWS:
                cell = {lab: overview[(group, Q, lab)] for lab in labels}
                for lab, want in cell.items():
                    if want == "footnoted":
                        want = "P" if kind == "tcsat" else "open"
                    for clone in members[lab]:
                        check(kind, Q, clone, _CLASS[want], "overview")
                for clone, cols in leftover.items():
                    wants = {cell[c] for c in cols}
                    if len(wants) != 1:
                        bad.append(f"overview: {clone} sits in columns that disagree")
                        continue
                    check(kind, Q, clone, _CLASS[wants.pop()], "overview")
    for (kind, Q, clone), want in appendix.items():
        check(kind, Q, clone, _CLASS[want], "appendix")
    return not bad, f"{checked} cells checked, {len(bad)} mismatches {bad[:5] or ''}"


# ---------------------------------------------------------------------------
# 3. solver cross-validation

SPECIALIZED = {
    "qf-any": solve_prop_sat,
    "qf-n": solve_nl_graph,
    "forall-e": solve_saturation_forall,
    "exists-e": solve_el_exists,
    "forall-v": solve_forall_V,
}
SIZE = dict(atoms=5, roles=2, axioms=6, individuals=3, max_closure=14)
PER_FAMILY = 500


def cross_validate(family, count=PER_FAMILY, size=SIZE):
    problems, decided = [], {SAT: 0, UNSAT: 0}
    brute_conclusive = 0
    solver = SPECIALIZED[family]
    for seed in range(count):
        inst = generators.gen_random(family, seed, **size)
        got = solver(inst, model=True)
        ref = solve_typeelim(inst)
        decided[ref.status] += 1
        if got.status != ref.status:
            problems.append(f"{family}#{seed}: {got.status} vs typeelim {ref.status}")
        if got.status == SAT and not check_model(got.model, inst):
            problems.append(f"{family}#{seed}: model fails")
        bound = len(signature(inst).individuals) + (inst.query is not None)
        brute = solve_bruteforce(inst, max_domain=max(2, bound), model=False)
        if brute.status != UNKNOWN:
            brute_conclusive += 1
            if brute.status != ref.status:
                problems.append(f"{family}#{seed}: brute {brute.status} vs {ref.status}")
    return problems, decided, brute_conclusive


def criterion_3():
    start = time.perf_counter()
    problems, parts = [], []
    for family in SPECIALIZED:
        p, decided, brute = cross_validate(family)
        problems += p
        parts.append(f"{family} {decided[SAT]}/{decided[UNSAT]} (brute {brute})")
    took = time.perf_counter() - start
    ok = not problems and took < 300
    return ok, f"{len(problems)} disagreements in {took:.0f}s; sat/unsat {', '.join(parts)} " \
               f"{problems[:5] or ''}"


# ---------------------------------------------------------------------------
# 4. reduction soundness

AND3 = NamedOperator("and3", TruthTable.from_function(3, lambda x, y, z: x and y and z))
LIFT_TARGETS = {"csat": ("osat", "ocsat"), "tsat": ("tcsat", "osat", "ocsat"),
                "tcsat": ("osat", "ocsat"), "osat": ("ocsat",), "ocsat": ("osat",)}
SIM_OPS = ([AND, NOT, TOP, BOT], [NAND, TOP], [SD, BOT, TOP], [XOR3_NEG, TOP])
CHANGE_BASE = (([AND, NOT], [NAND]), ([NAND], [OR, NOT]), ([XOR, TOP], [EQUIV, BOT]),
               ([AND, TOP, BOT], [AND3, TOP, BOT]))
DUAL_OPS = ([AND, TOP, BOT], [OR, BOT], [AND, NOT], [XOR, TOP])
OUTPUT_CLOSURE = 20
PER_TRANSFORM = 200


def _random(rng, kind, Q, ops, **kw):
    size = dict(atoms=4, axioms=4, individuals=2, max_closure=12)
    size.update(kw)
    return generators.random_instance(rng, kind, Q, ops, **size)


def reduction_case(name, rng):
    """One input instance and the call to apply to it."""
    Q = rng.choice(QROWS)
    if name == "lift":
        kind = rng.choice(sorted(LIFT_TARGETS))
        return (_random(rng, kind, Q, [AND, NOT, TOP]),
                lambda i: transforms.lift(i, rng.choice(LIFT_TARGETS[kind])))
    if name == "simulate_constants":
        kind = rng.choice(["tsat", "tcsat", "osat", "ocsat"])
        return _random(rng, kind, Q, rng.choice(SIM_OPS)), transforms.simulate_constants
    if name == "tcsat_to_tsat":
        ops = rng.choice([[AND, NOT], [AND, TOP], [OR], [XOR, BOT]])
        return _random(rng, "tcsat", Q, ops), transforms.tcsat_to_tsat
    if name == "lewis_relativize":
        ops = rng.choice([[AND, NOT, TOP], [AND, TOP, BOT], [OR, TOP], [TOP, BOT]])
        return _random(rng, "tsat", Q, ops), transforms.lewis_relativize
    if name == "dualize/tsat":
        return (_random(rng, "tsat", Q, rng.choice(DUAL_OPS)),
                lambda i: transforms.dualize(i, mode="tsat"))
    if name == "dualize/tcsat":
        return (_random(rng, "tcsat", Q, rng.choice(DUAL_OPS)),
                lambda i: transforms.dualize(i, mode="tcsat", add_missing=True))
    if name == "change_base":
        src, dst = rng.choice(CHANGE_BASE)
        kind = rng.choice(["tsat", "tcsat", "osat", "ocsat"])
        return _random(rng, kind, Q, src), lambda i: transforms.change_base(i, dst)
    if name == "normalize_nf":
        return _random(rng, "tsat", BOTH, [AND, TOP, BOT]), transforms.normalize_nf
    if name == "eliminate_conjunction_nf7":
        base = _random(rng, "tsat", BOTH, [AND, TOP, BOT], atoms=3, axioms=3)
        return transforms.normalize_nf(base), transforms.eliminate_conjunction_nf7
    raise KeyError(name)


REDUCTIONS = ("lift", "simulate_constants", "tcsat_to_tsat", "lewis_relativize",
              "dualize/tsat", "dualize/tcsat", "change_base", "normalize_nf",
              "eliminate_conjunction_nf7")


def check_reduction(name, count=PER_TRANSFORM):
    """Violations and number of unsatisfiable inputs over ``count`` cases.

    Inputs whose output exceeds the closure cap are redrawn, so every counted
    case is decided by type elimination on both sides.
    """
    rng = random.Random(name)
    violations, unsat = [], 0
    for k in range(count):
        while True:
            inst, fn = reduction_case(name, rng)
            out = fn(inst)
            if len(unique_subconcepts(out.concepts())) <= OUTPUT_CLOSURE:
                break
        before = solve_typeelim(inst).status
        after = solve_typeelim(out, limit=OUTPUT_CLOSURE).status
        unsat += before == UNSAT
        if before != after:
            violations.append(f"{name}#{k}: {before} -> {after}")
    return violations, unsat


def criterion_4():
    violations, parts = [], []
    for name in REDUCTIONS:
        v, unsat = check_reduction(name)
        violations += v
        parts.append(f"{name} {unsat}u")
    return not violations, f"{len(violations)} violations over {PER_TRANSFORM} cases each " \
                           f"({', '.join(parts)}) {violations[:5] or ''}"


# ---------------------------------------------------------------------------
# 5. generator ground truth

def _verdict(inst):
    # These instances are far past the type-elimination closure cap, so the
    # dispatcher's polynomial solvers decide them.
    return dispatch(inst).status


def criterion_5():
    bad = []
    rng = random.Random(5)
    for k in range(100):
        nodes = rng.randint(2, 30)
        g = generators.random_digraph(rng, nodes, rng.randint(1, 3))
        s, t = rng.randrange(nodes), rng.randrange(nodes)
        want = oracles.digraph_reachable(g.nodes, g.edges, s, t)
        if _verdict(generators.gen_gap(g, s, t)) != (UNSAT if want else SAT):
            bad.append(f"gap#{k}")
    for k in range(100):
        nodes = rng.randint(2, 20)
        h = generators.random_hypergraph(rng, nodes, rng.randint(nodes, 3 * nodes))
        S = set(rng.sample(range(nodes), min(nodes, rng.randint(1, 3))))
        t = rng.randrange(nodes)
        want = t in oracles.forward_chaining([(tuple(src), d) for src, d in h.edges], S)
        if _verdict(generators.gen_hgap(h, S, t)) != (UNSAT if want else SAT):
            bad.append(f"hgap#{k}")
    for k in range(100):
        n = rng.randint(3, 20)
        clauses = generators.random_clauses(rng, n, rng.randint(1, n))
        want = oracles.exactly_one_sat(clauses)
        if _verdict(generators.gen_one_in_three(clauses)) != (SAT if want else UNSAT):
            bad.append(f"one-in-three#{k}")
    return not bad, f"{300 - len(bad)}/300 generated instances match {bad[:5] or ''}"


# ---------------------------------------------------------------------------
# 6. triviality

R1_SETS = ([OR, EQUIV], [AND, TOP], [EQUIV], [MAJ_NEG], [OR, TOP, AND])
R0_SETS = ([AND, XOR], [XOR], [AND, BOT], [ANDOR, BOT], [OR, AND_EQ])


def singleton_model(inst, value):
    sig = signature(inst)
    return Interpretation((0,), {a: {0} if value else set() for a in sig.atoms},
                          {r: {(0, 0)} for r in sig.roles},
                          {a: 0 for a in sig.individuals})


def criterion_6():
    bad = []
    for group, sets, kind, value in (("R1", R1_SETS, "ocsat", 1), ("R0", R0_SETS, "tsat", 0)):
        for ops in sets:
            assert all(oracles.CLONE_DEFINITIONS[group](o.table.bits) for o in ops)
            rng = random.Random(f"{group}:{[o.name for o in ops]}")
            for k in range(100):
                inst = generators.random_instance(rng, kind, BOTH, ops, atoms=4, axioms=6,
                                                  individuals=3, max_closure=30)
                holds = oracles.singleton_satisfies(inst, value)
                if not holds or not check_model(singleton_model(inst, value), inst):
                    bad.append(f"{group} {[o.name for o in ops]} #{k}")
    return not bad, f"{1000 - len(bad)}/1000 instances satisfied {bad[:5] or ''}"


# ---------------------------------------------------------------------------
# 7. performance floor

def hard_closure_14(seed):
    """A tsat instance whose 14 subconcepts are all atoms or quantified."""
    rng = random.Random(seed)
    atoms = [Atomic(f"A{i}") for i in range(7)]
    quant = [(Exists if i % 2 else Forall)(rng.choice("rs"), atoms[(i + 1) % 7])
             for i in range(7)]
    tbox = [Axiom(atoms[i], quant[i]) for i in range(7)]
    tbox += [Axiom(rng.choice(quant), rng.choice(atoms)) for _ in range(3)]
    return ProblemInstance("tsat", (), Ontology(tuple(tbox)))


def criterion_7():
    worst, bad = 0.0, []
    for seed in range(5):
        inst = hard_closure_14(seed)
        assert len(unique_subconcepts(inst.concepts())) == 14
        start = time.perf_counter()
        res = solve_typeelim(inst, model=True)
        took = time.perf_counter() - start
        worst = max(worst, took)
        if res.stats["types"] != 1 << 14 or took >= 10:
            bad.append(f"seed {seed}: {res.stats['types']} types in {took:.2f}s")
        if res.status == SAT and not check_model(res.model, inst):
            bad.append(f"seed {seed}: model fails")
    return not bad, f"16384 candidate types, worst {worst:.2f}s {bad or ''}"


CRITERIA = {1: criterion_1, 2: criterion_2, 3: criterion_3, 4: criterion_4,
            5: criterion_5, 6: criterion_6, 7: criterion_7}


@pytest.mark.slow
@pytest.mark.parametrize("n", sorted(CRITERIA))
def test_criterion(n, capsys):
    ok, detail = CRITERIA[n]()
    _report(capsys, n, ok, detail)
    assert ok, detail


if __name__ == "__main__":
    results = []
    for n, fn in CRITERIA.items():
        ok, detail = fn()
        _report(None, n, ok, detail)
        results.append(ok)
    sys.exit(0 if all(results) else 1)
