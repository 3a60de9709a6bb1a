"""Completion-rule saturation for conjunction, constants and ``exists``.

Individuals become fresh atoms ``_N_a`` (``C(a)`` gives ``_N_a <= C`` and
``r(a, b)`` gives ``_N_a <= some r._N_b``) and a query ``C`` becomes
``_Q <= C``.  With no negation and no universal restriction, the canonical
model built from the completion sets amalgamates across individuals, so
consistency reduces to bottom staying out of the relevant sets.
"""
from __future__ import annotations

from ..errors import DispatchError, TransformError
from ..syntax import (FORALL, Atomic, Axiom, Exists, FreshNames, Interpretation,
                      Ontology, ProblemInstance, all_names, signature)
from ..transforms import normalize_nf
from ._normal import BOTK, TOPK, Derivations, axiom_tuples, show
from .result import SAT, UNSAT, SolveResult


def compile_abox(instance):
    """Return the ABox-free TBox instance, the individual atoms and the query atom."""
    fresh = FreshNames(all_names(instance))
    sig = signature(instance)
    onto = instance.ontology
    nominal = {a: fresh(f"N_{a}") for a in sig.individuals}
    tbox = list(onto.tbox)
    tbox += [Axiom(Atomic(nominal[a]), c) for c, a in onto.abox_concepts]
    tbox += [Axiom(Atomic(nominal[a]), Exists(r, Atomic(nominal[b])))
             for r, a, b in onto.abox_roles]
    query = None
    if instance.query is not None:
        query = fresh("Q")
        tbox.append(Axiom(Atomic(query), instance.query))
    out = ProblemInstance("tsat", instance.operators, Ontology(tuple(tbox)), None)
    return out, nominal, query


class _Completion:
    def __init__(self, axioms, names):
        self.sub = [a[1:] for a in axioms if a[0] == "sub"]
        self.conj = [a[1:] for a in axioms if a[0] == "conj"]
        self.rhs = [a[1:] for a in axioms if a[0] == "rhs-some"]
        self.lhs = [a[1:] for a in axioms if a[0] == "lhs-some"]
        keys = set(names) | {TOPK, BOTK}
        keys.update(k for ax in self.sub + self.conj for k in ax)
        keys.update(k for a, _, d in self.rhs for k in (a, d))
        keys.update(k for _, a, e in self.lhs for k in (a, e))
        roles = {r for _, r, _ in self.rhs} | {r for r, _, _ in self.lhs}
        self.keys = sorted(keys)
        self.S = {x: dict.fromkeys([x, TOPK]) for x in self.keys}
        self.R = {r: set() for r in sorted(roles)}
        self.log = Derivations()
        self.fired = 0

    def _add(self, x, c, rule, premises):
        if c in self.S[x]:
            return False
        self.S[x][c] = None
        self.fired += 1
        self.log.note((x, c), rule, premises)
        return True

    def run(self):
        changed = True
        while changed:
            changed = False
            for x in self.keys:
                s = self.S[x]
                for a, b in self.sub:
                    if a in s:
                        changed |= self._add(x, b, "R1", [(x, a)])
                for a, b, c in self.conj:
                    if a in s and b in s:
                        changed |= self._add(x, c, "R2", [(x, a), (x, b)])
                for a, r, d in self.rhs:
                    if a in s and (x, d) not in self.R[r]:
                        self.R[r].add((x, d))
                        self.fired += 1
                        self.log.note((x, f"some {r}.{show(d)}"), "R3", [(x, a)])
                        changed = True
                for r, edges in self.R.items():
                    for x2, d in sorted(edges):
                        if x2 != x:
                            continue
                        for r2, a, e in self.lhs:
                            if r2 == r and a in self.S[d]:
                                changed |= self._add(x, e, "R4",
                                                     [(x, f"some {r}.{show(d)}"), (d, a)])
                        if BOTK in self.S[d]:
                            changed |= self._add(x, BOTK, "Rbot",
                                                 [(x, f"some {r}.{show(d)}"), (d, BOTK)])


def _model(comp, seeds, atoms, roles, nominal):
    order, pos = [], {}
    for s in seeds:
        if s not in pos:
            pos[s] = len(order)
            order.append(s)
    k = 0
    edges = {r: set() for r in roles}
    while k < len(order):
        x = order[k]
        for r, es in comp.R.items():
            for x2, d in sorted(es):
                if x2 != x:
                    continue
                if d not in pos:
                    pos[d] = len(order)
                    order.append(d)
                edges.setdefault(r, set()).add((pos[x], pos[d]))
        k += 1
    ext = {a: {pos[x] for x in order if a in comp.S[x]} for a in atoms}
    inds = {a: pos[n] for a, n in nominal.items()}
    return Interpretation(tuple(range(len(order))), ext, edges, inds)


def solve_el_exists(instance, model: bool = True) -> SolveResult:
    sig = signature(instance)
    if FORALL in sig.quantifiers:
        raise DispatchError("the completion procedure does not handle universal restrictions")
    compiled, nominal, query = compile_abox(instance)
    try:
        normal = normalize_nf(compiled)
    except TransformError as exc:
        raise DispatchError(str(exc)) from exc
    seeds = list(nominal.values()) + ([query] if query else [])
    if not seeds:
        seeds = [TOPK]
    comp = _Completion(axiom_tuples(normal.tbox), seeds)
    comp.run()
    stats = {"types": len(comp.keys), "rules": comp.fired}
    for x in [TOPK] + seeds:
        if BOTK in comp.S[x]:
            fmt = lambda f: f"{show(f[1])} in S({show(f[0])})"  # noqa: E731
            return SolveResult(UNSAT, "el", witness=comp.log.trace((x, BOTK), fmt),
                               stats=stats)
    m = _model(comp, seeds, sig.atoms, sig.roles, nominal) if model else None
    return SolveResult(SAT, "el", model=m, stats=stats)
