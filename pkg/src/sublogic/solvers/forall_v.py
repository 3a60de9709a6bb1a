"""Disjunction and ``forall`` via contraposition into the completion procedure.

``C <= D`` holds iff ``not D <= not C``.  Pushing the negations inward turns
disjunction into conjunction and ``forall`` into ``exists``, with a primed
atom ``A'`` standing for the complement of ``A``.  Asserted atoms keep their
unprimed name and ``A and A' <= bot`` keeps the two apart, so a model of the
dual ontology yields one of the original by complementing the primed atoms.
"""
from __future__ import annotations

from ..boolfun import AND, BOT, NamedOperator, OperatorSet
from ..errors import DispatchError
from ..syntax import (EXISTS, Apply, Atomic, Axiom, Exists, Forall, FreshNames,
                      Interpretation, Ontology, ProblemInstance, all_names,
                      dual_operator, signature)
from .el import solve_el_exists
from .result import SAT, SolveResult


def dualize_for_el(instance):
    """Return the dual instance and the map from original atoms to primes."""
    sig = signature(instance)
    fresh = FreshNames(all_names(instance))
    onto = instance.ontology
    tbox = list(onto.tbox)
    abox = []
    for c, a in onto.abox_concepts:
        if isinstance(c, Atomic):
            abox.append((c, a))
        else:
            pin = Atomic(fresh("P"))
            tbox.append(Axiom(pin, c))
            abox.append((pin, a))
    query = instance.query
    if query is not None and not isinstance(query, Atomic):
        pin = Atomic(fresh("P"))
        tbox.append(Axiom(pin, query))
        query = pin
    atoms = sorted(set(sig.atoms) | {c.name for c, _ in abox}
                   | ({query.name} if query is not None else set()))
    prime = {a: fresh(f"d_{a}") for a in atoms}
    ops = list(instance.operators)
    made = {}

    def go(x):
        if isinstance(x, Atomic):
            return Atomic(prime[x.name])
        if isinstance(x, Apply):
            op = dual_operator(x.op, ops)
            op = made.setdefault(op.table, op)
            return Apply(op, tuple(go(k) for k in x.children))
        if isinstance(x, Exists):
            return Forall(x.role, go(x.child))
        return Exists(x.role, go(x.child))

    dual_tbox = [Axiom(go(ax.rhs), go(ax.lhs)) for ax in tbox]
    conj = next((o for o in ops if o.table == AND.table), None) or NamedOperator(
        fresh("and"), AND.table)
    bot = next((o for o in ops if o.arity == 0 and o.table == BOT.table), None) or \
        NamedOperator(fresh("bot"), BOT.table)
    dual_tbox += [Axiom(Apply(conj, (Atomic(a), Atomic(prime[a]))), Apply(bot, ()))
                  for a in atoms]
    used = {}
    for ax in dual_tbox:
        for c in (ax.lhs, ax.rhs):
            _collect_ops(c, used)
    new_ops = tuple(used.values())
    out = ProblemInstance(instance.kind, OperatorSet(new_ops),
                          Ontology(tuple(dual_tbox), tuple(abox), onto.abox_roles), query)
    return out, prime


def _collect_ops(c, acc):
    if isinstance(c, Apply):
        acc.setdefault(c.op.name, c.op)
        for k in c.children:
            _collect_ops(k, acc)
    elif isinstance(c, (Exists, Forall)):
        _collect_ops(c.child, acc)


def solve_forall_V(instance, model: bool = True) -> SolveResult:
    sig = signature(instance)
    if EXISTS in sig.quantifiers:
        raise DispatchError("the dual procedure handles universal restrictions only")
    dual, prime = dualize_for_el(instance)
    res = solve_el_exists(dual, model=model)
    stats = dict(res.stats, dual_axioms=len(dual.tbox))
    if res.status != SAT:
        return SolveResult(res.status, "forallv", witness=res.witness, stats=stats)
    m = None
    if model:
        j = res.model
        dom = set(j.domain)
        ext = {a: dom - j.concept_ext.get(prime[a], frozenset()) for a in sig.atoms}
        roles = {r: j.role_ext.get(r, frozenset()) for r in sig.roles}
        m = Interpretation(j.domain, ext, roles, dict(j.individual_map))
    return SolveResult(SAT, "forallv", model=m, stats=stats)
