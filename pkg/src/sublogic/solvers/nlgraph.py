"""Implication-graph procedure for quantifier-free fragments inside N.

Every concept over essentially unary operators collapses to a literal: an
atom, its negation, top or bottom.  An axiom ``l1 <= l2`` then holds at an
element exactly when the clause ``not l1 or l2`` does, so each element is a
2-SAT problem.  Satisfiability fails iff some literal shares a strongly
connected component with its complement.

Besides the axiom edges the graph carries the contrapositive of each edge,
the edges ``bot -> l`` and ``l -> top`` for every literal, and ``bot -> top``
pinning top to true.  Without the contrapositives a chain like
``A <= not A, not A <= A`` closes no cycle.
"""
from __future__ import annotations

import networkx as nx

from ..boolfun import as_literal
from ..errors import DispatchError
from ..syntax import Apply, Atomic, Interpretation, signature
from .result import SAT, UNSAT, SolveResult

TOP, BOT = "#top", "#bot"   # cannot clash with concept names


def literal(c):
    """``(name, negated)`` for an atom literal, or ``(TOP|BOT, False)``."""
    if isinstance(c, Atomic):
        return (c.name, False)
    if isinstance(c, Apply):
        shape = as_literal(c.op.table)
        if shape is None:
            raise DispatchError(f"operator {c.op.name} is not essentially unary")
        if shape[0] == "const":
            return (TOP if shape[1] else BOT, False)
        name, neg = literal(c.children[shape[1]])
        return _negate((name, neg)) if shape[2] else (name, neg)
    raise DispatchError("quantifiers are outside the implication-graph fragment")


def _negate(lit):
    name, neg = lit
    if name == TOP:
        return (BOT, False)
    if name == BOT:
        return (TOP, False)
    return (name, not neg)


def _node(lit):
    name, neg = lit
    return f"~{name}" if neg else name


def _graph(tbox_lits, units, atoms):
    g = nx.DiGraph()
    lits = [(a, s) for a in atoms for s in (False, True)] + [(TOP, False), (BOT, False)]
    g.add_nodes_from(_node(l) for l in lits)
    for l in lits:
        g.add_edge(_node((BOT, False)), _node(l))
        g.add_edge(_node(l), _node((TOP, False)))
    for l1, l2 in tbox_lits:
        g.add_edge(_node(l1), _node(l2))
        g.add_edge(_node(_negate(l2)), _node(_negate(l1)))
    for u in units:
        g.add_edge(_node(_negate(u)), _node(u))
    return g, lits


def _check(tbox_lits, units, atoms):
    """Return (assignment dict or None, witness cycle, edge count)."""
    g, lits = _graph(tbox_lits, units, atoms)
    comp = {}
    for i, scc in enumerate(nx.strongly_connected_components(g)):
        for v in scc:
            comp[v] = i
    for l in lits:
        x, nx_ = _node(l), _node(_negate(l))
        if comp[x] == comp[nx_]:
            cycle = nx.shortest_path(g, x, nx_) + nx.shortest_path(g, nx_, x)[1:]
            return None, cycle, g.number_of_edges()
    cond = nx.condensation(g, scc=None)
    order = {c: i for i, c in enumerate(nx.topological_sort(cond))}
    mapping = cond.graph["mapping"]
    assignment = {a: order[mapping[a]] > order[mapping["~" + a]] for a in atoms}
    return assignment, None, g.number_of_edges()


def solve_nl_graph(instance, model: bool = True) -> SolveResult:
    sig = signature(instance)
    if sig.quantifiers:
        raise DispatchError("the implication-graph solver handles quantifier-free input only")
    atoms = list(sig.atoms)
    tbox_lits = [(literal(ax.lhs), literal(ax.rhs)) for ax in instance.tbox]
    checks = []   # (label, unit literals)
    inds = list(sig.individuals)
    for a in inds:
        checks.append((a, [literal(c) for c, b in instance.ontology.abox_concepts if b == a]))
    if instance.query is not None:
        checks.append((None, [literal(instance.query)]))
    if not checks:
        checks.append((None, []))
    edges = 0
    rows = []
    for label, units in checks:
        assignment, cycle, e = _check(tbox_lits, units, atoms)
        edges += e
        if assignment is None:
            who = f"individual {label}" if label else "the domain element"
            return SolveResult(UNSAT, "nlgraph", witness={"element": who, "cycle": cycle},
                               stats={"types": len(checks), "rules": edges})
        rows.append((label, assignment))
    m = None
    if model:
        ext = {a: {i for i, (_, asg) in enumerate(rows) if asg[a]} for a in atoms}
        where = {label: i for i, (label, _) in enumerate(rows) if label is not None}
        roles = {}
        for r, a, b in instance.ontology.abox_roles:
            roles.setdefault(r, set()).add((where[a], where[b]))
        m = Interpretation(tuple(range(len(rows))), ext, roles, where)
    return SolveResult(SAT, "nlgraph", model=m, stats={"types": len(checks), "rules": edges})
