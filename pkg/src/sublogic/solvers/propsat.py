"""Propositional encoding for quantifier-free instances over any operators.

Without quantifiers nothing forces more elements than the individuals plus
one for the query, and elements never interact.  Element ``i`` gets its own
copy ``p_i(A)`` of every atom; each operator node becomes a gate variable
with one clause per truth-table row.  The clauses go to a small DPLL
(unit propagation, chronological backtracking).
"""
from __future__ import annotations

from ..errors import DispatchError
from ..syntax import Apply, Atomic, Interpretation, signature
from .result import SAT, UNSAT, SolveResult


class Encoder:
    def __init__(self):
        self.clauses = []
        self.nvars = 0
        self.memo = {}

    def new(self):
        self.nvars += 1
        return self.nvars

    def var(self, i, c):
        """Variable true iff element ``i`` is in concept ``c``."""
        k = (i, c)
        if k in self.memo:
            return self.memo[k]
        if isinstance(c, Atomic):
            v = self.new()
        elif isinstance(c, Apply):
            kids = [self.var(i, ch) for ch in c.children]
            v = self.new()
            n = len(kids)
            for row, bit in enumerate(c.op.table.bits):
                clause = [-kid if (row >> (n - 1 - j)) & 1 else kid
                          for j, kid in enumerate(kids)]
                clause.append(v if bit else -v)
                self.clauses.append(clause)
        else:
            raise DispatchError("quantifiers have no propositional encoding")
        self.memo[k] = v
        return v


def dpll(clauses, nvars):
    """Return ``(assignment list or None, decisions)``; index 0 is unused."""
    value = [0] * (nvars + 1)
    trail = []
    decisions = 0

    def propagate():
        changed = True
        while changed:
            changed = False
            for cl in clauses:
                free = None
                count = 0
                for lit in cl:
                    v = value[abs(lit)]
                    if v == 0:
                        free = lit
                        count += 1
                    elif (v > 0) == (lit > 0):
                        break
                else:
                    if count == 0:
                        return False
                    if count == 1:
                        value[abs(free)] = 1 if free > 0 else -1
                        trail.append(abs(free))
                        changed = True
        return True

    def undo(mark):
        while len(trail) > mark:
            value[trail.pop()] = 0

    stack = []    # (variable, second branch tried, trail mark)
    while True:
        if propagate():
            v = next((x for x in range(1, nvars + 1) if value[x] == 0), None)
            if v is None:
                return value, decisions
            decisions += 1
            stack.append((v, False, len(trail)))
            value[v] = 1
            trail.append(v)
            continue
        while stack:
            v, flipped, mark = stack.pop()
            undo(mark)
            if not flipped:
                stack.append((v, True, mark))
                value[v] = -1
                trail.append(v)
                break
        else:
            return None, decisions


def solve_prop_sat(instance, model: bool = True) -> SolveResult:
    sig = signature(instance)
    if sig.quantifiers:
        raise DispatchError("the propositional encoding needs a quantifier-free instance")
    inds = list(sig.individuals)
    elements = len(inds) + 1          # element 0 hosts the query
    enc = Encoder()
    onto = instance.ontology
    for i in range(elements):
        for ax in onto.tbox:
            enc.clauses.append([-enc.var(i, ax.lhs), enc.var(i, ax.rhs)])
    for c, a in onto.abox_concepts:
        enc.clauses.append([enc.var(inds.index(a) + 1, c)])
    if instance.query is not None:
        enc.clauses.append([enc.var(0, instance.query)])
    for i in range(elements):
        for a in sig.atoms:
            enc.var(i, Atomic(a))
    value, decisions = dpll(enc.clauses, enc.nvars)
    stats = {"types": enc.nvars, "rules": len(enc.clauses), "decisions": decisions}
    if value is None:
        return SolveResult(UNSAT, "propsat", witness="the clause set is unsatisfiable",
                           stats=stats)
    m = None
    if model:
        ext = {a: {i for i in range(elements) if value[enc.memo[(i, Atomic(a))]] > 0}
               for a in sig.atoms}
        roles = {r: {(inds.index(a) + 1, inds.index(b) + 1)
                     for rr, a, b in onto.abox_roles if rr == r} for r in sig.roles}
        m = Interpretation(tuple(range(elements)), ext, roles,
                           {a: i + 1 for i, a in enumerate(inds)})
    return SolveResult(SAT, "propsat", model=m, stats=stats)
