"""Polynomial saturation for TBoxes over conjunction, constants and ``forall``.

After normalization every axiom is ``A <= B``, ``A and B <= C``,
``A <= all r.B`` or ``all r.A <= B``.  A *state* is the set of atoms an
element is required to carry; ``val(S)`` is its least closure:

* IS1  ``A`` in val, ``A <= B``            gives ``B``
* IS2  ``A, B`` in val, ``A and B <= C``   gives ``C``
* IS3  for ``all r.A <= B``: the cheapest r-successor of the state must
  carry ``Y = {top} + {D : C in val, C <= all r.D}``.  If ``val(Y)``
  contains ``A`` or bottom, no successor can escape ``A`` and ``B`` follows.

The TBox is unsatisfiable iff bottom lands in ``val({top})``.  Every
requirement is monotone, so the least fixpoint over all states reachable
this way is also a model: one element per state, one r-successor per role.
"""
from __future__ import annotations

from ..errors import DispatchError, TransformError
from ..syntax import EXISTS, Interpretation, signature
from ..transforms import normalize_nf
from ._normal import BOTK, TOPK, Derivations, axiom_tuples, show
from .result import SAT, UNSAT, SolveResult


def _fmt_state(s):
    return "{" + ", ".join(sorted(show(k) for k in s)) + "}"


class _Saturation:
    def __init__(self, axioms):
        self.sub = [a[1:] for a in axioms if a[0] == "sub"]
        self.conj = [a[1:] for a in axioms if a[0] == "conj"]
        self.rhs_all = [a[1:] for a in axioms if a[0] == "rhs-all"]
        self.lhs_all = [a[1:] for a in axioms if a[0] == "lhs-all"]
        self.roles = sorted({r for r, _, _ in self.lhs_all})
        self.states = {}     # seed -> val (dict used as an ordered set)
        self.log = Derivations()
        self.fired = 0

    def state(self, seed):
        if seed not in self.states:
            self.states[seed] = dict.fromkeys(sorted(seed | {TOPK}))
            return True
        return False

    def _add(self, seed, atom, rule, premises):
        val = self.states[seed]
        if atom in val:
            return False
        val[atom] = None
        self.fired += 1
        self.log.note((seed, atom), rule, premises)
        return True

    def successor(self, seed, role):
        val = self.states[seed]
        return frozenset({TOPK} | {d for a, r, d in self.rhs_all if r == role and a in val})

    def run(self):
        changed = True
        while changed:
            changed = False
            for seed in list(self.states):
                val = self.states[seed]
                local = True
                while local:
                    local = False
                    for a, b in self.sub:
                        if a in val and self._add(seed, b, "IS1", [(seed, a)]):
                            local = True
                    for a, b, c in self.conj:
                        if a in val and b in val and self._add(seed, c, "IS2",
                                                               [(seed, a), (seed, b)]):
                            local = True
                    for role in self.roles:
                        y = self.successor(seed, role)
                        if self.state(y):
                            changed = True
                        yval = self.states[y]
                        for r, a, b in self.lhs_all:
                            if r != role or b in val:
                                continue
                            hit = BOTK if BOTK in yval else (a if a in yval else None)
                            if hit is not None:
                                if self._add(seed, b, "IS3", [(y, hit)]):
                                    local = True
                    changed |= local


def _model(sat, root, atoms, roles):
    order = [root]
    pos = {root: 0}
    edges = {r: set() for r in roles}
    k = 0
    while k < len(order):
        s = order[k]
        for role in sat.roles:
            y = sat.successor(s, role)
            if BOTK in sat.states[y]:
                continue
            if y not in pos:
                pos[y] = len(order)
                order.append(y)
            edges[role].add((pos[s], pos[y]))
        k += 1
    ext = {a: {pos[s] for s in order if a in sat.states[s]} for a in atoms}
    return Interpretation(tuple(range(len(order))), ext, edges, {})


def solve_saturation_forall(instance, model: bool = True) -> SolveResult:
    sig = signature(instance)
    if instance.kind != "tsat":
        raise DispatchError("forall-saturation decides TBox satisfiability only")
    if EXISTS in sig.quantifiers:
        raise DispatchError("forall-saturation does not handle existential restrictions")
    try:
        normal = normalize_nf(instance)
    except TransformError as exc:
        raise DispatchError(str(exc)) from exc
    sat = _Saturation(axiom_tuples(normal.tbox))
    root = frozenset({TOPK})
    sat.state(root)
    sat.run()
    stats = {"types": len(sat.states), "rules": sat.fired}
    if BOTK in sat.states[root]:
        fmt = lambda f: f"{show(f[1])} in val({_fmt_state(f[0])})"  # noqa: E731
        return SolveResult(UNSAT, "saturation", witness=sat.log.trace((root, BOTK), fmt),
                           stats=stats)
    m = _model(sat, root, sig.atoms, sig.roles) if model else None
    return SolveResult(SAT, "saturation", model=m, stats=stats)
