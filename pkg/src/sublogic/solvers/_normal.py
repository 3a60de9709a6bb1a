"""Normal-form axioms as plain tuples, shared by the saturation solvers."""
from __future__ import annotations

from ..boolfun import AND, BOT, TOP
from ..errors import DispatchError
from ..syntax import Apply, Atomic, Exists, Forall
from ..transforms import is_normal_axiom

TOPK, BOTK = "#top", "#bot"


def key(c):
    if isinstance(c, Atomic):
        return c.name
    if isinstance(c, Apply) and c.op.arity == 0:
        if c.op.table == TOP.table:
            return TOPK
        if c.op.table == BOT.table:
            return BOTK
    raise DispatchError(f"{c} is not an atom or constant")


def show(k):
    return {TOPK: "top", BOTK: "bot"}.get(k, k)


def axiom_tuples(tbox):
    """Classify normalized axioms.

    Shapes: ``("sub", a, b)``, ``("conj", a, b, c)``, ``("rhs-some", a, r, b)``,
    ``("lhs-some", r, a, b)``, ``("rhs-all", a, r, b)``, ``("lhs-all", r, a, b)``.
    """
    out = []
    for ax in tbox:
        if not is_normal_axiom(ax):
            raise DispatchError(f"axiom {ax} is not in normal form")
        l, r = ax.lhs, ax.rhs
        if isinstance(r, Exists):
            out.append(("rhs-some", key(l), r.role, key(r.child)))
        elif isinstance(r, Forall):
            out.append(("rhs-all", key(l), r.role, key(r.child)))
        elif isinstance(l, Exists):
            out.append(("lhs-some", l.role, key(l.child), key(r)))
        elif isinstance(l, Forall):
            out.append(("lhs-all", l.role, key(l.child), key(r)))
        elif isinstance(l, Apply) and l.op.arity == 2 and l.op.table == AND.table:
            a, b = l.children
            out.append(("conj", key(a), key(b), key(r)))
        else:
            out.append(("sub", key(l), key(r)))
    return out


class Derivations:
    """Membership facts with the rule and premises that produced them."""

    def __init__(self):
        self.why = {}

    def note(self, fact, rule, premises=()):
        self.why.setdefault(fact, (rule, tuple(premises)))

    def trace(self, fact, fmt):
        """Premises first, then the fact itself, each fact once."""
        seen, lines = set(), []

        def go(f):
            if f in seen:
                return
            seen.add(f)
            rule, prem = self.why.get(f, ("init", ()))
            for p in prem:
                go(p)
            lines.append(f"{rule}: {fmt(f)}")

        go(fact)
        return lines
