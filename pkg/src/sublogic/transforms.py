"""Satisfiability-preserving rewrites between problems, bases and normal forms.

Every transform maps a :class:`ProblemInstance` to a new one and only
introduces names starting with ``_``.  :func:`apply_transform` also returns a
:class:`TransformReport` describing what changed.
"""
from __future__ import annotations

from collections import Counter, deque
from dataclasses import dataclass

from . import boolfun
from .boolfun import (AND, BOT, NOT, TOP, NamedOperator, OperatorSet, TruthTable,
                      as_conjunction, contains_function, witness_term, Var)
from .errors import TransformError
from .syntax import (Apply, Atomic, Axiom, Exists, Forall, FreshNames, Ontology,
                     ProblemInstance, all_names, dual_name, dual_operator,
                     nnf_dualize, subconcepts, transform, unique_subconcepts)

TOP_TABLE = TOP.table
BOT_TABLE = BOT.table


@dataclass(frozen=True)
class TransformReport:
    input_kind: str
    output_kind: str
    fresh_names: tuple
    axioms_added: int
    axioms_removed: int

    def __str__(self):
        return (f"{self.input_kind} -> {self.output_kind}: +{self.axioms_added} "
                f"-{self.axioms_removed} axioms, fresh {', '.join(self.fresh_names) or '-'}")


def report(before: ProblemInstance, after: ProblemInstance) -> TransformReport:
    old, new = Counter(before.tbox), Counter(after.tbox)
    fresh = sorted(all_names(after) - all_names(before))
    return TransformReport(before.kind, after.kind, tuple(fresh),
                           sum((new - old).values()), sum((old - new).values()))


def _fresh(instance):
    return FreshNames(all_names(instance))


def _with_ops(ops, *extra):
    """``ops`` plus any operator in ``extra`` not already present by name."""
    out = list(ops)
    names = {o.name for o in out}
    for o in extra:
        if o is not None and o.name not in names:
            out.append(o)
            names.add(o.name)
    return OperatorSet(tuple(out))


def _used_ops(instance_ops, concepts):
    used = {s.op.name for c in concepts for s in subconcepts(c) if isinstance(s, Apply)}
    return [o for o in instance_ops if o.name in used]


def _find_op(ops, table):
    for o in ops:
        if o.table == table:
            return o
    return None


# ---------------------------------------------------------------------------
# Moving between problem kinds

_LIFT_EDGES = {"csat": ("osat",), "tsat": ("tcsat",), "tcsat": ("osat",),
               "osat": ("ocsat",), "ocsat": ("osat",)}


def _lift_step(inst, target, fresh):
    onto = inst.ontology
    if inst.kind == "csat" and target == "osat":
        a = fresh("a")
        return inst.replace(kind="osat", query=None,
                            ontology=Ontology((), ((inst.query, a),), ()))
    if inst.kind == "tsat" and target == "tcsat":
        return inst.replace(kind="tcsat", query=Atomic(fresh("A")))
    if inst.kind in ("tcsat", "ocsat") and target == "osat":
        a = fresh("a")
        return inst.replace(kind="osat", query=None,
                            ontology=Ontology(onto.tbox, onto.abox_concepts + ((inst.query, a),),
                                              onto.abox_roles))
    if inst.kind == "osat" and target == "ocsat":
        return inst.replace(kind="ocsat", query=Atomic(fresh("A")))
    raise TransformError(f"no direct step from {inst.kind} to {target}")


def lift(instance: ProblemInstance, target: str) -> ProblemInstance:
    """Move an instance up the chain csat -> osat, tsat -> tcsat -> osat <-> ocsat."""
    target = target.lower()
    if target == instance.kind:
        return instance
    prev = {instance.kind: None}
    queue = deque([instance.kind])
    while queue:
        k = queue.popleft()
        for nxt in _LIFT_EDGES.get(k, ()):
            if nxt not in prev:
                prev[nxt] = k
                queue.append(nxt)
    if target not in prev:
        raise TransformError(f"cannot lift {instance.kind} to {target}")
    path = [target]
    while prev[path[-1]] is not None:
        path.append(prev[path[-1]])
    fresh = _fresh(instance)
    out = instance
    for step in reversed(path[:-1]):
        out = _lift_step(out, step, fresh)
    return out


# ---------------------------------------------------------------------------
# Constants via negation


def _instantiate(term, args):
    """Turn a witness term into a concept, substituting ``args`` for variables."""
    if isinstance(term, Var):
        return args[term.index]
    return Apply(term.op, tuple(_instantiate(t, args) for t in term.args))


def _is_constant(op):
    return op.arity == 0 or len(set(op.table.bits)) == 1


def simulate_constants(instance: ProblemInstance) -> ProblemInstance:
    """Replace constant operators by atoms ``_top``/``_bot`` pinned by negation."""
    consts = [o for o in instance.operators if _is_constant(o)]
    occurring = {s.op.name for c in instance.concepts() for s in subconcepts(c)
                 if isinstance(s, Apply) and _is_constant(s.op)}
    if not occurring:
        return instance
    rest = [o for o in instance.operators if not _is_constant(o)]
    if not rest or not contains_function(rest, NOT.table):
        raise TransformError("negation is not expressible without constants")
    neg = witness_term(rest, NOT.table)
    fresh = _fresh(instance)
    top, bot = Atomic(fresh("top")), Atomic(fresh("bot"))
    negate = lambda c: _instantiate(neg, [c])  # noqa: E731

    def repl(c):
        if isinstance(c, Apply) and c.op in consts:
            return top if c.op.table.bits[0] else bot
        return c

    sub = lambda c: transform(c, repl)  # noqa: E731
    onto = instance.ontology
    tbox = [Axiom(sub(a.lhs), sub(a.rhs)) for a in onto.tbox]
    tbox += [Axiom(negate(top), top), Axiom(bot, negate(bot))]
    new = Ontology(tuple(tbox), tuple((sub(c), a) for c, a in onto.abox_concepts),
                   onto.abox_roles)
    query = sub(instance.query) if instance.query is not None else None
    return instance.replace(operators=OperatorSet(tuple(rest)), ontology=new, query=query)


# ---------------------------------------------------------------------------
# Concept satisfiability to TBox satisfiability


def _top_concept(instance, fresh, seed):
    """A concept denoting the whole domain, and the operator set to use."""
    ops = instance.operators
    declared = _find_op(ops, TOP_TABLE)
    if declared is not None:
        return Apply(declared, ()), ops
    unary_top = TruthTable(1, (1, 1))
    if len(ops) and contains_function(ops, unary_top):
        return _instantiate(witness_term(ops, unary_top), [seed]), ops
    extra = NamedOperator(fresh("top"), TOP_TABLE)
    return Apply(extra, ()), _with_ops(ops, extra)


def tcsat_to_tsat(instance: ProblemInstance) -> ProblemInstance:
    """``(T, C)`` becomes ``T`` plus ``top <= some _R C`` for a fresh role."""
    if instance.kind != "tcsat":
        raise TransformError("tcsat_to_tsat needs a tcsat instance")
    fresh = _fresh(instance)
    top, ops = _top_concept(instance, fresh, instance.query)
    role = fresh("R")
    tbox = instance.tbox + (Axiom(top, Exists(role, instance.query)),)
    return ProblemInstance("tsat", ops, Ontology(tbox), None)


# ---------------------------------------------------------------------------
# Relativizing top


def lewis_relativize(instance: ProblemInstance, close_forall: bool = True) -> ProblemInstance:
    """Trade the constant ``top`` for a fresh atom ``_T`` used as the query.

    Every subconcept ``C`` contributes ``C <= _T``.  With ``close_forall`` the
    atom is also closed under every universally quantified role, which keeps
    the ``_T`` part of a model closed under successors.
    """
    if instance.kind != "tsat":
        raise TransformError("lewis_relativize needs a tsat instance")
    fresh = _fresh(instance)
    T = Atomic(fresh("T"))
    tops = {o for o in instance.operators if o.arity == 0 and o.table == TOP_TABLE}

    def repl(c):
        return T if isinstance(c, Apply) and c.op in tops else c

    rel = lambda c: transform(c, repl)  # noqa: E731
    tbox = [Axiom(rel(a.lhs), rel(a.rhs)) for a in instance.tbox]
    sides = [c for a in instance.tbox for c in (a.lhs, a.rhs)]
    subs = unique_subconcepts(sides)
    tbox += [Axiom(rel(c), T) for c in subs]
    if close_forall:
        roles = sorted({s.role for s in subs if isinstance(s, Forall)})
        tbox += [Axiom(T, Forall(r, T)) for r in roles]
    ops = OperatorSet(tuple(o for o in instance.operators if o not in tops))
    return ProblemInstance("tcsat", ops, Ontology(tuple(dict.fromkeys(tbox))), T)


# ---------------------------------------------------------------------------
# Contraposition


def dualize(instance: ProblemInstance, mode: str = "tsat",
            add_missing: bool = False) -> ProblemInstance:
    """Contrapose every axiom over the dual operators.

    In ``tcsat`` mode the query is pinned to an atom ``q`` and the output adds
    ``q and _d_q <= bot``, which needs conjunction and bottom in the dual
    base.  ``add_missing`` declares them when absent instead of failing.
    """
    if mode not in ("tsat", "tcsat"):
        raise ValueError("mode must be 'tsat' or 'tcsat'")
    if instance.kind != mode:
        raise TransformError(f"dualize in {mode} mode needs a {mode} instance")
    ops = instance.operators
    fresh = _fresh(instance)
    tbox = list(instance.tbox)
    query = instance.query
    if mode == "tcsat" and not isinstance(query, Atomic):
        q = Atomic(fresh("q"))
        tbox.append(Axiom(q, query))
        query = q

    mapping = {o.name: dual_operator(o, ops) for o in ops}
    dual_ops = list(dict.fromkeys(mapping.values()))
    flip = lambda c: nnf_dualize(c, dual_ops)  # noqa: E731
    new_tbox = [Axiom(flip(a.rhs), flip(a.lhs)) for a in tbox]
    used = _used_ops(dual_ops, [c for a in new_tbox for c in (a.lhs, a.rhs)])
    if mode == "tsat":
        return ProblemInstance("tsat", OperatorSet(tuple(used)), Ontology(tuple(new_tbox)))

    pool = list(dual_ops) + list(ops)
    conj, bot = _find_op(pool, AND.table), _find_op(pool, BOT_TABLE)
    if conj is None or bot is None:
        if not add_missing:
            raise TransformError("tcsat dualization needs conjunction and bottom")
        conj = conj or NamedOperator(fresh("and"), AND.table)
        bot = bot or NamedOperator(fresh("bot"), BOT_TABLE)
    new_tbox.append(Axiom(Apply(conj, (query, Atomic(dual_name(query.name)))), Apply(bot, ())))
    out_ops = _with_ops(used, conj, bot)
    return ProblemInstance("tcsat", out_ops, Ontology(tuple(new_tbox)), query)


# ---------------------------------------------------------------------------
# Change of base


def change_base(instance: ProblemInstance, B2) -> ProblemInstance:
    """Compile every concept into gate atoms defined over the operators ``B2``."""
    B2 = B2 if isinstance(B2, OperatorSet) else OperatorSet(tuple(B2))
    src = list(instance.operators)
    if not all(contains_function(B2, o.table) for o in src):
        raise TransformError("the source operators are not all expressible in the target base")
    if src and not all(contains_function(src, o.table) for o in B2):
        raise TransformError("the target base generates a larger clone than the source")
    if not src and any(not boolfun.CLONES["I2"].contains_table(o.table) for o in B2):
        raise TransformError("the target base generates a larger clone than the source")
    names = all_names(instance) | {o.name for o in B2}
    fresh = FreshNames(names)
    terms = {}
    gates = {}
    tbox = []

    def gate(c):
        if isinstance(c, Atomic):
            return c
        if c in gates:
            return gates[c]
        g = Atomic(fresh("g"))
        gates[c] = g
        if isinstance(c, Apply):
            if c.op.name not in terms:
                terms[c.op.name] = witness_term(B2, c.op.table)
            args = [gate(k) for k in c.children] or [g]
            body = _instantiate(terms[c.op.name], args)
        elif isinstance(c, Exists):
            body = Exists(c.role, gate(c.child))
        else:
            body = Forall(c.role, gate(c.child))
        tbox.extend([Axiom(g, body), Axiom(body, g)])
        return g

    onto = instance.ontology
    main = [Axiom(gate(a.lhs), gate(a.rhs)) for a in onto.tbox]
    abox = tuple((gate(c), a) for c, a in onto.abox_concepts)
    query = gate(instance.query) if instance.query is not None else None
    return ProblemInstance(instance.kind, B2, Ontology(tuple(main + tbox), abox, onto.abox_roles),
                           query)


# ---------------------------------------------------------------------------
# Normal forms for the conjunctive fragment


class _ConjBase:
    """Binary conjunction and constants drawn from ``ops`` or freshly named."""

    def __init__(self, ops, fresh):
        self.ops = list(ops)
        self.fresh = fresh
        self.used = {}

    def _get(self, key, table):
        if key not in self.used:
            o = _find_op(self.ops, table) if table.arity == 2 else next(
                (o for o in self.ops if o.arity == 0 and o.table == table), None)
            self.used[key] = o or NamedOperator(self.fresh(key), table)
        return self.used[key]

    def conj(self, a, b):
        return Apply(self._get("and", AND.table), (a, b))

    def top(self):
        return Apply(self._get("top", TOP_TABLE), ())

    def bot(self):
        return Apply(self._get("bot", BOT_TABLE), ())

    def is_conj(self, c):
        return isinstance(c, Apply) and c.op.arity == 2 and c.op.table == AND.table

    def is_const(self, c):
        return isinstance(c, Apply) and c.op.arity == 0

    def operators(self):
        return OperatorSet(tuple(self.used.values()))


def canonicalize_conjunctive(instance: ProblemInstance, fresh=None):
    """Rewrite every conjunctive-clone operator as nested binary ``and`` and
    nullary constants.  Returns the new instance and the helper base."""
    fresh = fresh or _fresh(instance)
    base = _ConjBase(instance.operators, fresh)

    def repl(c):
        if not isinstance(c, Apply):
            return c
        shape = as_conjunction(c.op.table)
        if shape is None:
            raise TransformError(f"operator {c.op.name} is not a conjunction or constant")
        if shape == "top":
            return base.top()
        if shape == "bot":
            return base.bot()
        kids = [c.children[j] for j in shape]
        out = kids[0]
        for k in kids[1:]:
            out = base.conj(out, k)
        return out

    onto = instance.ontology
    sub = lambda c: transform(c, repl)  # noqa: E731
    new = Ontology(tuple(Axiom(sub(a.lhs), sub(a.rhs)) for a in onto.tbox),
                   tuple((sub(c), a) for c, a in onto.abox_concepts), onto.abox_roles)
    query = sub(instance.query) if instance.query is not None else None
    # the helper operators are known only after rewriting
    out = ProblemInstance(instance.kind, _with_ops([], *base.used.values()), new, query)
    return out, base


def _simple(c, base):
    return isinstance(c, Atomic) or base.is_const(c)


def is_normal_axiom(ax: Axiom) -> bool:
    """Whether ``ax`` has one of the shapes A<=B, A and B<=C, QR.A<=B, A<=QR.B."""
    simple = lambda c: isinstance(c, Atomic) or (isinstance(c, Apply) and c.op.arity == 0)  # noqa
    l, r = ax.lhs, ax.rhs
    if simple(l) and simple(r):
        return True
    if (isinstance(l, Apply) and l.op.table == AND.table and all(simple(k) for k in l.children)
            and simple(r)):
        return True
    if isinstance(l, (Exists, Forall)) and simple(l.child) and simple(r):
        return True
    if simple(l) and isinstance(r, (Exists, Forall)) and simple(r.child):
        return True
    return False


def normalize_nf(instance: ProblemInstance) -> ProblemInstance:
    """Bring the TBox into the four normal-form shapes with fresh atoms.

    Applies to TBoxes built from conjunction, constants, atoms and both
    quantifiers.  Each complex subconcept that needs a name gets one atom
    defined by two inclusions.
    """
    fresh = _fresh(instance)
    inst, base = canonicalize_conjunctive(instance, fresh)
    names = {}
    out = []
    todo = deque(inst.tbox)

    def name_of(c):
        if _simple(c, base):
            return c
        if c not in names:
            x = Atomic(fresh("X"))
            names[c] = x
            todo.append(Axiom(x, c))
            todo.append(Axiom(c, x))
        return names[c]

    def conjuncts(c):
        if base.is_conj(c):
            return conjuncts(c.children[0]) + conjuncts(c.children[1])
        return [c]

    while todo:
        ax = todo.popleft()
        l, r = ax.lhs, ax.rhs
        if base.is_conj(r):
            todo.extend(Axiom(l, k) for k in conjuncts(r))
            continue
        if not _simple(l, base) and not _simple(r, base):
            y = Atomic(fresh("Y"))
            todo.extend([Axiom(l, y), Axiom(y, r)])
            continue
        if isinstance(r, (Exists, Forall)):
            out.append(Axiom(l, type(r)(r.role, name_of(r.child))))
            continue
        if isinstance(l, (Exists, Forall)):
            out.append(Axiom(type(l)(l.role, name_of(l.child)), r))
            continue
        if base.is_conj(l):
            parts = [name_of(k) for k in conjuncts(l)]
            acc = parts[0]
            for k in parts[1:-1]:
                y = Atomic(fresh("Y"))
                out.append(Axiom(base.conj(acc, k), y))
                acc = y
            out.append(Axiom(base.conj(acc, parts[-1]), r))
            continue
        out.append(ax)
    ops = _with_ops([], *base.used.values())
    return ProblemInstance(inst.kind, ops, Ontology(tuple(dict.fromkeys(out)),
                                                    inst.ontology.abox_concepts,
                                                    inst.ontology.abox_roles), inst.query)


def eliminate_conjunction_nf7(instance: ProblemInstance) -> ProblemInstance:
    """Replace each ``A and B <= C`` by a fresh role and primed atom.

    ``A <= some R Z``, ``B <= all R A'``, ``some R A' <= C``.  ``Z`` is the
    declared top when present, otherwise a fresh atom.
    """
    if not all(is_normal_axiom(a) for a in instance.tbox):
        raise TransformError("input TBox is not in normal form")
    fresh = _fresh(instance)
    top_op = next((o for o in instance.operators if o.arity == 0 and o.table == TOP_TABLE), None)
    out = []
    for ax in instance.tbox:
        l = ax.lhs
        if isinstance(l, Apply) and l.op.table == AND.table and l.op.arity == 2:
            a, b = l.children
            role = fresh("R")
            primed = Atomic(fresh("P"))
            succ = Apply(top_op, ()) if top_op is not None else Atomic(fresh("Z"))
            out += [Axiom(a, Exists(role, succ)), Axiom(b, Forall(role, primed)),
                    Axiom(Exists(role, primed), ax.rhs)]
        else:
            out.append(ax)
    concepts = [c for a in out for c in (a.lhs, a.rhs)] + list(instance.concepts())
    ops = OperatorSet(tuple(_used_ops(instance.operators, concepts)))
    return instance.replace(operators=ops, ontology=Ontology(
        tuple(out), instance.ontology.abox_concepts, instance.ontology.abox_roles))


# ---------------------------------------------------------------------------
# Registry

TRANSFORMS = {
    "lift": lift,
    "simulate-constants": simulate_constants,
    "tcsat-to-tsat": tcsat_to_tsat,
    "lewis": lewis_relativize,
    "dualize": dualize,
    "change-base": change_base,
    "normalize": normalize_nf,
    "nf7": eliminate_conjunction_nf7,
}


def apply_transform(instance, name, *args, **kwargs):
    """Run a registered transform and report the difference."""
    if name not in TRANSFORMS:
        raise TransformError(f"unknown transform {name!r}")
    out = TRANSFORMS[name](instance, *args, **kwargs)
    return out, report(instance, out)


def pipeline(instance, steps):
    """Apply ``steps``, a list of names or ``(name, kwargs)`` pairs, in order."""
    reports = []
    for step in steps:
        name, kwargs = (step, {}) if isinstance(step, str) else step
        instance, rep = apply_transform(instance, name, **kwargs)
        reports.append(rep)
    return instance, reports
