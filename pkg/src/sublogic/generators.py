"""Instance generators: hardness constructions and random fragments.

The three constructions come with a direct combinatorial answer
(:func:`reachable`, :func:`hyper_closure`, :func:`one_in_three_sat`) so the
generated corpus is ground-truthed.  Random instances are reproducible from
their seed.

Random graphs use a fixed out-degree model: every node draws ``degree``
successors uniformly with replacement (self-loops and duplicates dropped).
Random hypergraphs draw ``edges`` hyperedges, each with one or two sources
chosen uniformly and a uniform destination.
"""
from __future__ import annotations

import random
import re
from collections import deque
from dataclasses import dataclass
from itertools import product

from . import boolfun
from .boolfun import AND, BOT, TOP, XOR, NamedOperator, OperatorSet, TruthTable
from .errors import ProfileError
from .syntax import (EXISTS, FORALL, Apply, Atomic, Axiom, Exists, Forall, Ontology,
                     ProblemInstance, unique_subconcepts)

_IDENT = re.compile(r"[A-Za-z0-9]+\Z")


@dataclass(frozen=True)
class Digraph:
    nodes: tuple
    edges: tuple          # (u, v) pairs


@dataclass(frozen=True)
class Hypergraph:
    nodes: tuple
    edges: tuple          # (frozenset of 1 or 2 sources, destination)

    def __post_init__(self):
        for src, _ in self.edges:
            if not src or len(src) > 2:
                raise ValueError("hyperedges need one or two source nodes")


def _atom(node):
    if not _IDENT.match(str(node)):
        raise ValueError(f"node {node!r} cannot be used in a concept name")
    return Atomic(f"A_{node}")


def _conj(parts, op=AND):
    out = parts[0]
    for p in parts[1:]:
        out = Apply(op, (out, p))
    return out


def _tsat(ops, axioms):
    return ProblemInstance("tsat", OperatorSet(ops), Ontology(tuple(axioms)))


# ---------------------------------------------------------------------------
# Hardness constructions

def gen_gap(g: Digraph, s, t) -> ProblemInstance:
    """Unsatisfiable iff ``t`` is reachable from ``s``."""
    if s not in g.nodes or t not in g.nodes:
        raise ValueError("s and t must be nodes of the graph")
    top, bot = Apply(TOP, ()), Apply(BOT, ())
    axioms = [Axiom(_atom(u), _atom(v)) for u, v in g.edges]
    axioms += [Axiom(top, _atom(s)), Axiom(_atom(t), bot)]
    return _tsat((TOP, BOT), axioms)


def gen_hgap(h: Hypergraph, S, t) -> ProblemInstance:
    """Unsatisfiable iff ``t`` is hyper-reachable from the sources ``S``."""
    S = sorted(S, key=str)
    if not S or any(s not in h.nodes for s in S) or t not in h.nodes:
        raise ValueError("S must be a nonempty set of nodes and t a node")
    top, bot = Apply(TOP, ()), Apply(BOT, ())
    marker = Atomic(f"A_{t}'")
    axioms = [Axiom(_conj([_atom(u) for u in sorted(src, key=str)]), _atom(v))
              for src, v in h.edges]
    axioms.append(Axiom(top, _conj([_atom(s) for s in S] + [marker])))
    axioms.append(Axiom(Apply(AND, (_atom(t), marker)), bot))
    return _tsat((AND, TOP, BOT), axioms)


def _literal(lit):
    """``(variable, negated)`` from ``3``/``-3`` or ``"x"``/``"-x"``/``"~x"``."""
    if isinstance(lit, int):
        if lit == 0:
            raise ValueError("0 is not a literal")
        return str(abs(lit)), lit < 0
    lit = str(lit)
    if lit[:1] in "-~":
        return lit[1:], True
    return lit, False


def gen_one_in_three(clauses) -> ProblemInstance:
    """Satisfiable iff some assignment makes exactly one literal per clause true.

    Emitted over binary ``xor`` and ``top``; longer sums are left-nested.
    """
    clauses = [tuple(c) for c in clauses]
    if not clauses or any(len(c) != 3 for c in clauses):
        raise ValueError("expected a nonempty list of 3-literal clauses")
    top = Apply(TOP, ())

    def xor(*parts):
        return _conj(list(parts), XOR)

    def f(lit):
        v, neg = _literal(lit)
        return Atomic(f"A_{v}'" if neg else f"A_{v}")

    axioms = []
    for i, (x, y, z) in enumerate(clauses, 1):
        fx, fy, fz = f(x), f(y), f(z)
        s = Atomic(f"S{i}")
        s1, s2, s3 = (Atomic(f"S{i}_{j}") for j in (1, 2, 3))
        axioms += [Axiom(top, xor(fx, fy, fz, s, top)),
                   Axiom(top, xor(fx, fy, fz)),
                   Axiom(s1, xor(fx, fy)),
                   Axiom(s2, xor(fx, fz)),
                   Axiom(s3, xor(fy, fz)),
                   Axiom(s, xor(s1, s2, s3))]
    for v in dict.fromkeys(_literal(lit)[0] for c in clauses for lit in c):
        axioms.append(Axiom(top, xor(Atomic(f"A_{v}"), Atomic(f"A_{v}'"))))
    return _tsat((XOR, TOP), axioms)


# ---------------------------------------------------------------------------
# Direct answers

def reachable(g: Digraph, s, t) -> bool:
    succ = {}
    for u, v in g.edges:
        succ.setdefault(u, []).append(v)
    seen, todo = {s}, deque([s])
    while todo:
        u = todo.popleft()
        for v in succ.get(u, ()):
            if v not in seen:
                seen.add(v)
                todo.append(v)
    return t in seen


def hyper_closure(h: Hypergraph, S) -> set:
    """Nodes derivable from ``S`` by firing hyperedges."""
    closed = set(S)
    changed = True
    while changed:
        changed = False
        for src, v in h.edges:
            if v not in closed and src <= closed:
                closed.add(v)
                changed = True
    return closed


def one_in_three_sat(clauses) -> bool:
    lits = [[_literal(x) for x in c] for c in clauses]
    names = sorted({v for c in lits for v, _ in c})
    for values in product((False, True), repeat=len(names)):
        val = dict(zip(names, values))
        if all(sum(val[v] != neg for v, neg in c) == 1 for c in lits):
            return True
    return False


# ---------------------------------------------------------------------------
# Random structures

def random_digraph(rng: random.Random, nodes: int, degree: int = 2) -> Digraph:
    edges = set()
    for u in range(nodes):
        for _ in range(degree):
            v = rng.randrange(nodes)
            if v != u:
                edges.add((u, v))
    return Digraph(tuple(range(nodes)), tuple(sorted(edges)))


def random_hypergraph(rng: random.Random, nodes: int, edges: int) -> Hypergraph:
    out = set()
    for _ in range(edges):
        src = frozenset(rng.sample(range(nodes), rng.choice((1, 2))))
        out.add((src, rng.randrange(nodes)))
    return Hypergraph(tuple(range(nodes)), tuple(sorted(out, key=lambda e: (sorted(e[0]), e[1]))))


def random_clauses(rng: random.Random, variables: int, clauses: int):
    out = []
    for _ in range(clauses):
        out.append(tuple(rng.choice((1, -1)) * rng.randint(1, variables) for _ in range(3)))
    return out


# ---------------------------------------------------------------------------
# Random instances

@dataclass(frozen=True)
class Profile:
    kind: str
    quantifiers: frozenset
    clone: str            # a named clone, or "*" for random operator tables

    def __str__(self):
        q = {frozenset(): "none", frozenset({EXISTS}): "exists",
             frozenset({FORALL}): "forall"}.get(self.quantifiers, "both")
        return f"{self.kind}/{q}/{self.clone}"


_Q = {"none": frozenset(), "exists": frozenset({EXISTS}), "forall": frozenset({FORALL}),
      "both": frozenset({EXISTS, FORALL})}

# Families used by the cross-validation suite.
FAMILIES = {
    "qf-any": "ocsat/none/*",
    "qf-n": "ocsat/none/N",
    "forall-e": "tsat/forall/E",
    "exists-e": "ocsat/exists/E",
    "forall-v": "ocsat/forall/V",
}


def parse_profile(profile) -> Profile:
    if isinstance(profile, Profile):
        return profile
    if isinstance(profile, tuple):
        kind, q, clone = profile
    else:
        text = FAMILIES.get(profile, profile)
        parts = str(text).split("/")
        if len(parts) != 3:
            raise ProfileError(f"unknown profile {profile!r}")
        kind, q, clone = parts
    if not isinstance(q, str):
        q = next((k for k, v in _Q.items() if v == frozenset(q)), "")
    kind, q = kind.lower(), q.lower()
    if kind not in ("tsat", "tcsat", "osat", "ocsat", "csat"):
        raise ProfileError(f"unknown problem kind {kind!r} in profile")
    if q not in _Q:
        raise ProfileError(f"unknown quantifier set {q!r} in profile")
    if clone != "*" and clone not in boolfun.CLONES:
        raise ProfileError(f"unknown clone {clone!r} in profile")
    return Profile(kind, _Q[q], clone)


def _random_operators(rng, clone):
    if clone == "*":
        ops = []
        for k in range(rng.randint(1, 3)):
            arity = rng.choice((1, 2, 2, 3))
            bits = tuple(rng.randint(0, 1) for _ in range(1 << arity))
            ops.append(NamedOperator(f"f{k}", TruthTable(arity, bits)))
        return ops
    ops = list(boolfun.CLONES[clone].base)
    if rng.random() < 0.3:
        arity = rng.choice((2, 3))
        masks = [m for m in boolfun.CLONES[clone].slice_masks(arity)
                 if TruthTable.from_mask(arity, m) not in {o.table for o in ops}
                 and not boolfun.as_literal(TruthTable.from_mask(arity, m))]
        if masks:
            ops.append(NamedOperator("g", TruthTable.from_mask(arity, rng.choice(masks))))
    return ops


class _ConceptMaker:
    def __init__(self, rng, ops, quantifiers, atoms, roles):
        self.rng = rng
        self.ops = ops
        self.q = sorted(quantifiers)
        self.atoms = atoms
        self.roles = roles

    def side(self, depth, value):
        """An axiom side, sometimes the constant ``value`` (top left, bottom right)."""
        const = [o for o in self.ops if o.arity == 0 and o.table.bits[0] == value]
        if const and self.rng.random() < 0.25:
            return Apply(const[0], ())
        return self.make(depth)

    def make(self, depth):
        rng = self.rng
        leaf = [o for o in self.ops if o.arity == 0]
        inner = [o for o in self.ops if o.arity > 0]
        if depth <= 0 or rng.random() < 0.3:
            if leaf and rng.random() < 0.2:
                return Apply(rng.choice(leaf), ())
            return Atomic(rng.choice(self.atoms))
        choices = inner + (["q"] * max(1, len(inner)) if self.q else [])
        if not choices:
            return self.make(0)
        pick = rng.choice(choices)
        if pick == "q":
            cls = Exists if rng.choice(self.q) == EXISTS else Forall
            return cls(rng.choice(self.roles), self.make(depth - 1))
        return Apply(pick, tuple(self.make(depth - 1) for _ in range(pick.arity)))


def random_instance(rng: random.Random, kind: str, quantifiers, operators, *,
                    atoms: int = 4, roles: int = 2, axioms: int = 5, individuals: int = 2,
                    depth: int = 2, max_closure: int = 14, tries: int = 200):
    """One instance with exactly the given operator list declared."""
    quantifiers = frozenset(quantifiers)
    ops = list(operators)
    atom_names = [chr(ord("A") + i) for i in range(atoms)]
    role_names = ["r", "s", "t"][:max(1, roles)]
    inds = ["a", "b", "c", "d"][:individuals]
    maker = _ConceptMaker(rng, ops, quantifiers, atom_names, role_names)
    for _ in range(tries):
        tbox = []
        if kind != "csat":
            tbox = [Axiom(maker.side(depth, 1), maker.side(depth, 0))
                    for _ in range(rng.randint(1, axioms))]
        abox_c, abox_r = [], []
        if kind in ("osat", "ocsat") and inds:
            for a in inds:
                if rng.random() < 0.8:
                    abox_c.append((maker.make(depth - 1), a))
            if len(inds) > 1:
                for _ in range(rng.randint(0, len(inds))):
                    abox_r.append((rng.choice(role_names), rng.choice(inds), rng.choice(inds)))
            if not abox_c and not abox_r:
                abox_c.append((Atomic(rng.choice(atom_names)), inds[0]))
        query = maker.make(depth) if kind in ("tcsat", "ocsat", "csat") else None
        onto = Ontology(tuple(tbox), tuple(abox_c), tuple(dict.fromkeys(abox_r)))
        inst = ProblemInstance(kind, OperatorSet(tuple(ops)), onto, query)
        if len(unique_subconcepts(inst.concepts())) <= max_closure:
            return inst
    raise ProfileError(f"could not stay within closure {max_closure}; lower the size")


def gen_random(profile, seed: int, **size) -> ProblemInstance:
    """Reproducible random instance for ``profile`` (``kind/quantifiers/clone``)."""
    p = parse_profile(profile)
    rng = random.Random(f"{p}:{seed}")
    ops = _random_operators(rng, p.clone)
    return random_instance(rng, p.kind, p.quantifiers, ops, **size)


__all__ = [
    "Digraph", "Hypergraph", "Profile", "FAMILIES", "gen_gap", "gen_hgap",
    "gen_one_in_three", "gen_random", "random_instance", "parse_profile", "reachable",
    "hyper_closure", "one_in_three_sat", "random_digraph", "random_hypergraph",
    "random_clauses",
]
