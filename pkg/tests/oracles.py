"""Reference implementations the tests compare the package against.

Nothing here imports the solvers or the clone machinery of ``sublogic``.
Truth tables are plain tuples indexed like the package's (first argument is
the most significant bit), so a ``TruthTable.bits`` tuple can be passed in
directly.
"""
from __future__ import annotations

import itertools
import re
from collections import deque
from functools import lru_cache
from pathlib import Path

import networkx as nx

SOURCE_TABLES = Path(__file__).resolve().parents[1] / "paper.md"


# ---------------------------------------------------------------------------
# Boolean functions from first principles

def rows(n):
    return list(itertools.product((0, 1), repeat=n))


def apply(bits, args):
    idx = 0
    for a in args:
        idx = 2 * idx + a
    return bits[idx]


def arity_of(bits):
    return len(bits).bit_length() - 1


def projections(n):
    return {tuple(r[i] for r in rows(n)) for i in range(n)}


def naive_closure(base, n=3):
    """The n-ary functions generated by ``base`` (tuples of bits).

    Plain superposition to a fixpoint; each round only tries argument tuples
    that involve something found in the previous round.
    """
    funcs = set(projections(n))
    for f in base:
        if arity_of(f) == 0:
            funcs.add(tuple([f[0]] * (1 << n)))
    fresh = set(funcs)
    while fresh:
        current = sorted(funcs)
        new = set()
        for f in base:
            k = arity_of(f)
            for args in itertools.product(current, repeat=k):
                if not any(a in fresh for a in args):
                    continue
                g = tuple(apply(f, [a[i] for a in args]) for i in range(1 << n))
                if g not in funcs:
                    new.add(g)
        funcs |= new
        fresh = new
    return frozenset(funcs)


def zero_reproducing(f):
    return f[0] == 0


def one_reproducing(f):
    return f[-1] == 1


def monotone(f):
    n = arity_of(f)
    return all(apply(f, x) <= apply(f, y) for x in rows(n) for y in rows(n)
               if all(a <= b for a, b in zip(x, y)))


def self_dual(f):
    n = arity_of(f)
    return all(apply(f, x) != apply(f, tuple(1 - a for a in x)) for x in rows(n))


def affine(f):
    """Equal to c0 xor some subset of the arguments."""
    n = arity_of(f)
    for c0 in (0, 1):
        for subset in itertools.product((0, 1), repeat=n):
            if all(apply(f, x) == (c0 ^ (sum(a & s for a, s in zip(x, subset)) & 1))
                   for x in rows(n)):
                return True
    return False


def one_separating(f):
    ones = [x for x in rows(arity_of(f)) if apply(f, x)]
    return not ones or any(all(x[i] for x in ones) for i in range(arity_of(f)))


def _is_conjunction(f, with_const):
    n = arity_of(f)
    if with_const and len(set(f)) == 1:
        return True
    for subset in itertools.product((0, 1), repeat=n):
        if any(subset) and all(apply(f, x) == all(x[i] for i in range(n) if subset[i])
                               for x in rows(n)):
            return True
    return False


def _is_disjunction(f, with_const):
    n = arity_of(f)
    if with_const and len(set(f)) == 1:
        return True
    for subset in itertools.product((0, 1), repeat=n):
        if any(subset) and all(apply(f, x) == any(x[i] for i in range(n) if subset[i])
                               for x in rows(n)):
            return True
    return False


def _depends_on_at_most_one(f):
    n = arity_of(f)
    deps = [i for i in range(n)
            if any(apply(f, x) != apply(f, x[:i] + (1 - x[i],) + x[i + 1:]) for x in rows(n))]
    return len(deps) <= 1


def _constant(f):
    return len(set(f)) == 1


def _r2(f):
    return zero_reproducing(f) and one_reproducing(f)


# Clone membership written directly from the textbook definitions.
CLONE_DEFINITIONS = {
    "BF": lambda f: True,
    "R0": zero_reproducing,
    "R1": one_reproducing,
    "R2": _r2,
    "M": monotone,
    "M0": lambda f: monotone(f) and zero_reproducing(f),
    "M1": lambda f: monotone(f) and one_reproducing(f),
    "M2": lambda f: monotone(f) and _r2(f),
    "S1": one_separating,
    "S11": lambda f: one_separating(f) and monotone(f),
    "D": self_dual,
    "D1": lambda f: self_dual(f) and _r2(f),
    "D2": lambda f: self_dual(f) and monotone(f),
    "L": affine,
    "L0": lambda f: affine(f) and zero_reproducing(f),
    "L1": lambda f: affine(f) and one_reproducing(f),
    "L2": lambda f: affine(f) and _r2(f),
    "L3": lambda f: affine(f) and self_dual(f),
    "E": lambda f: _is_conjunction(f, True),
    "E0": lambda f: _is_conjunction(f, True) and zero_reproducing(f),
    "E1": lambda f: _is_conjunction(f, True) and one_reproducing(f),
    "V": lambda f: _is_disjunction(f, True),
    "V0": lambda f: _is_disjunction(f, True) and zero_reproducing(f),
    "V1": lambda f: _is_disjunction(f, True) and one_reproducing(f),
    "N": _depends_on_at_most_one,
    "N2": lambda f: _depends_on_at_most_one(f) and not _constant(f),
    "I": lambda f: _depends_on_at_most_one(f) and (_constant(f) or monotone(f)),
    "I0": lambda f: _depends_on_at_most_one(f) and monotone(f) and zero_reproducing(f),
    "I1": lambda f: _depends_on_at_most_one(f) and monotone(f) and one_reproducing(f),
    "I2": lambda f: _depends_on_at_most_one(f) and not _constant(f) and monotone(f),
}


@lru_cache(maxsize=None)
def clone_slice(name, n=3):
    pred = CLONE_DEFINITIONS[name]
    return frozenset(f for f in itertools.product((0, 1), repeat=1 << n) if pred(f))


def oracle_clone_name(base, n=3):
    """Name of the clone whose n-ary slice equals the closure of ``base``.

    Returns None when no defined clone matches, and raises when two do.
    """
    closed = naive_closure(base, n)
    hits = [name for name in CLONE_DEFINITIONS if clone_slice(name, n) == closed]
    if len(hits) > 1:
        raise AssertionError(f"ambiguous slice: {hits}")
    return hits[0] if hits else None


def oracle_included(small, big):
    """Clone inclusion decided on ternary slices."""
    return clone_slice(small) <= clone_slice(big)


# ---------------------------------------------------------------------------
# Graph problems

def digraph_reachable(nodes, edges, s, t):
    g = nx.DiGraph()
    g.add_nodes_from(nodes)
    g.add_edges_from(edges)
    return nx.has_path(g, s, t)


def forward_chaining(edges, sources):
    """Hypergraph closure by repeated passes until stable."""
    reached = set(sources)
    changed = True
    while changed:
        changed = False
        for src, dst in edges:
            if set(src) <= reached and dst not in reached:
                reached.add(dst)
                changed = True
    return reached


def exactly_one_sat(clauses):
    """Exhaustive search for an assignment making exactly one literal per clause true."""
    variables = sorted({abs(lit) for c in clauses for lit in c})
    for values in itertools.product((False, True), repeat=len(variables)):
        val = dict(zip(variables, values))
        if all(sum(val[abs(lit)] == (lit > 0) for lit in c) == 1 for c in clauses):
            return True
    return False


def bfs_reachable(adj, s, t):
    seen, queue = {s}, deque([s])
    while queue:
        u = queue.popleft()
        if u == t:
            return True
        for v in adj.get(u, ()):
            if v not in seen:
                seen.add(v)
                queue.append(v)
    return False


# ---------------------------------------------------------------------------
# Published complexity tables, read from the LaTeX source

_CLASS_TOKENS = {r"\NL": "NL", r"\P": "P", r"\NP": "NP", r"\EXPTIME": "EXPTIME",
                 r"\text{trivial}": "trivial", r"\P^\mathsection": "footnoted"}


def _clone_label(tex):
    tex = tex.replace(r"\text{ to }", " to ").replace(r"\text{otherwise}", "otherwise")
    tex = re.sub(r"\\Clone([A-Z]+)(?:_\{?(\d+)\}?)?", lambda m: m.group(1) + (m.group(2) or ""), tex)
    return re.sub(r"\s+", " ", tex).strip()


def _quantifier_rows(tex):
    tex = tex.replace(" ", "")
    if r"\emptyset" in tex:
        return [frozenset()]
    if "|=1" in tex:
        return [frozenset({"exists"}), frozenset({"forall"})]
    found = frozenset(q for q in ("exists", "forall") if "\\" + q in tex)
    return [found]


def parse_overview_table(text=None):
    """Cells of the overview array as ``{(group, Q, column label): class}``.

    ``group`` is ``"tsat"`` or ``"star"``; multicolumn cells are expanded.
    """
    text = text if text is not None else SOURCE_TABLES.read_text()
    anchor = re.search(r"\\TSAT_\\calQ\(B\)\s*&", text).start()
    start = text.rindex(r"\begin{array}", 0, anchor)
    body = text[text.index("\n", start):text.index(r"\end{array}", anchor)]
    cells = {}
    group, header = None, None
    for row in body.split(r"\\"):
        row = row.replace(r"\hline", "").strip()
        if not row or row.startswith(r"\multicolumn{7}"):
            continue
        parts = [p.strip() for p in row.split("&")]
        if parts[0].startswith(r"\TSAT") or parts[0].startswith(r"\cSTARSAT"):
            group = "tsat" if parts[0].startswith(r"\TSAT") else "star"
            header = [_clone_label(p) for p in parts[1:]]
            continue
        expanded = []
        for p in parts[1:]:
            m = re.fullmatch(r"\\multicolumn\{(\d+)\}\{[^}]*\}\{(.*)\}", p)
            if m:
                expanded += [m.group(2).strip()] * int(m.group(1))
            else:
                expanded.append(p)
        assert len(expanded) == len(header), row
        for Q in _quantifier_rows(parts[0]):
            for label, tok in zip(header, expanded):
                cells[(group, Q, label)] = _CLASS_TOKENS[tok]
    return cells


_SUPER_COLUMNS = ("I0", "I", "N2", "V0", "V", "E0", "E", "S11", "D", "M", "R1", "R0")
_SUPER_Q = {"emptyset": frozenset(), "forall": frozenset({"forall"}),
            "exists": frozenset({"exists"}), "exall": frozenset({"exists", "forall"})}


def parse_appendix_table(text=None):
    """Cells of the appendix supertabular as ``{(kind, Q, clone): class}``.

    An empty class cell is reported as ``"open"``.
    """
    text = text if text is not None else SOURCE_TABLES.read_text()
    start = text.index(r"\begin{supertabular}")
    body = text[text.index("\n", start):text.index(r"\end{supertabular}")]
    header = re.findall(r"\$\\Clone([A-Z]+)(?:_\{?(\d+)\}?)?\$",
                        text[text.index(r"\tablefirsthead"):start])
    columns = tuple(a + b for a, b in header[:12])
    assert columns == _SUPER_COLUMNS, columns
    out = {}
    for row in body.split(r"\\"):
        row = row.replace(r"\hline", "").strip()
        if not row:
            continue
        parts = row.split("&")
        m = re.match(r"\$\\(TSAT|TCSAT|OCSAT|OSAT)_\\(emptyset|forall|exists|exall)\$",
                     parts[0].strip())
        assert m and len(parts) == 13, parts[0][:40]
        kind, Q = m.group(1).lower(), _SUPER_Q[m.group(2)]
        for clone, cell in zip(columns, parts[1:]):
            hit = re.search(r"\\(NL|NP|P|EXPTIME)-compl|trivial", cell)
            if hit is None:
                out[(kind, Q, clone)] = "open"
            else:
                out[(kind, Q, clone)] = hit.group(1) or "trivial"
    return out


# ---------------------------------------------------------------------------
# One-element interpretations

def singleton_value(concept, value):
    """Truth value of ``concept`` on a single element that is its own role
    successor, with every atom set to ``value``."""
    kind = type(concept).__name__
    if kind == "Atomic":
        return value
    if kind == "Apply":
        return apply(concept.op.table.bits,
                     [singleton_value(c, value) for c in concept.children])
    # the only successor is the element itself, so both quantifiers pass through
    return singleton_value(concept.child, value)


def singleton_satisfies(instance, value):
    onto = instance.ontology
    ok = all(singleton_value(ax.lhs, value) <= singleton_value(ax.rhs, value)
             for ax in onto.tbox)
    ok = ok and all(singleton_value(c, value) for c, _ in onto.abox_concepts)
    if instance.query is not None:
        ok = ok and singleton_value(instance.query, value) == 1
    return ok
