"""Concepts, ontologies and problem instances, with a text format and semantics.

The instance format is line oriented::

    operator and 2 0001
    problem ocsat
    tbox
      A <= (some r B)
      B == (and A C)
    abox
      A(a)
      r(a, b)
    query (all r B)

``==`` is shorthand for two inclusions.  Names starting with ``_`` are
reserved for symbols introduced by transformations; they are accepted only in
files carrying the pragma line ``# sublogic: generated``.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable, NamedTuple

from .boolfun import NamedOperator, OperatorSet, TruthTable, dual
from .errors import ArityError, ParseError

KINDS = ("csat", "tsat", "tcsat", "osat", "ocsat")
QUERY_KINDS = frozenset({"csat", "tcsat", "ocsat"})
ABOX_KINDS = frozenset({"osat", "ocsat"})
EXISTS, FORALL = "exists", "forall"
PRAGMA = "# sublogic: generated"

_IDENT = re.compile(r"[A-Za-z][A-Za-z0-9_']*")
_RESERVED = re.compile(r"_[A-Za-z0-9_']*")


# ---------------------------------------------------------------------------
# AST


@dataclass(frozen=True)
class Atomic:
    name: str

    def __str__(self):
        return self.name


@dataclass(frozen=True)
class Apply:
    op: NamedOperator
    children: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "children", tuple(self.children))
        if len(self.children) != self.op.arity:
            raise ArityError(f"operator {self.op.name} takes {self.op.arity} "
                             f"arguments, got {len(self.children)}")

    def __str__(self):
        inner = " ".join([self.op.name] + [str(c) for c in self.children])
        return f"({inner})"


@dataclass(frozen=True)
class Exists:
    role: str
    child: object

    def __str__(self):
        return f"(some {self.role} {self.child})"


@dataclass(frozen=True)
class Forall:
    role: str
    child: object

    def __str__(self):
        return f"(all {self.role} {self.child})"


Concept = Atomic | Apply | Exists | Forall


@dataclass(frozen=True)
class Axiom:
    lhs: object
    rhs: object

    def __str__(self):
        return f"{self.lhs} <= {self.rhs}"


@dataclass(frozen=True)
class Ontology:
    tbox: tuple = ()
    abox_concepts: tuple = ()   # (concept, individual)
    abox_roles: tuple = ()      # (role, individual, individual)

    def __post_init__(self):
        object.__setattr__(self, "tbox", tuple(self.tbox))
        object.__setattr__(self, "abox_concepts", tuple(tuple(x) for x in self.abox_concepts))
        object.__setattr__(self, "abox_roles", tuple(tuple(x) for x in self.abox_roles))

    @property
    def has_abox(self):
        return bool(self.abox_concepts or self.abox_roles)


@dataclass(frozen=True)
class ProblemInstance:
    kind: str
    operators: OperatorSet
    ontology: Ontology = field(default_factory=Ontology)
    query: object = None

    def __post_init__(self):
        kind = self.kind.lower()
        if kind not in KINDS:
            raise ValueError(f"unknown problem kind {self.kind!r}")
        object.__setattr__(self, "kind", kind)
        if not isinstance(self.operators, OperatorSet):
            object.__setattr__(self, "operators", OperatorSet(tuple(self.operators)))
        if (self.query is not None) != (kind in QUERY_KINDS):
            raise ValueError(f"{kind} instances {'need' if kind in QUERY_KINDS else 'take no'} query")
        if self.ontology.has_abox and kind not in ABOX_KINDS:
            raise ValueError(f"{kind} instances take no ABox")
        if kind == "csat" and self.ontology.tbox:
            raise ValueError("csat instances take no TBox")
        declared = {op.name: op for op in self.operators}
        for c in self.concepts():
            for sub in subconcepts(c):
                if isinstance(sub, Apply) and declared.get(sub.op.name) != sub.op:
                    raise ValueError(f"operator {sub.op.name} used but not declared")

    @property
    def tbox(self):
        return self.ontology.tbox

    def concepts(self):
        """Every top-level concept: axiom sides, assertions, query."""
        for ax in self.ontology.tbox:
            yield ax.lhs
            yield ax.rhs
        for c, _ in self.ontology.abox_concepts:
            yield c
        if self.query is not None:
            yield self.query

    def replace(self, **changes):
        fields_ = dict(kind=self.kind, operators=self.operators,
                       ontology=self.ontology, query=self.query)
        fields_.update(changes)
        return ProblemInstance(**fields_)


# ---------------------------------------------------------------------------
# Traversal helpers


def subconcepts(c):
    """All subconcepts in preorder, duplicates included."""
    stack = [c]
    while stack:
        x = stack.pop()
        yield x
        if isinstance(x, Apply):
            stack.extend(reversed(x.children))
        elif isinstance(x, (Exists, Forall)):
            stack.append(x.child)


def unique_subconcepts(concepts: Iterable):
    seen = {}
    for c in concepts:
        for s in subconcepts(c):
            seen.setdefault(s, None)
    return list(seen)


def concept_size(c):
    return sum(1 for _ in subconcepts(c))


def atoms_of(c):
    return {s.name for s in subconcepts(c) if isinstance(s, Atomic)}


def roles_of(c):
    return {s.role for s in subconcepts(c) if isinstance(s, (Exists, Forall))}


def transform(c, fn):
    """Rebuild ``c`` bottom-up, calling ``fn`` on each rebuilt node."""
    if isinstance(c, Apply):
        c = Apply(c.op, tuple(transform(x, fn) for x in c.children))
    elif isinstance(c, Exists):
        c = Exists(c.role, transform(c.child, fn))
    elif isinstance(c, Forall):
        c = Forall(c.role, transform(c.child, fn))
    return fn(c)


def is_quantifier(c):
    return isinstance(c, (Exists, Forall))


class Signature(NamedTuple):
    operators: OperatorSet
    quantifiers: frozenset
    atoms: tuple
    roles: tuple
    individuals: tuple


def signature(instance: ProblemInstance) -> Signature:
    """Operators and quantifiers actually used, plus the names that occur."""
    used_ops, quants, atoms, roles = {}, set(), set(), set()
    for c in instance.concepts():
        for s in subconcepts(c):
            if isinstance(s, Apply):
                used_ops[s.op.name] = s.op
            elif isinstance(s, Atomic):
                atoms.add(s.name)
            else:
                quants.add(EXISTS if isinstance(s, Exists) else FORALL)
                roles.add(s.role)
    inds = []
    for _, a in instance.ontology.abox_concepts:
        inds.append(a)
    for r, a, b in instance.ontology.abox_roles:
        roles.add(r)
        inds.extend((a, b))
    ops = OperatorSet(tuple(op for op in instance.operators if op.name in used_ops))
    return Signature(ops, frozenset(quants), tuple(sorted(atoms)), tuple(sorted(roles)),
                     tuple(dict.fromkeys(inds)))


def all_names(instance: ProblemInstance):
    sig = signature(instance)
    return (set(sig.atoms) | set(sig.roles) | set(sig.individuals)
            | {op.name for op in instance.operators})


class FreshNames:
    """Reserved-name supply: ``_<tag>``, then ``_<tag>1``, ``_<tag>2``, ..."""

    def __init__(self, used=()):
        self.used = set(used)

    def __call__(self, tag):
        name = f"_{tag}"
        k = 0
        while name in self.used:
            k += 1
            name = f"_{tag}{k}"
        self.used.add(name)
        return name


# ---------------------------------------------------------------------------
# Parsing

_TOKEN = re.compile(r"\s*(?:(<=|==|[(),])|([A-Za-z_][A-Za-z0-9_']*))")


def _tokenize(text, lineno, col0):
    out, pos = [], 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            bad = len(text) - len(text[pos:].lstrip())
            raise ParseError(f"unexpected character {text[bad]!r}", lineno, col0 + bad + 1)
        tok = m.group(1) or m.group(2)
        out.append((tok, col0 + m.start(m.lastindex) + 1))
        pos = m.end()
    return out


class _Parser:
    def __init__(self, allow_reserved):
        self.allow_reserved = allow_reserved
        self.ops = {}
        self.op_order = []

    def ident(self, tok, lineno, col, what):
        if _IDENT.fullmatch(tok):
            return tok
        if _RESERVED.fullmatch(tok):
            if self.allow_reserved:
                return tok
            raise ParseError(f"{what} {tok!r} uses the reserved '_' prefix", lineno, col)
        raise ParseError(f"bad {what} {tok!r}", lineno, col)

    def concept(self, toks, i, lineno):
        if i >= len(toks):
            raise ParseError("unexpected end of line, expected a concept", lineno)
        tok, col = toks[i]
        if tok != "(":
            if tok in ("(", ")", ",", "<=", "=="):
                raise ParseError(f"expected a concept, found {tok!r}", lineno, col)
            return Atomic(self.ident(tok, lineno, col, "concept name")), i + 1
        if i + 1 >= len(toks):
            raise ParseError("unterminated '('", lineno, col)
        head, hcol = toks[i + 1]
        i += 2
        if head in ("some", "all"):
            if i >= len(toks):
                raise ParseError("missing role name", lineno, hcol)
            role = self.ident(toks[i][0], lineno, toks[i][1], "role name")
            child, i = self.concept(toks, i + 1, lineno)
            node = Exists(role, child) if head == "some" else Forall(role, child)
        else:
            op = self.ops.get(head)
            if op is None:
                raise ParseError(f"undeclared operator {head!r}", lineno, hcol)
            kids = []
            while i < len(toks) and toks[i][0] != ")":
                kid, i = self.concept(toks, i, lineno)
                kids.append(kid)
            if len(kids) != op.arity:
                raise ArityError(f"line {lineno}, column {hcol}: operator {head} takes "
                                 f"{op.arity} arguments, got {len(kids)}")
            node = Apply(op, tuple(kids))
        if i >= len(toks) or toks[i][0] != ")":
            raise ParseError("expected ')'", lineno, toks[i][1] if i < len(toks) else None)
        return node, i + 1

    def whole_concept(self, toks, lineno):
        c, i = self.concept(toks, 0, lineno)
        if i != len(toks):
            raise ParseError(f"trailing input {toks[i][0]!r}", lineno, toks[i][1])
        return c


def _strip_comment(line):
    k = line.find("#")
    return line if k < 0 else line[:k]


def parse(text: str, allow_reserved: bool | None = None) -> ProblemInstance:
    """Parse an instance file.  See the module docstring for the format."""
    lines = text.splitlines()
    if allow_reserved is None:
        allow_reserved = any(l.strip() == PRAGMA for l in lines)
    p = _Parser(allow_reserved)
    kind = None
    section = None
    tbox, abox_c, abox_r = [], [], []
    query = None
    for lineno, raw in enumerate(lines, 1):
        body = _strip_comment(raw)
        if not body.strip():
            continue
        indent = len(body) - len(body.lstrip())
        words = body.split()
        head = words[0]
        if head == "operator":
            if len(words) != 4:
                raise ParseError("expected 'operator <name> <arity> <bits>'", lineno)
            name = p.ident(words[1], lineno, body.find(words[1]) + 1, "operator name")
            if name in ("some", "all"):
                raise ParseError(f"{name!r} is a keyword", lineno)
            if name in p.ops:
                raise ParseError(f"operator {name!r} declared twice", lineno)
            try:
                arity = int(words[2])
                table = TruthTable.parse(arity, words[3])
            except ArityError as exc:
                raise ArityError(f"line {lineno}: {exc}") from None
            except ValueError as exc:
                raise ParseError(str(exc), lineno) from None
            p.ops[name] = NamedOperator(name, table)
            p.op_order.append(name)
            section = None
        elif head == "problem":
            if len(words) != 2:
                raise ParseError("expected 'problem <kind>'", lineno)
            if words[1].lower() not in KINDS:
                raise ParseError(f"unknown problem kind {words[1]!r}", lineno,
                                 body.find(words[1]) + 1)
            if kind is not None:
                raise ParseError("problem kind given twice", lineno)
            kind = words[1].lower()
            section = None
        elif head in ("tbox", "abox") and len(words) == 1:
            section = head
        elif head == "query":
            if query is not None:
                raise ParseError("query given twice", lineno)
            start = body.find("query") + len("query")
            toks = _tokenize(body[start:], lineno, start)
            query = p.whole_concept(toks, lineno)
            section = None
        elif section == "tbox":
            toks = _tokenize(body, lineno, 0)
            seps = [k for k, (t, _) in enumerate(toks) if t in ("<=", "==")]
            if len(seps) != 1:
                raise ParseError("axiom needs exactly one '<=' or '=='", lineno)
            k = seps[0]
            lhs = p.whole_concept(toks[:k], lineno)
            rhs = p.whole_concept(toks[k + 1:], lineno)
            tbox.append(Axiom(lhs, rhs))
            if toks[k][0] == "==":
                tbox.append(Axiom(rhs, lhs))
        elif section == "abox":
            toks = _tokenize(body, lineno, 0)
            c, i = p.concept(toks, 0, lineno)
            rest = [t for t, _ in toks[i:]]
            if len(rest) == 3 and rest[0] == "(" and rest[2] == ")":
                a = p.ident(rest[1], lineno, toks[i + 1][1], "individual")
                abox_c.append((c, a))
            elif len(rest) == 5 and rest[0] == "(" and rest[2] == "," and rest[4] == ")":
                if not isinstance(c, Atomic):
                    raise ParseError("role assertion needs a role name", lineno)
                a = p.ident(rest[1], lineno, toks[i + 1][1], "individual")
                b = p.ident(rest[3], lineno, toks[i + 3][1], "individual")
                abox_r.append((c.name, a, b))
            else:
                raise ParseError("expected 'C(a)' or 'r(a, b)'", lineno)
        else:
            raise ParseError(f"unexpected line starting with {head!r}", lineno, indent + 1)
    if kind is None:
        raise ParseError("missing 'problem' line")
    ops = OperatorSet(tuple(p.ops[n] for n in p.op_order))
    try:
        return ProblemInstance(kind, ops, Ontology(tuple(tbox), tuple(abox_c), tuple(abox_r)),
                               query)
    except ValueError as exc:
        raise ParseError(str(exc)) from None


def _uses_reserved(instance):
    return any(n.startswith("_") for n in all_names(instance))


def format_instance(instance: ProblemInstance) -> str:
    """Canonical text form; ``parse(format_instance(x)) == x``."""
    out = []
    if _uses_reserved(instance):
        out.append(PRAGMA)
    for op in instance.operators:
        out.append(f"operator {op.name} {op.arity} {op.table}")
    out.append(f"problem {instance.kind}")
    out.append("tbox")
    out.extend(f"  {ax}" for ax in instance.ontology.tbox)
    if instance.ontology.has_abox:
        out.append("abox")
        out.extend(f"  {c}({a})" for c, a in instance.ontology.abox_concepts)
        out.extend(f"  {r}({a}, {b})" for r, a, b in instance.ontology.abox_roles)
    if instance.query is not None:
        out.append(f"query {instance.query}")
    return "\n".join(out) + "\n"


def parse_operators(text: str) -> OperatorSet:
    """Read a file holding only ``operator`` lines (comments allowed)."""
    ops, seen = [], set()
    for lineno, raw in enumerate(text.splitlines(), 1):
        body = _strip_comment(raw).split()
        if not body:
            continue
        if body[0] != "operator" or len(body) != 4:
            raise ParseError("expected 'operator <name> <arity> <bits>'", lineno)
        name = body[1]
        if not (_IDENT.fullmatch(name) or _RESERVED.fullmatch(name)) or name in seen:
            raise ParseError(f"bad or duplicate operator name {name!r}", lineno)
        try:
            table = TruthTable.parse(int(body[2]), body[3])
        except ArityError:
            raise
        except ValueError as exc:
            raise ParseError(str(exc), lineno) from None
        seen.add(name)
        ops.append(NamedOperator(name, table))
    return OperatorSet(tuple(ops))


def format_operators(ops) -> str:
    return "".join(f"operator {o.name} {o.arity} {o.table}\n" for o in ops)


# ---------------------------------------------------------------------------
# Semantics


@dataclass(frozen=True, eq=False)
class Interpretation:
    domain: tuple
    concept_ext: dict = field(default_factory=dict)
    role_ext: dict = field(default_factory=dict)
    individual_map: dict = field(default_factory=dict)

    def __post_init__(self):
        if not self.domain:
            raise ValueError("interpretation domain must be nonempty")
        dom = set(self.domain)
        object.__setattr__(self, "domain", tuple(self.domain))
        object.__setattr__(self, "concept_ext",
                           {k: frozenset(v) for k, v in self.concept_ext.items()})
        object.__setattr__(self, "role_ext",
                           {k: frozenset(tuple(p) for p in v) for k, v in self.role_ext.items()})
        for k, v in self.concept_ext.items():
            if not v <= dom:
                raise ValueError(f"extension of {k} leaves the domain")
        for k, v in self.role_ext.items():
            if any(x not in dom or y not in dom for x, y in v):
                raise ValueError(f"extension of role {k} leaves the domain")
        for a, x in self.individual_map.items():
            if x not in dom:
                raise ValueError(f"individual {a} maps outside the domain")

    def successors(self, role):
        succ = {x: set() for x in self.domain}
        for x, y in self.role_ext.get(role, ()):
            succ[x].add(y)
        return succ

    def format(self) -> str:
        lines = ["domain " + " ".join(map(str, self.domain))]
        for name in sorted(self.concept_ext):
            lines.append(f"concept {name} = {{{', '.join(map(str, sorted(self.concept_ext[name])))}}}")
        for name in sorted(self.role_ext):
            pairs = ", ".join(f"({x},{y})" for x, y in sorted(self.role_ext[name]))
            lines.append(f"role {name} = {{{pairs}}}")
        for a in sorted(self.individual_map):
            lines.append(f"individual {a} -> {self.individual_map[a]}")
        return "\n".join(lines)


def evaluate_concept(interp: Interpretation, c, _memo=None) -> frozenset:
    """Extension of ``c``; atoms missing from ``interp`` are empty."""
    memo = {} if _memo is None else _memo
    if c in memo:
        return memo[c]
    if isinstance(c, Atomic):
        out = interp.concept_ext.get(c.name, frozenset())
    elif isinstance(c, Apply):
        kids = [evaluate_concept(interp, k, memo) for k in c.children]
        bits = c.op.table.bits
        res = set()
        for x in interp.domain:
            idx = 0
            for k in kids:
                idx = (idx << 1) | (x in k)
            if bits[idx]:
                res.add(x)
        out = frozenset(res)
    else:
        inner = evaluate_concept(interp, c.child, memo)
        succ = interp.successors(c.role)
        if isinstance(c, Exists):
            out = frozenset(x for x in interp.domain if succ[x] & inner)
        else:
            out = frozenset(x for x in interp.domain if succ[x] <= inner)
    memo[c] = out
    return out


def check_model(interp: Interpretation, instance: ProblemInstance) -> bool:
    memo = {}
    ev = lambda c: evaluate_concept(interp, c, memo)  # noqa: E731
    for ax in instance.ontology.tbox:
        if not ev(ax.lhs) <= ev(ax.rhs):
            return False
    inds = interp.individual_map
    for c, a in instance.ontology.abox_concepts:
        if a not in inds or inds[a] not in ev(c):
            return False
    for r, a, b in instance.ontology.abox_roles:
        if a not in inds or b not in inds:
            return False
        if (inds[a], inds[b]) not in interp.role_ext.get(r, ()):
            return False
    if instance.query is not None and not ev(instance.query):
        return False
    return True


# ---------------------------------------------------------------------------
# Dualization


def dual_operator(op: NamedOperator, available=()) -> NamedOperator:
    """The operator for ``op``'s dual: an available one if the table matches."""
    d = dual(op.table)
    for cand in available:
        if cand.table == d:
            return cand
    if d == op.table:
        return op
    return NamedOperator(f"_d_{op.name}", d)


def dual_name(atom: str) -> str:
    return f"_d_{atom}"


def nnf_dualize(c, available=()):
    """Rewrite ``c`` so that it denotes the complement of ``c``.

    Atoms ``A`` become ``_d_A`` (read as the complement of ``A``), operators
    become their duals and the quantifiers swap.
    """
    available = tuple(available)

    def go(x):
        if isinstance(x, Atomic):
            return Atomic(dual_name(x.name))
        if isinstance(x, Apply):
            return Apply(dual_operator(x.op, available), tuple(go(k) for k in x.children))
        if isinstance(x, Exists):
            return Forall(x.role, go(x.child))
        return Exists(x.role, go(x.child))

    return go(c)


__all__ = [
    "Atomic", "Apply", "Exists", "Forall", "Concept", "Axiom", "Ontology",
    "ProblemInstance", "Interpretation", "Signature", "FreshNames", "KINDS",
    "EXISTS", "FORALL", "parse", "format_instance", "parse_operators",
    "format_operators", "evaluate_concept", "check_model", "signature",
    "nnf_dualize", "dual_operator", "subconcepts", "unique_subconcepts",
    "atoms_of", "roles_of", "transform", "concept_size",
]
