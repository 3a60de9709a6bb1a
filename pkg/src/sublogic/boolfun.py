"""Boolean functions as truth tables, and their place in Post's lattice.

A table of arity n stores ``bits[i] = f(x)`` where ``i`` is the binary number
spelled by the argument tuple, first argument most significant.  Internally
the same table is an integer ``mask`` whose bit ``i`` is ``bits[i]``, which
makes composition a handful of bitwise operations.

Clone membership for the named clones is decided by predicates over whole
arrays of masks; ``[B]`` itself is computed by closure over projections.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import product
from typing import Sequence

import numpy as np

from . import _kernels
from ._pykernels import compose
from .errors import ArityError, LimitError, NotExpressibleError
from .limits import ARITY_CAP, CLOSURE_ARITY_CAP

PROPERTIES = (
    "zero-reproducing", "one-reproducing", "monotone", "self-dual",
    "affine", "one-separating", "zero-separating",
)
VARIABLE_NAMES = "xyzwvu"


# ---------------------------------------------------------------------------
# Truth tables


@dataclass(frozen=True)
class TruthTable:
    arity: int
    bits: tuple

    def __post_init__(self):
        if not 0 <= self.arity <= ARITY_CAP:
            raise ArityError(f"arity {self.arity} outside 0..{ARITY_CAP}")
        bits = tuple(int(b) for b in self.bits)
        if len(bits) != 1 << self.arity:
            raise ArityError(
                f"arity {self.arity} needs {1 << self.arity} bits, got {len(bits)}")
        if any(b not in (0, 1) for b in bits):
            raise ValueError("truth table entries must be 0 or 1")
        object.__setattr__(self, "bits", bits)

    @classmethod
    def parse(cls, arity: int, text: str) -> "TruthTable":
        """Build from a bit string such as ``"0001"`` (row 0 first)."""
        if any(ch not in "01" for ch in text):
            raise ValueError(f"bad bit string {text!r}")
        return cls(arity, tuple(int(ch) for ch in text))

    @classmethod
    def from_mask(cls, arity: int, mask: int) -> "TruthTable":
        return cls(arity, tuple((mask >> i) & 1 for i in range(1 << arity)))

    @classmethod
    def from_function(cls, arity: int, fn) -> "TruthTable":
        return cls(arity, tuple(int(bool(fn(*args)))
                                for args in product((0, 1), repeat=arity)))

    @property
    def mask(self) -> int:
        return sum(b << i for i, b in enumerate(self.bits))

    @property
    def rows(self) -> int:
        return 1 << self.arity

    def __call__(self, *args):
        return evaluate(self, args)

    def __str__(self):
        return "".join(map(str, self.bits))


def _as_table(f) -> TruthTable:
    return f.table if isinstance(f, NamedOperator) else f


def evaluate(table: TruthTable, args: Sequence[int]) -> int:
    """Apply ``table`` to a tuple of 0/1 arguments."""
    table = _as_table(table)
    if len(args) != table.arity:
        raise ArityError(f"expected {table.arity} arguments, got {len(args)}")
    idx = 0
    for a in args:
        idx = (idx << 1) | (1 if a else 0)
    return table.bits[idx]


def dual(table: TruthTable) -> TruthTable:
    """``f^d(x) = not f(not x)``."""
    table = _as_table(table)
    top = table.rows - 1
    return TruthTable(table.arity, tuple(1 - table.bits[top ^ i] for i in range(table.rows)))


def lift(table: TruthTable) -> TruthTable:
    """Nullary constants become unary constant functions; others pass through."""
    table = _as_table(table)
    if table.arity == 0:
        return TruthTable(1, (table.bits[0],) * 2)
    return table


# ---------------------------------------------------------------------------
# Named operators


@dataclass(frozen=True)
class NamedOperator:
    name: str
    table: TruthTable

    @property
    def arity(self) -> int:
        return self.table.arity

    def __str__(self):
        return self.name


@dataclass(frozen=True)
class OperatorSet:
    operators: tuple = ()

    def __post_init__(self):
        ops = tuple(self.operators)
        names = [op.name for op in ops]
        if len(set(names)) != len(names):
            raise ValueError("duplicate operator names")
        object.__setattr__(self, "operators", ops)

    def __iter__(self):
        return iter(self.operators)

    def __len__(self):
        return len(self.operators)

    def __contains__(self, name):
        return any(op.name == name for op in self.operators)

    def get(self, name, default=None):
        for op in self.operators:
            if op.name == name:
                return op
        return default

    def by_table(self, table):
        for op in self.operators:
            if op.table == table:
                return op
        return None

    def tables(self):
        return [op.table for op in self.operators]


def op(name, arity, bits):
    return NamedOperator(name, TruthTable.parse(arity, bits))


TOP = op("top", 0, "1")
BOT = op("bot", 0, "0")
AND = op("and", 2, "0001")
OR = op("or", 2, "0111")
NOT = op("not", 1, "10")
XOR = op("xor", 2, "0110")
EQUIV = op("equiv", 2, "1001")
NAND = op("nand", 2, "1110")
ANDNOT = op("andnot", 2, "0010")                      # x and not y
ANDOR = NamedOperator("andor", TruthTable.from_function(3, lambda x, y, z: x and (y or z)))
SD = NamedOperator("sd", TruthTable.from_function(
    3, lambda x, y, z: (x and not y) or (x and not z) or (not y and not z)))
MAJ = NamedOperator("maj", TruthTable.from_function(3, lambda x, y, z: x + y + z >= 2))
MAJ_NEG = NamedOperator("majn", TruthTable.from_function(3, lambda x, y, z: x + y + (1 - z) >= 2))
XOR3 = NamedOperator("xor3", TruthTable.from_function(3, lambda x, y, z: x ^ y ^ z))
XOR3_NEG = NamedOperator("xnor3", TruthTable.from_function(3, lambda x, y, z: 1 ^ x ^ y ^ z))
AND_EQ = NamedOperator("andeq", TruthTable.from_function(3, lambda x, y, z: x and (y == z)))

STANDARD_OPERATORS = OperatorSet((TOP, BOT, AND, OR, NOT, XOR, EQUIV, NAND, ANDNOT,
                                  ANDOR, SD, MAJ, MAJ_NEG, XOR3, XOR3_NEG, AND_EQ))


# ---------------------------------------------------------------------------
# Vectorised predicates over arrays of masks


@lru_cache(maxsize=None)
def _var_masks(n):
    """Row masks: ``low[j]`` has the rows where variable j is 0."""
    rows = 1 << n
    low = []
    for j in range(n):
        shift = n - 1 - j
        low.append(sum(1 << i for i in range(rows) if not (i >> shift) & 1))
    return tuple(low)


def _full(n):
    return (1 << (1 << n)) - 1


def _u(x):
    return np.uint64(x)


def _projections(n):
    full = _full(n)
    return [full & ~m for m in _var_masks(n)]


def _pred_r0(t, n):
    return (t & _u(1)) == 0


def _pred_r1(t, n):
    return ((t >> _u((1 << n) - 1)) & _u(1)) == 1


def _pred_monotone(t, n):
    ok = np.ones(t.shape, dtype=bool)
    for j, low in enumerate(_var_masks(n)):
        shift = _u(1 << (n - 1 - j))
        ok &= (((t & _u(low)) << shift) & ~t) == 0
    return ok


def _reverse(t, n):
    rows = 1 << n
    out = np.zeros_like(t)
    for i in range(rows):
        out |= ((t >> _u(i)) & _u(1)) << _u(rows - 1 - i)
    return out


def _pred_selfdual(t, n):
    return (_reverse(t, n) ^ _u(_full(n))) == t


def _anf(t, n):
    a = t.copy()
    for j, low in enumerate(_var_masks(n)):
        shift = _u(1 << (n - 1 - j))
        a ^= (a & _u(low)) << shift
    return a


@lru_cache(maxsize=None)
def _nonlinear_rows(n):
    return sum(1 << i for i in range(1 << n) if bin(i).count("1") >= 2)


def _pred_affine(t, n):
    return (_anf(t, n) & _u(_nonlinear_rows(n))) == 0


def _pred_sep1(t, n):
    ok = np.zeros(t.shape, dtype=bool)
    for low in _var_masks(n):
        ok |= (t & _u(low)) == 0
    return ok


def _pred_sep0(t, n):
    full = _full(n)
    zeros = ~t & _u(full)
    ok = np.zeros(t.shape, dtype=bool)
    for low in _var_masks(n):
        ok |= (zeros & _u(full & ~low)) == 0
    return ok


def _member_of(fn):
    def pred(t, n):
        return np.isin(t, np.array(sorted(fn(n)), dtype=np.uint64))
    return pred


def _conj_tables(n):
    full, proj = _full(n), _projections(n)
    out = set()
    for subset in range(1, 1 << n):
        acc = full
        for j in range(n):
            if subset >> j & 1:
                acc &= proj[j]
        out.add(acc)
    return out


def _disj_tables(n):
    proj = _projections(n)
    out = set()
    for subset in range(1, 1 << n):
        acc = 0
        for j in range(n):
            if subset >> j & 1:
                acc |= proj[j]
        out.add(acc)
    return out


def _all_true(t, n):
    return np.ones(t.shape, dtype=bool)


def _and(*preds):
    def pred(t, n):
        ok = preds[0](t, n)
        for p in preds[1:]:
            ok = ok & p(t, n)
        return ok
    return pred


_PROPERTY_PREDICATES = {
    "zero-reproducing": _pred_r0,
    "one-reproducing": _pred_r1,
    "monotone": _pred_monotone,
    "self-dual": _pred_selfdual,
    "affine": _pred_affine,
    "one-separating": _pred_sep1,
    "zero-separating": _pred_sep0,
}


def check_property(table: TruthTable, prop: str) -> bool:
    """Decide one of :data:`PROPERTIES` for a single table.

    Constants are lifted to unary functions first, so ``top`` is
    one-reproducing but not zero-reproducing.
    """
    if prop not in _PROPERTY_PREDICATES:
        raise ValueError(f"unknown property {prop!r}; expected one of {PROPERTIES}")
    t = lift(table)
    arr = np.array([t.mask], dtype=np.uint64)
    return bool(_PROPERTY_PREDICATES[prop](arr, t.arity)[0])


# ---------------------------------------------------------------------------
# Named clones


@dataclass(frozen=True)
class Clone:
    name: str
    description: str
    base: tuple
    predicate: object = field(repr=False, compare=False)

    def contains_table(self, table) -> bool:
        t = lift(table)
        return bool(self.predicate(np.array([t.mask], dtype=np.uint64), t.arity)[0])

    def slice_masks(self, n):
        """All n-ary members as sorted masks."""
        return _clone_slice(self.name, n)


_SEP1_M = _and(_pred_sep1, _pred_monotone)
_E = _member_of(lambda n: _conj_tables(n) | {0, _full(n)})
_V = _member_of(lambda n: _disj_tables(n) | {0, _full(n)})
_N = _member_of(lambda n: set(_projections(n)) | {_full(n) & ~p for p in _projections(n)}
                | {0, _full(n)})
_N2 = _member_of(lambda n: set(_projections(n)) | {_full(n) & ~p for p in _projections(n)})
_I = _member_of(lambda n: set(_projections(n)) | {0, _full(n)})
_I0 = _member_of(lambda n: set(_projections(n)) | {0})
_I1 = _member_of(lambda n: set(_projections(n)) | {_full(n)})
_I2 = _member_of(lambda n: set(_projections(n)))
_R2 = _and(_pred_r0, _pred_r1)

_CLONE_ROWS = [
    ("BF", "all Boolean functions", (AND, NOT), _all_true),
    ("R0", "0-reproducing functions", (AND, XOR), _pred_r0),
    ("R1", "1-reproducing functions", (OR, EQUIV), _pred_r1),
    ("R2", "0- and 1-reproducing functions", (OR, AND_EQ), _R2),
    ("M", "monotone functions", (AND, OR, BOT, TOP), _pred_monotone),
    ("M0", "monotone, 0-reproducing", (AND, OR, BOT), _and(_pred_monotone, _pred_r0)),
    ("M1", "monotone, 1-reproducing", (AND, OR, TOP), _and(_pred_monotone, _pred_r1)),
    ("M2", "monotone, 0- and 1-reproducing", (AND, OR), _and(_pred_monotone, _R2)),
    ("S1", "1-separating functions", (ANDNOT,), _pred_sep1),
    ("S11", "1-separating, monotone", (ANDOR, BOT), _SEP1_M),
    ("D", "self-dual functions", (SD,), _pred_selfdual),
    ("D1", "self-dual, 0- and 1-reproducing", (MAJ_NEG,), _and(_pred_selfdual, _R2)),
    ("D2", "self-dual, monotone", (MAJ,), _and(_pred_selfdual, _pred_monotone)),
    ("L", "affine functions", (XOR, TOP), _pred_affine),
    ("L0", "affine, 0-reproducing", (XOR,), _and(_pred_affine, _pred_r0)),
    ("L1", "affine, 1-reproducing", (EQUIV,), _and(_pred_affine, _pred_r1)),
    ("L2", "affine, 0- and 1-reproducing", (XOR3,), _and(_pred_affine, _R2)),
    ("L3", "affine, self-dual", (XOR3_NEG,), _and(_pred_affine, _pred_selfdual)),
    ("E", "conjunctions and constants", (AND, BOT, TOP), _E),
    ("E0", "conjunctions and 0", (AND, BOT), _and(_E, _pred_r0)),
    ("E1", "conjunctions and 1", (AND, TOP), _and(_E, _pred_r1)),
    ("V", "disjunctions and constants", (OR, BOT, TOP), _V),
    ("V0", "disjunctions and 0", (OR, BOT), _and(_V, _pred_r0)),
    ("V1", "disjunctions and 1", (OR, TOP), _and(_V, _pred_r1)),
    ("N", "negation and constants", (NOT, TOP), _N),
    ("N2", "negation", (NOT,), _N2),
    ("I", "projections and constants", (BOT, TOP), _I),
    ("I0", "projections and 0", (BOT,), _I0),
    ("I1", "projections and 1", (TOP,), _I1),
    ("I2", "projections", (), _I2),
]

CLONES = {name: Clone(name, desc, base, pred) for name, desc, base, pred in _CLONE_ROWS}

# Image of each clone under f -> f^d.  S1 and S11 map to clones outside the
# named set, so they have no entry.
DUAL_CLONE = {
    "BF": "BF", "R0": "R1", "R1": "R0", "R2": "R2",
    "M": "M", "M0": "M1", "M1": "M0", "M2": "M2",
    "D": "D", "D1": "D1", "D2": "D2",
    "L": "L", "L0": "L1", "L1": "L0", "L2": "L2", "L3": "L3",
    "E": "V", "V": "E", "E0": "V1", "V1": "E0", "E1": "V0", "V0": "E1",
    "N": "N", "N2": "N2", "I": "I", "I0": "I1", "I1": "I0", "I2": "I2",
}


@lru_cache(maxsize=None)
def _all_masks(n):
    return np.arange(1 << (1 << n), dtype=np.uint64)


@lru_cache(maxsize=None)
def _clone_slice(name, n):
    if n > CLOSURE_ARITY_CAP:
        raise LimitError(f"clone slices are enumerated up to arity {CLOSURE_ARITY_CAP}",
                         CLOSURE_ARITY_CAP)
    masks = _all_masks(n)
    return tuple(int(x) for x in masks[CLONES[name].predicate(masks, n)])


@lru_cache(maxsize=None)
def _order():
    # smallest first; ties broken by name for determinism
    return tuple(sorted(CLONES, key=lambda c: (len(_clone_slice(c, 3)), c)))


def clone_order():
    """Named clones from smallest to largest (by ternary slice size)."""
    return _order()


def clone_subset(a: str, b: str) -> bool:
    """Lattice order on named clones, decided via bases and predicates."""
    cb = CLONES[b]
    return all(cb.contains_table(f.table) for f in CLONES[a].base)


# ---------------------------------------------------------------------------
# Closure


def _tables(B) -> list:
    out = []
    for f in B:
        t = _as_table(f)
        if not isinstance(t, TruthTable):
            raise TypeError(f"expected a truth table or operator, got {f!r}")
        out.append(t)
    return out


def _kernel_ops(tables):
    ops = []
    for t in tables:
        t = lift(t)
        ops.append((t.arity, t.mask))
    return ops


def _raw_closure(tables, n, target=-1, goal=-1):
    return _kernels.closure_fixpoint(n, _kernel_ops(tables), _projections(n), target, goal)


def _check_n(n):
    if not 1 <= n <= CLOSURE_ARITY_CAP:
        raise LimitError(f"closure arity must be within 1..{CLOSURE_ARITY_CAP}, got {n}",
                         CLOSURE_ARITY_CAP)


def _ternary_minors(t: TruthTable):
    """All tables obtained from t by identifying variables down to three."""
    full = _full(3)
    proj = _projections(3)
    seen = set()
    for phi in product(range(3), repeat=t.arity):
        seen.add(compose(t.mask, t.arity, [proj[j] for j in phi], full))
    return [TruthTable.from_mask(3, m) for m in sorted(seen)]


@dataclass(frozen=True)
class CloneDescriptor:
    named: str | None
    contains: frozenset
    within: frozenset
    exact: bool = True

    def __str__(self):
        if self.named:
            return self.named
        return ("unnamed: contains " + ",".join(sorted(self.contains)) +
                "; within " + ",".join(sorted(self.within)))


def _identify(key: frozenset) -> CloneDescriptor:
    tables = sorted(key, key=lambda t: (t.arity, t.bits))
    within = frozenset(c for c in CLONES
                       if all(CLONES[c].contains_table(t) for t in tables))
    order = [c for c in _order() if c in within]

    low = []
    for t in tables:
        low.extend([t] if t.arity <= 3 else _ternary_minors(t))
    # Every member lies in each clone of `within`, so once the closure is as
    # large as the smallest of them it cannot grow further.
    floor = min(len(_clone_slice(c, 3)) for c in order)
    slice3 = set(_raw_closure(low, 3, target=floor)[0])

    def generated(c, members):
        full = _full(3)
        proj = _projections(3)
        for f in CLONES[c].base:
            t = lift(f.table)
            m = compose(t.mask, t.arity, proj[:t.arity], full)
            if m not in members:
                return False
        return True

    for c in order:
        if generated(c, slice3):
            contains = frozenset(d for d in CLONES if clone_subset(d, c))
            return CloneDescriptor(c, contains, within, True)

    exact = all(t.arity <= 3 for t in tables)
    if not exact and all(t.arity <= CLOSURE_ARITY_CAP for t in tables):
        slice3 = set(_raw_closure(tables, 3)[0])
        exact = True
    contains = frozenset(c for c in CLONES if generated(c, slice3))
    named = next((c for c in order if c in contains), None)
    return CloneDescriptor(named, contains, within, exact)


_identify_cached = lru_cache(maxsize=512)(_identify)


def identify_clone(B) -> CloneDescriptor:
    """Locate ``[B]`` among the named clones.

    ``named`` is set when ``[B]`` equals a named clone.  ``within`` is exact
    (it comes from the membership predicates).  ``contains`` lists the named
    clones whose whole base lies in ``[B]``; with operators of arity five or
    more it may be an under-approximation, flagged by ``exact=False``.
    """
    tables = _tables(B)
    return _identify_cached(frozenset(tables))


def nary_closure(B, n: int) -> set:
    """The n-ary slice of ``[B]`` as a set of :class:`TruthTable`."""
    _check_n(n)
    return {TruthTable.from_mask(n, m) for m in _closure_masks(B, n)}


def _closure_masks(B, n):
    tables = _tables(B)
    if n <= 3 and all(t.arity <= 3 for t in tables):
        return set(_raw_closure(tables, n)[0])
    desc = identify_clone(tables)
    if desc.named is not None:
        # [B] is a named clone, so its slice is given by the predicate
        return set(_clone_slice(desc.named, n))
    return set(_raw_closure(tables, n)[0])


def contains_function(B, g) -> bool:
    """Whether ``g`` lies in ``[B]``."""
    g = lift(g)
    _check_n(g.arity)
    tables = _tables(B)
    if g.arity <= 2 and all(t.arity <= 3 for t in tables):
        return g.mask in _raw_closure(tables, g.arity, goal=g.mask)[0]
    desc = identify_clone(tables)
    if desc.named is not None:
        return CLONES[desc.named].contains_table(g)
    return g.mask in _raw_closure(tables, g.arity, goal=g.mask)[0]


def contains_clone(B, name: str) -> bool:
    """Whether every base function of the named clone lies in ``[B]``."""
    if name not in CLONES:
        raise KeyError(f"unknown clone {name!r}")
    return all(contains_function(B, f.table) for f in CLONES[name].base)


# ---------------------------------------------------------------------------
# Shape recognition for the small clones


def as_conjunction(table):
    """``"top"``/``"bot"`` for constants, the tuple of argument positions for
    a conjunction of them, and ``None`` for anything else."""
    t = _as_table(table)
    if all(t.bits):
        return "top"
    if not any(t.bits):
        return "bot"
    n = t.arity
    support = _support_and(t.bits.index(1), n)
    expect = TruthTable.from_function(n, lambda *xs: all(xs[j] for j in support))
    return support if expect == t else None


def _support_and(row, n):
    # the least true row of a conjunction has exactly the support bits set
    return tuple(j for j in range(n) if (row >> (n - 1 - j)) & 1)


def as_disjunction(table):
    """Dual of :func:`as_conjunction`."""
    shape = as_conjunction(dual(table))
    return {"top": "bot", "bot": "top"}.get(shape, shape) if isinstance(shape, str) else shape


def as_literal(table):
    """Describe an essentially unary table: ``("const", c)`` or
    ``("var", j, negated)``; ``None`` otherwise."""
    t = _as_table(table)
    if all(t.bits) or not any(t.bits):
        return ("const", t.bits[0])
    n = t.arity
    for j in range(n):
        pos = TruthTable.from_function(n, lambda *xs: xs[j])
        if pos == t:
            return ("var", j, False)
        if all(a != b for a, b in zip(pos.bits, t.bits)):
            return ("var", j, True)
    return None


# ---------------------------------------------------------------------------
# Witness terms


@dataclass(frozen=True)
class Var:
    index: int

    def __str__(self):
        return VARIABLE_NAMES[self.index] if self.index < len(VARIABLE_NAMES) else f"x{self.index}"


@dataclass(frozen=True)
class Call:
    op: NamedOperator
    args: tuple = ()

    def __str__(self):
        if not self.args:
            return self.op.name
        return f"{self.op.name}({','.join(map(str, self.args))})"


def eval_term(term, args):
    if isinstance(term, Var):
        return args[term.index]
    return evaluate(term.op.table, [eval_term(a, args) for a in term.args])


def term_table(term, n: int) -> TruthTable:
    return TruthTable.from_function(n, lambda *xs: eval_term(term, xs))


def _named_ops(B):
    out = []
    for i, f in enumerate(B):
        out.append(f if isinstance(f, NamedOperator) else NamedOperator(f"f{i}", f))
    return out


def witness_term(B, g):
    """A term over ``B`` computing ``g``, extracted from the closure run."""
    ops = _named_ops(B)
    g = _as_table(g)
    n = max(1, g.arity)
    _check_n(n)
    target = lift(g)
    members, parents = _raw_closure([o.table for o in ops], n, goal=target.mask)
    try:
        idx = members.index(target.mask)
    except ValueError:
        raise NotExpressibleError(f"{g} is not in the clone generated by "
                                  f"{', '.join(o.name for o in ops)}") from None

    memo = {}

    def build(i):
        if i in memo:
            return memo[i]
        p = parents[i]
        if p is None:
            term = Var(i)
        else:
            oi, kids = p
            o = ops[oi]
            term = Call(o, () if o.arity == 0 else tuple(build(c) for c in kids))
        memo[i] = term
        return term

    term = build(idx)
    assert term_table(term, n).bits == target.bits
    return term


__all__ = [
    "TruthTable", "NamedOperator", "OperatorSet", "CloneDescriptor", "Clone",
    "CLONES", "DUAL_CLONE", "PROPERTIES", "evaluate", "dual", "lift",
    "check_property", "nary_closure", "contains_function", "contains_clone",
    "identify_clone", "witness_term", "clone_order", "clone_subset",
    "Var", "Call", "eval_term", "term_table", "STANDARD_OPERATORS",
    "as_conjunction", "as_disjunction", "as_literal",
    "TOP", "BOT", "AND", "OR", "NOT", "XOR", "EQUIV", "NAND", "ANDNOT", "ANDOR", "SD",
    "MAJ", "MAJ_NEG", "XOR3", "XOR3_NEG", "AND_EQ",
]
