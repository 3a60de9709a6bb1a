"""Exhaustive model search over small domains.

For a fixed domain size, role extensions and the individual map are
enumerated explicitly while all atom extensions are evaluated at once with
numpy: the extension of a concept is an array holding, per atom assignment,
a bitmask over the domain.
"""
from __future__ import annotations

from itertools import product

import numpy as np

from ..errors import LimitError
from ..limits import current
from ..syntax import Apply, Atomic, Exists, Interpretation, signature
from .result import SAT, UNKNOWN, UNSAT, SolveResult


def _growth_maps(k, d):
    """Individual maps up to renaming of elements (restricted growth strings)."""
    def go(prefix, top):
        if len(prefix) == k:
            yield tuple(prefix)
            return
        for x in range(min(top + 2, d)):
            yield from go(prefix + [x], max(top, x))
    yield from go([], -1)


def _count_maps(k, d):
    return sum(1 for _ in _growth_maps(k, d))


class _Evaluator:
    def __init__(self, atoms, d):
        self.d = d
        self.full = np.uint64((1 << d) - 1)
        self.n = 1 << (d * len(atoms))
        idx = np.arange(self.n, dtype=np.uint64)
        self.atom_ext = {a: (idx >> np.uint64(j * d)) & self.full for j, a in enumerate(atoms)}

    def run(self, concepts, succ):
        memo = {}

        def ev(c):
            if c in memo:
                return memo[c]
            if isinstance(c, Atomic):
                out = self.atom_ext.get(c.name, np.zeros(self.n, dtype=np.uint64))
            elif isinstance(c, Apply):
                kids = [ev(k) for k in c.children]
                out = np.zeros(self.n, dtype=np.uint64)
                k = len(kids)
                for row, bit in enumerate(c.op.table.bits):
                    if not bit:
                        continue
                    acc = np.full(self.n, self.full, dtype=np.uint64)
                    for j, kid in enumerate(kids):
                        acc &= kid if (row >> (k - 1 - j)) & 1 else ~kid
                    out |= acc
                out &= self.full
            else:
                inner = ev(c.child)
                out = np.zeros(self.n, dtype=np.uint64)
                for x, s in enumerate(succ[c.role]):
                    s = np.uint64(s)
                    if isinstance(c, Exists):
                        hit = (inner & s) != 0
                    else:
                        hit = (inner & s) == s
                    out |= hit.astype(np.uint64) << np.uint64(x)
            memo[c] = out
            return out

        return ev


def _decode(atoms, d, k, succ, roles, ind_map, inds):
    ext = {a: {x for x in range(d) if (k >> (j * d + x)) & 1} for j, a in enumerate(atoms)}
    role_ext = {r: {(x, y) for x in range(d) for y in range(d) if (succ[r][x] >> y) & 1}
                for r in roles}
    return Interpretation(tuple(range(d)), ext, role_ext, dict(zip(inds, ind_map)))


def _quantifier_free(instance, atoms, inds, budget, want_model):
    """Elements of a quantifier-free instance do not interact: check valuations."""
    if (1 << len(atoms)) > budget:
        raise LimitError(f"2^{len(atoms)} valuations exceed the brute-force budget", budget)
    ev = _Evaluator(atoms, 1).run(list(instance.concepts()), {})
    good = np.ones(1 << len(atoms), dtype=bool)
    for ax in instance.tbox:
        good &= (ev(ax.lhs) & ~ev(ax.rhs) & np.uint64(1)) == 0
    needs = [good.copy() for _ in inds]
    for c, a in instance.ontology.abox_concepts:
        i = inds.index(a)
        needs[i] &= (ev(c) & np.uint64(1)) != 0
    if instance.query is not None:
        needs.append(good & ((ev(instance.query) & np.uint64(1)) != 0))
    if not needs:
        needs.append(good)
    stats = {"types": int(1 << len(atoms)), "rules": 0}
    if not all(n.any() for n in needs):
        return SolveResult(UNSAT, "brute", stats=stats, witness="no valuation fits")
    model = None
    if want_model:
        picks = [int(np.flatnonzero(n)[0]) for n in needs]
        ext = {a: {e for e, v in enumerate(picks) if (v >> j) & 1} for j, a in enumerate(atoms)}
        inds_map = {a: i for i, a in enumerate(inds)}
        roles = {}
        for r, a, b in instance.ontology.abox_roles:
            roles.setdefault(r, set()).add((inds_map[a], inds_map[b]))
        model = Interpretation(tuple(range(len(picks))), ext, roles, inds_map)
    return SolveResult(SAT, "brute", model=model, stats=stats)


def solve_bruteforce(instance, max_domain: int | None = None, model: bool = True,
                     budget: int | None = None) -> SolveResult:
    lim = current()
    max_domain = lim.domain if max_domain is None else max_domain
    budget = lim.brute_budget if budget is None else budget
    if max_domain < 1:
        raise ValueError("max_domain must be at least 1")
    sig = signature(instance)
    atoms = list(sig.atoms)
    inds = list(sig.individuals)
    roles = list(sig.roles)
    bound = max(1, len(inds) + (1 if instance.query is not None else 0))
    if not sig.quantifiers and max_domain >= bound:
        return _quantifier_free(instance, atoms, inds, budget, model)

    concepts = list(instance.concepts())
    onto = instance.ontology
    explored = 0
    for d in range(1, max_domain + 1):
        cost = (1 << (d * len(atoms))) * (1 << (d * d * len(roles))) * _count_maps(len(inds), d)
        if cost > budget:
            if d == 1:
                raise LimitError("signature too large for exhaustive enumeration", budget)
            break
        explored = d
        evaluator = _Evaluator(atoms, d)
        full = (1 << d) - 1
        for bits in product(range(1 << (d * d)), repeat=len(roles)):
            succ = {r: [(b >> (x * d)) & full for x in range(d)] for r, b in zip(roles, bits)}
            ev = evaluator.run(concepts, succ)
            ok = np.ones(evaluator.n, dtype=bool)
            for ax in onto.tbox:
                ok &= (ev(ax.lhs) & ~ev(ax.rhs)) == 0
            if instance.query is not None:
                ok &= ev(instance.query) != 0
            if not ok.any():
                continue
            for ind_map in _growth_maps(len(inds), d):
                where = dict(zip(inds, ind_map))
                if any(not (succ[r][where[a]] >> where[b]) & 1 for r, a, b in onto.abox_roles):
                    continue
                hit = ok.copy()
                for c, a in onto.abox_concepts:
                    hit &= ((ev(c) >> np.uint64(where[a])) & np.uint64(1)) == 1
                if hit.any():
                    k = int(np.flatnonzero(hit)[0])
                    m = _decode(atoms, d, k, succ, roles, ind_map, inds) if model else None
                    return SolveResult(SAT, "brute", model=m,
                                       stats={"types": d, "rules": 0})
    stats = {"types": explored, "rules": 0}
    if not sig.quantifiers and explored >= bound:
        return SolveResult(UNSAT, "brute", stats=stats, witness=f"no model up to size {explored}")
    return SolveResult(UNKNOWN, "brute", stats=stats,
                       witness=f"no model up to size {explored}")
