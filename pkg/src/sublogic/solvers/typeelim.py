"""Type elimination: the general exponential-time decision procedure.

A type is a bit vector over the subconcept closure that is consistent with
the operators and the TBox.  Types whose existential (or failed universal)
demands cannot be met by any surviving type are removed until nothing
changes.  The ABox is then matched against the survivors by backtracking.
"""
from __future__ import annotations

import numpy as np

from .. import _kernels
from ..errors import LimitError
from ..limits import current
from ..syntax import Apply, Atomic, Exists, Forall, Interpretation, unique_subconcepts
from .result import SAT, UNSAT, SolveResult


def _heights(closure):
    h = {}

    def height(c):
        if c not in h:
            if isinstance(c, Apply):
                h[c] = 1 + max((height(k) for k in c.children), default=0)
            else:
                h[c] = 0
        return h[c]

    for c in closure:
        height(c)
    return h


class TypeSystem:
    """Candidate types for an instance, before elimination."""

    def __init__(self, instance, limit=None):
        limit = current().closure if limit is None else limit
        self.instance = instance
        self.closure = unique_subconcepts(instance.concepts())
        if len(self.closure) > limit:
            raise LimitError(f"closure has {len(self.closure)} subconcepts, limit is {limit}",
                             limit)
        self.index = {c: i for i, c in enumerate(self.closure)}
        self.bit = {c: 1 << i for c, i in self.index.items()}
        roles = {c.role for c in self.closure if isinstance(c, (Exists, Forall))}
        roles |= {r for r, _, _ in instance.ontology.abox_roles}
        self.roles = sorted(roles)
        self.role_index = {r: i for i, r in enumerate(self.roles)}
        self._enumerate()

    def _enumerate(self):
        free = [c for c in self.closure if not isinstance(c, Apply)]
        derived = sorted((c for c in self.closure if isinstance(c, Apply)),
                         key=_heights(self.closure).get)
        n = 1 << len(free)
        idx = np.arange(n, dtype=np.uint64)
        vals = {}
        for j, c in enumerate(free):
            vals[c] = ((idx >> np.uint64(j)) & np.uint64(1)).astype(bool)
        for c in derived:
            code = np.zeros(n, dtype=np.int64)
            for k in c.children:
                code = (code << 1) | vals[k]
            vals[c] = np.asarray(c.op.table.bits, dtype=bool)[code]
        ok = np.ones(n, dtype=bool)
        for ax in self.instance.tbox:
            ok &= ~vals[ax.lhs] | vals[ax.rhs]
        types = np.zeros(int(ok.sum()), dtype=np.uint64)
        for c, i in self.index.items():
            types |= vals[c][ok].astype(np.uint64) << np.uint64(i)
        self.candidates = n
        self.types = types

        T, R = len(types), max(1, len(self.roles))
        ones = np.zeros((T, R), dtype=np.uint64)
        zeros = np.zeros((T, R), dtype=np.uint64)
        q_bit, q_role, q_child, q_exists = [], [], [], []
        for c in self.closure:
            if not isinstance(c, (Exists, Forall)):
                continue
            r = self.role_index[c.role]
            has = (types & np.uint64(self.bit[c])) != 0
            child = np.uint64(self.bit[c.child])
            if isinstance(c, Forall):
                ones[has, r] |= child
            else:
                zeros[~has, r] |= child
            q_bit.append(self.bit[c])
            q_role.append(r)
            q_child.append(self.bit[c.child])
            q_exists.append(1 if isinstance(c, Exists) else 0)
        self.ones, self.zeros = ones, zeros
        self.demands = (q_bit, q_role, q_child, q_exists)

    def eliminate(self):
        alive, checks = _kernels.eliminate(self.types, self.ones, self.zeros,
                                           *self.demands, self.ones.shape[1])
        return np.asarray(alive, dtype=bool), checks

    def compatible(self, t, r, alive):
        """Mask of alive types that may be r-successors of type index t."""
        if r not in self.role_index:
            return alive.copy()
        ri = self.role_index[r]
        need1, need0 = self.ones[t, ri], self.zeros[t, ri]
        return alive & ((self.types & need1) == need1) & ((self.types & need0) == 0)

    def has(self, c):
        return (self.types & np.uint64(self.bit[c])) != 0


def _assign_individuals(ts, alive):
    """Backtracking search for a type per individual; returns a dict or None."""
    onto = ts.instance.ontology
    inds = list(dict.fromkeys([a for _, a in onto.abox_concepts]
                              + [x for _, a, b in onto.abox_roles for x in (a, b)]))
    if not inds:
        return {}
    cand = {a: alive.copy() for a in inds}
    for c, a in onto.abox_concepts:
        cand[a] &= ts.has(c)
    edges = onto.abox_roles

    def consistent(cands):
        # arc consistency over the role assertions, in both directions
        changed = True
        while changed:
            changed = False
            for r, a, b in edges:
                keep = np.zeros_like(cands[a])
                for t in np.flatnonzero(cands[a]):
                    if (ts.compatible(t, r, cands[b])).any():
                        keep[t] = True
                if (keep != cands[a]).any():
                    cands[a] = keep
                    changed = True
                back = np.zeros_like(cands[b])
                for t in np.flatnonzero(cands[a]):
                    back |= ts.compatible(t, r, cands[b])
                if (back != cands[b]).any():
                    cands[b] = back
                    changed = True
            if any(not v.any() for v in cands.values()):
                return False
        return True

    def search(i, cands):
        if not consistent(cands):
            return None
        if i == len(inds):
            return {a: int(np.flatnonzero(cands[a])[0]) for a in inds}
        a = inds[i]
        for t in np.flatnonzero(cands[a]):
            trial = {k: v.copy() for k, v in cands.items()}
            trial[a] = np.zeros_like(trial[a])
            trial[a][t] = True
            got = search(i + 1, trial)
            if got is not None:
                return got
        return None

    return search(0, cand)


def _build_model(ts, alive, seeds, assignment):
    chosen = list(dict.fromkeys(seeds))
    pos = {t: i for i, t in enumerate(chosen)}
    q_bit, q_role, q_child, q_exists = ts.demands
    k = 0
    while k < len(chosen):
        t = chosen[k]
        tv = int(ts.types[t])
        for qb, qr, qc, qe in zip(q_bit, q_role, q_child, q_exists):
            active = bool(tv & qb) if qe else not (tv & qb)
            if not active:
                continue
            comp = ts.compatible(t, ts.roles[qr], alive)
            hit = comp & (((ts.types & np.uint64(qc)) != 0) == bool(qe))
            w = int(np.flatnonzero(hit)[0])
            if w not in pos:
                pos[w] = len(chosen)
                chosen.append(w)
        k += 1
    domain = tuple(range(len(chosen)))
    atoms = [c for c in ts.closure if isinstance(c, Atomic)]
    concept_ext = {c.name: {pos[t] for t in chosen if int(ts.types[t]) & ts.bit[c]}
                   for c in atoms}
    mask = np.zeros(len(ts.types), dtype=bool)
    mask[chosen] = True
    role_ext = {}
    for r in ts.roles:
        pairs = set()
        for t in chosen:
            for s in np.flatnonzero(ts.compatible(t, r, mask)):
                pairs.add((pos[t], pos[int(s)]))
        role_ext[r] = pairs
    inds = {a: pos[t] for a, t in assignment.items()}
    return Interpretation(domain, concept_ext, role_ext, inds)


def solve_typeelim(instance, model: bool = False, limit: int | None = None) -> SolveResult:
    ts = TypeSystem(instance, limit)
    alive, checks = ts.eliminate()
    stats = {"types": int(ts.candidates), "coherent": int(len(ts.types)),
             "alive": int(alive.sum()), "rules": int(checks)}
    result = lambda status, **kw: SolveResult(status, "typeelim", stats=stats, **kw)  # noqa
    if not alive.any():
        return result(UNSAT, witness="every type was eliminated")
    seeds = []
    if instance.query is not None:
        hit = np.flatnonzero(alive & ts.has(instance.query))
        if not len(hit):
            return result(UNSAT, witness="no surviving type contains the query")
        seeds.append(int(hit[0]))
    assignment = _assign_individuals(ts, alive)
    if assignment is None:
        return result(UNSAT, witness="the ABox admits no consistent type assignment")
    seeds.extend(assignment.values())
    if not seeds:
        seeds.append(int(np.flatnonzero(alive)[0]))
    m = _build_model(ts, alive, seeds, assignment) if model else None
    return result(SAT, model=m)
