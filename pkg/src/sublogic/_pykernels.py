"""Pure-Python implementations of the two hot loops.

``closure_fixpoint`` computes the n-ary slice of a clone by semi-naive
superposition; ``eliminate`` runs the type-elimination fixpoint.  The Cython
module ``_speedups`` exposes the same functions with identical results.
"""
from itertools import product

import numpy as np


def _minterms(k, table):
    rows = []
    for idx in range(1 << k):
        if (table >> idx) & 1:
            rows.append(tuple((idx >> (k - 1 - j)) & 1 for j in range(k)))
    return rows


def compose(table, k, children, full):
    """Bit-parallel ``f(g_1, ..., g_k)`` on n-ary tables packed in ints."""
    out = 0
    for row in _minterms(k, table):
        acc = full
        for bit, g in zip(row, children):
            acc &= g if bit else ~g
            if not acc:
                break
        out |= acc
    return out & full


def closure_fixpoint(n, ops, init, target=-1, goal=-1):
    """Close ``init`` under the operators ``ops`` on n-ary tables.

    ``ops`` is a list of ``(arity, table)`` with arity >= 1 and ``init`` a list
    of distinct n-ary tables.  Returns ``(members, parents)`` where
    ``parents[i]`` is ``None`` for seeds and ``(op_index, child_indices)``
    otherwise.  Stops early once ``target`` members exist or the table
    ``goal`` has been produced (``-1`` disables either test).
    """
    full = (1 << (1 << n)) - 1
    members = list(init)
    index = {m: i for i, m in enumerate(members)}
    parents = [None] * len(members)
    if 0 <= target <= len(members) or goal in index:
        return members, parents
    compiled = [(k, _minterms(k, f)) for k, f in ops]
    start = 0
    while start < len(members):
        end = len(members)
        for oi, (k, rows) in enumerate(compiled):
            for p in range(k):
                ranges = ([range(0, start)] * p + [range(start, end)]
                          + [range(0, end)] * (k - p - 1))
                for combo in product(*ranges):
                    gs = [members[c] for c in combo]
                    out = 0
                    for row in rows:
                        acc = full
                        for bit, g in zip(row, gs):
                            acc &= g if bit else ~g
                        out |= acc
                    out &= full
                    if out not in index:
                        index[out] = len(members)
                        members.append(out)
                        parents.append((oi, combo))
                        if 0 <= target <= len(members) or out == goal:
                            return members, parents
        start = end
    return members, parents


def eliminate(types, ones, zeros, q_bit, q_role, q_child, q_exists, n_roles):
    """Type elimination fixpoint.

    ``types`` holds T candidate bit-vectors.  ``ones[t, r]`` / ``zeros[t, r]``
    are the bits every r-successor of ``t`` must have set / cleared.  Each
    quantified subconcept ``q`` raises a demand on ``t``: an existential that
    is set in ``t`` needs a successor containing ``q_child[q]``, a universal
    that is clear in ``t`` needs a successor lacking it.  Returns the boolean
    survival mask and the number of demand checks performed.
    """
    types = np.asarray(types, dtype=np.uint64)
    T = len(types)
    alive = np.ones(T, dtype=bool)
    if T == 0 or len(q_bit) == 0:
        return alive, 0
    ones = np.asarray(ones, dtype=np.uint64).reshape(T, n_roles)
    zeros = np.asarray(zeros, dtype=np.uint64).reshape(T, n_roles)
    py_types = [int(x) for x in types]
    Q = len(q_bit)
    witness = {}
    checks = 0
    changed = True
    while changed:
        changed = False
        cache = {}
        for t in range(T):
            if not alive[t]:
                continue
            tv = py_types[t]
            for q in range(Q):
                ex = q_exists[q]
                active = bool(tv & q_bit[q]) if ex else not (tv & q_bit[q])
                if not active:
                    continue
                r = q_role[q]
                need1 = int(ones[t, r]) | (q_child[q] if ex else 0)
                need0 = int(zeros[t, r]) | (0 if ex else q_child[q])
                checks += 1
                w = witness.get((t, q))
                if w is not None and alive[w]:
                    continue
                key = (need1, need0)
                w = cache.get(key)
                if w is None or (w >= 0 and not alive[w]):
                    w = -1
                    if not need1 & need0:
                        hits = np.flatnonzero(
                            alive
                            & ((types & np.uint64(need1)) == np.uint64(need1))
                            & ((types & np.uint64(need0)) == 0))
                        if len(hits):
                            w = int(hits[0])
                    cache[key] = w
                if w < 0:
                    alive[t] = False
                    changed = True
                    break
                witness[(t, q)] = w
    return alive, checks
