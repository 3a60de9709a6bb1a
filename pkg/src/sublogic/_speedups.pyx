# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled versions of the closure and type-elimination kernels.

Same contracts as :mod:`sublogic._pykernels`.
"""
from libc.stdlib cimport malloc, free, calloc
from libc.stdint cimport uint64_t, uint32_t

import numpy as np

DEF MAX_K = 8


cdef inline uint32_t _compose_rows(uint32_t f, int k, uint32_t *g, int rows) nogil:
    cdef uint32_t out = 0
    cdef int i, j, idx
    for i in range(rows):
        idx = 0
        for j in range(k):
            idx = (idx << 1) | ((g[j] >> i) & 1)
        out |= ((f >> idx) & 1) << i
    return out


cdef inline uint32_t _compose_minterms(uint32_t f, int k, uint32_t *g, uint32_t full) nogil:
    cdef uint32_t out = 0, acc
    cdef int idx, j
    for idx in range(1 << k):
        if (f >> idx) & 1:
            acc = full
            for j in range(k):
                if (idx >> (k - 1 - j)) & 1:
                    acc &= g[j]
                else:
                    acc &= ~g[j]
            out |= acc
    return out & full


cdef inline int _popcount(uint32_t x) nogil:
    cdef int c = 0
    while x:
        x &= x - 1
        c += 1
    return c


def closure_fixpoint(int n, list ops, list init, long target=-1, long long goal=-1):
    if n < 1 or n > 5:
        raise ValueError("closure kernel supports 1 <= n <= 5")
    cdef int rows = 1 << n
    cdef unsigned long space = 1UL << rows
    cdef long cap = <long>space if n <= 4 else 1 << 20
    cdef int n_ops = len(ops)
    cdef int *ar = <int *>malloc(sizeof(int) * (n_ops + 1))
    cdef uint32_t *ft = <uint32_t *>malloc(sizeof(uint32_t) * (n_ops + 1))
    cdef uint32_t *members = <uint32_t *>malloc(sizeof(uint32_t) * cap)
    cdef int *p_op = <int *>malloc(sizeof(int) * cap)
    cdef int *p_ch = <int *>malloc(sizeof(int) * cap * MAX_K)
    cdef unsigned char *seen = NULL
    seen_py = None
    if n <= 4:
        seen = <unsigned char *>calloc(space, 1)
    else:
        seen_py = set()
    cdef long count = 0, start = 0, end, c
    cdef int oi, k, p, j, pos
    cdef int lo[MAX_K]
    cdef int hi[MAX_K]
    cdef int cur[MAX_K]
    cdef uint32_t g[MAX_K]
    cdef uint32_t out
    cdef bint done = False
    cdef uint32_t full = <uint32_t>((1UL << rows) - 1)
    cdef unsigned char *use_min = <unsigned char *>malloc(n_ops + 1)
    try:
        for oi in range(n_ops):
            ar[oi] = ops[oi][0]
            ft[oi] = ops[oi][1]
            if ar[oi] > 5 or ar[oi] < 1:
                raise ValueError("operator arity out of kernel range")
            use_min[oi] = _popcount(ft[oi]) < rows
        for m in init:
            out = m
            members[count] = out
            p_op[count] = -1
            count += 1
            if seen != NULL:
                seen[out] = 1
            else:
                seen_py.add(out)
        if 0 <= target <= count or (goal >= 0 and seen_has(seen, seen_py, goal)):
            done = True
        while not done and start < count:
            end = count
            for oi in range(n_ops):
                if done:
                    break
                k = ar[oi]
                for p in range(k):
                    if done:
                        break
                    for j in range(k):
                        if j < p:
                            lo[j] = 0; hi[j] = start
                        elif j == p:
                            lo[j] = start; hi[j] = end
                        else:
                            lo[j] = 0; hi[j] = end
                    if any_empty(lo, hi, k):
                        continue
                    for j in range(k):
                        cur[j] = lo[j]
                    while True:
                        for j in range(k):
                            g[j] = members[cur[j]]
                        if use_min[oi]:
                            out = _compose_minterms(ft[oi], k, g, full)
                        else:
                            out = _compose_rows(ft[oi], k, g, rows)
                        if (seen != NULL and not seen[out]) or (seen == NULL and out not in seen_py):
                            if count >= cap:
                                raise MemoryError("closure kernel capacity exceeded")
                            if seen != NULL:
                                seen[out] = 1
                            else:
                                seen_py.add(out)
                            members[count] = out
                            p_op[count] = oi
                            for j in range(k):
                                p_ch[count * MAX_K + j] = cur[j]
                            count += 1
                            if 0 <= target <= count or out == goal:
                                done = True
                                break
                        # odometer, last position fastest
                        pos = k - 1
                        while pos >= 0:
                            cur[pos] += 1
                            if cur[pos] < hi[pos]:
                                break
                            cur[pos] = lo[pos]
                            pos -= 1
                        if pos < 0:
                            break
            start = end
        result = [members[c] for c in range(count)]
        parents = []
        for c in range(count):
            if p_op[c] < 0:
                parents.append(None)
            else:
                parents.append((p_op[c], tuple(p_ch[c * MAX_K + j] for j in range(ar[p_op[c]]))))
        return result, parents
    finally:
        free(ar); free(ft); free(use_min); free(members); free(p_op); free(p_ch)
        if seen != NULL:
            free(seen)


cdef bint seen_has(unsigned char *seen, object seen_py, long long x):
    if seen != NULL:
        return seen[x] != 0
    return x in seen_py


cdef inline bint any_empty(int *lo, int *hi, int k):
    cdef int j
    for j in range(k):
        if lo[j] >= hi[j]:
            return True
    return False


def eliminate(types, ones, zeros, q_bit, q_role, q_child, q_exists, int n_roles):
    cdef uint64_t[::1] tv = np.ascontiguousarray(types, dtype=np.uint64)
    cdef Py_ssize_t T = tv.shape[0]
    alive_arr = np.ones(T, dtype=bool)
    cdef int Q = len(q_bit)
    if T == 0 or Q == 0:
        return alive_arr, 0
    cdef uint64_t[::1] on = np.ascontiguousarray(ones, dtype=np.uint64).reshape(-1)
    cdef uint64_t[::1] ze = np.ascontiguousarray(zeros, dtype=np.uint64).reshape(-1)
    cdef uint64_t[::1] qb = np.ascontiguousarray(q_bit, dtype=np.uint64)
    cdef long[::1] qr = np.ascontiguousarray(q_role, dtype=np.int64)
    cdef uint64_t[::1] qc = np.ascontiguousarray(q_child, dtype=np.uint64)
    cdef unsigned char[::1] qe = np.ascontiguousarray(q_exists, dtype=np.uint8)
    cdef unsigned char[::1] alive = np.ones(T, dtype=np.uint8)
    cdef long[::1] wit = np.full(T * Q, -1, dtype=np.int64)
    cdef Py_ssize_t t, w, s
    cdef int q, r
    cdef uint64_t need1, need0, x
    cdef bint changed = True, active, found
    cdef long checks = 0
    with nogil:
        while changed:
            changed = False
            for t in range(T):
                if not alive[t]:
                    continue
                x = tv[t]
                for q in range(Q):
                    if qe[q]:
                        active = (x & qb[q]) != 0
                    else:
                        active = (x & qb[q]) == 0
                    if not active:
                        continue
                    checks += 1
                    w = wit[t * Q + q]
                    if w >= 0 and alive[w]:
                        continue
                    r = qr[q]
                    need1 = on[t * n_roles + r]
                    need0 = ze[t * n_roles + r]
                    if qe[q]:
                        need1 = need1 | qc[q]
                    else:
                        need0 = need0 | qc[q]
                    found = False
                    if (need1 & need0) == 0:
                        for s in range(T):
                            if alive[s] and (tv[s] & need1) == need1 and (tv[s] & need0) == 0:
                                wit[t * Q + q] = s
                                found = True
                                break
                    if not found:
                        alive[t] = 0
                        changed = True
                        break
    for t in range(T):
        alive_arr[t] = alive[t] != 0
    return alive_arr, checks
