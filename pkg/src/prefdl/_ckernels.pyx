# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled kernels over 64-bit bitsets.

Same contracts as ``_pykernels``; callers must keep world and node bitsets
within 64 bits (``kernels`` enforces this and falls back otherwise).
"""
from libc.stdlib cimport malloc, free

ctypedef unsigned long long u64


cdef inline int lowbit(u64 m):
    cdef int i = 0
    while not (m >> i) & 1:
        i += 1
    return i


cdef u64* load(rows, int size) except NULL:
    cdef u64* out = <u64*> malloc(size * sizeof(u64))
    if out == NULL:
        raise MemoryError()
    cdef int i
    for i in range(size):
        out[i] = rows[i]
    return out


def closure(rows, u64 worlds):
    cdef int size = len(rows)
    cdef u64* up = load(rows, size)
    cdef int w, k
    cdef u64 bk
    try:
        for w in range(size):
            if (worlds >> w) & 1:
                up[w] = (up[w] & worlds) | (<u64>1 << w)
            else:
                up[w] = 0
        for k in range(size):
            if not (worlds >> k) & 1:
                continue
            bk = <u64>1 << k
            for w in range(size):
                if up[w] & bk:
                    up[w] |= up[k]
        return [up[w] for w in range(size)]
    finally:
        free(up)


def transitivity_witness(up_rows, u64 worlds):
    cdef int size = len(up_rows)
    cdef u64* up = load(up_rows, size)
    cdef int a, b
    cdef u64 ua, miss
    try:
        for a in range(size):
            if not (worlds >> a) & 1:
                continue
            ua = up[a]
            for b in range(size):
                if (ua >> b) & 1:
                    miss = up[b] & ~ua
                    if miss:
                        return a, b, lowbit(miss)
        return None
    finally:
        free(up)


def induced_up(node_masks, pred_rows, u64 worlds, int size):
    cdef int nn = len(node_masks)
    cdef u64* nodes = load(node_masks, nn) if nn else NULL
    cdef u64* pred = load(pred_rows, nn) if nn else NULL
    cdef u64* sat = <u64*> malloc(size * sizeof(u64))
    cdef int w, x, i
    cdef u64 s, bad, good, row
    cdef bint ok
    try:
        for w in range(size):
            s = 0
            if (worlds >> w) & 1:
                for i in range(nn):
                    if (nodes[i] >> w) & 1:
                        s |= <u64>1 << i
            sat[w] = s
        out = [0] * size
        for w in range(size):
            if not (worlds >> w) & 1:
                continue
            row = 0
            for x in range(size):
                if not (worlds >> x) & 1:
                    continue
                bad = sat[x] & ~sat[w]
                good = sat[w] & ~sat[x]
                ok = True
                i = 0
                while bad:
                    if bad & 1 and not (pred[i] & good):
                        ok = False
                        break
                    bad >>= 1
                    i += 1
                if ok:
                    row |= <u64>1 << x
            out[w] = row
        return out
    finally:
        free(sat)
        if nn:
            free(nodes)
            free(pred)


def min_mask(up_rows, u64 s):
    cdef int size = len(up_rows)
    cdef u64* up = load(up_rows, size)
    cdef int w, x
    cdef u64 out = 0
    cdef bint minimal
    try:
        for w in range(size):
            if not (s >> w) & 1:
                continue
            minimal = True
            for x in range(size):
                if (s >> x) & 1 and (up[x] >> w) & 1 and not (up[w] >> x) & 1:
                    minimal = False
                    break
            if minimal:
                out |= <u64>1 << w
        return out
    finally:
        free(up)


def box_mask(up_rows, u64 worlds, u64 ext, bint strict):
    cdef int size = len(up_rows)
    cdef u64* up = load(up_rows, size)
    cdef int w, x
    cdef u64 bad = 0, row
    try:
        for x in range(size):
            if not ((worlds & ~ext) >> x) & 1:
                continue
            row = up[x]
            if strict:
                for w in range(size):
                    if (row >> w) & 1 and (up[w] >> x) & 1:
                        row &= ~(<u64>1 << w)
            bad |= row
        return worlds & ~bad
    finally:
        free(up)


_preorder_cache = {}


def preorders(int k):
    if k in _preorder_cache:
        return _preorder_cache[k]
    cdef int npairs = k * (k - 1)
    cdef int[64] pi
    cdef int[64] pj
    cdef u64[8] rows
    cdef int t = 0, i, j
    cdef u64 bits, limit
    cdef bint ok
    if k > 8:
        raise ValueError("preorders: k must be at most 8")
    for i in range(k):
        for j in range(k):
            if i != j:
                pi[t] = i
                pj[t] = j
                t += 1
    found = []
    limit = <u64>1 << npairs
    bits = 0
    while bits < limit:
        for i in range(k):
            rows[i] = <u64>1 << i
        for t in range(npairs):
            if (bits >> t) & 1:
                rows[pi[t]] |= <u64>1 << pj[t]
        ok = True
        for i in range(k):
            for j in range(k):
                if (rows[i] >> j) & 1 and rows[j] & ~rows[i]:
                    ok = False
                    break
            if not ok:
                break
        if ok:
            found.append(tuple([rows[i] for i in range(k)]))
        bits += 1
    result = tuple(found)
    _preorder_cache[k] = result
    return result
