"""Pure-Python kernels. Reference semantics for the compiled twin in ``_ckernels``.

All relations are "up rows": ``up[w]`` is the bitset of worlds ``x`` with
``w <= x``; rows of worlds outside the model are 0.  Bitsets are Python ints
so these functions work for any number of worlds or nodes.
"""
from functools import lru_cache


def _bits(mask):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def closure(rows, worlds):
    """Reflexive-transitive closure of ``rows`` restricted to ``worlds``."""
    up = [0] * len(rows)
    for w in _bits(worlds):
        up[w] = (rows[w] & worlds) | (1 << w)
    for k in _bits(worlds):
        bk = 1 << k
        uk = up[k]
        for w in _bits(worlds):
            if up[w] & bk:
                up[w] |= uk
    return up


def transitivity_witness(up, worlds):
    """First ``(a, b, c)`` with a<=b, b<=c, not a<=c; ``None`` if transitive."""
    for a in _bits(worlds):
        ua = up[a]
        for b in _bits(ua):
            miss = up[b] & ~ua
            if miss:
                return a, b, (miss & -miss).bit_length() - 1
    return None


def induced_up(node_masks, pred, worlds, size):
    """Preorder induced on ``worlds`` by a priority graph.

    ``node_masks[i]`` is the fingerprint of node i and ``pred[i]`` the bitset
    of nodes strictly before it.  ``w <= x`` iff every node satisfied by x but
    not w has a predecessor satisfied by w but not x.
    """
    ws = list(_bits(worlds))
    sat = {}
    for w in ws:
        s = 0
        for i, m in enumerate(node_masks):
            if m >> w & 1:
                s |= 1 << i
        sat[w] = s
    up = [0] * size
    for w in ws:
        sw = sat[w]
        row = 0
        for x in ws:
            sx = sat[x]
            bad = sx & ~sw
            good = sw & ~sx
            ok = True
            while bad:
                low = bad & -bad
                if not pred[low.bit_length() - 1] & good:
                    ok = False
                    break
                bad ^= low
            if ok:
                row |= 1 << x
        up[w] = row
    return up


def min_mask(up, s):
    """Members of ``s`` with no strictly smaller member of ``s``."""
    out = 0
    members = list(_bits(s))
    for w in members:
        uw = up[w]
        for x in members:
            # x < w: w in up[x] and x not in up[w]
            if up[x] >> w & 1 and not uw >> x & 1:
                break
        else:
            out |= 1 << w
    return out


def box_mask(up, worlds, ext, strict):
    """Worlds all of whose (strict) predecessors lie in ``ext``."""
    bad = 0
    for x in _bits(worlds & ~ext):
        row = up[x]
        if strict:
            # keep only w with not w <= x
            for w in _bits(row):
                if up[w] >> x & 1:
                    row &= ~(1 << w)
        bad |= row
    return worlds & ~bad


@lru_cache(maxsize=None)
def preorders(k):
    """All preorders on ``k`` points, as tuples of up rows over positions."""
    pairs = [(i, j) for i in range(k) for j in range(k) if i != j]
    found = []
    for bits in range(1 << len(pairs)):
        rows = [1 << i for i in range(k)]
        for t, (i, j) in enumerate(pairs):
            if bits >> t & 1:
                rows[i] |= 1 << j
        ok = True
        for i in range(k):
            ri = rows[i]
            for j in _bits(ri):
                if rows[j] & ~ri:
                    ok = False
                    break
            if not ok:
                break
        if ok:
            found.append(tuple(rows))
    return tuple(found)
