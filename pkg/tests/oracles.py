"""Reference implementations written directly from the definitions.

These work on explicit Python sets of worlds and sets of (a, b) pairs, with
valuations as dicts, and share no code with the bitset implementation.
"""
from itertools import product

from prefdl import syntax as S


def valuation(w, symbols):
    n = len(symbols)
    return {s: bool(w >> (n - 1 - i) & 1) for i, s in enumerate(symbols)}


def truth(f, val):
    t = type(f)
    if t is S.Atom:
        return val[f.name]
    if t is S.Top:
        return True
    if t is S.Bottom:
        return False
    if t is S.Not:
        return not truth(f.arg, val)
    if t is S.And:
        return truth(f.left, val) and truth(f.right, val)
    if t is S.Or:
        return truth(f.left, val) or truth(f.right, val)
    if t is S.Implies:
        return (not truth(f.left, val)) or truth(f.right, val)
    if t is S.Iff:
        return truth(f.left, val) == truth(f.right, val)
    raise TypeError(t)


def sat_worlds(f, symbols, worlds=None):
    if worlds is None:
        worlds = range(1 << len(symbols))
    return {w for w in worlds if truth(f, valuation(w, symbols))}


class RelModel:
    """A model as a world set and a set of (a, b) pairs meaning a <= b."""

    def __init__(self, symbols, worlds, leq):
        self.symbols = tuple(symbols)
        self.worlds = set(worlds)
        self.leq = set(leq)

    @classmethod
    def of(cls, m):
        ws = set(S.iter_bits(m.worlds))
        return cls(m.st.symbols, ws, {(a, b) for a in ws for b in ws if m.leq(a, b)})

    def lt(self, a, b):
        return (a, b) in self.leq and (b, a) not in self.leq

    def minimal(self, s):
        return {w for w in s if not any(self.lt(x, w) for x in s)}

    def same(self, m):
        return self.worlds == set(S.iter_bits(m.worlds)) and self.leq == RelModel.of(m).leq


def is_preorder(worlds, leq):
    return (all((w, w) in leq for w in worlds)
            and all((a, c) in leq for a, b in leq for b2, c in leq if b == b2))


def count_preorders(k):
    pairs = [(a, b) for a in range(k) for b in range(k) if a != b]
    total = 0
    for bits in product((0, 1), repeat=len(pairs)):
        rel = {(w, w) for w in range(k)} | {p for p, on in zip(pairs, bits) if on}
        total += is_preorder(range(k), rel)
    return total


def induced(nodes, prec, worlds, symbols):
    """Order induced by a graph, straight from the definition.

    ``nodes``: list of formulas; ``prec``: set of (i, j) meaning i ≺ j,
    already transitively closed.
    """
    vals = {w: valuation(w, symbols) for w in worlds}
    sat = {(i, w): truth(f, vals[w]) for i, f in enumerate(nodes) for w in worlds}
    leq = set()
    for w in worlds:
        for x in worlds:
            ok = True
            for j in range(len(nodes)):
                if sat[j, x] and not sat[j, w]:
                    if not any((i, j) in prec and sat[i, w] and not sat[i, x]
                               for i in range(len(nodes))):
                        ok = False
                        break
            if ok:
                leq.add((w, x))
    return RelModel(symbols, worlds, leq)


def transitive(edges, k):
    rel = set(edges)
    changed = True
    while changed:
        changed = False
        for a, b in list(rel):
            for c, d in list(rel):
                if b == c and (a, d) not in rel:
                    rel.add((a, d))
                    changed = True
    return rel


def natural(rm, phi):
    """Natural revision: minimal phi-worlds become one bottom cluster."""
    best = rm.minimal(sat_worlds(phi, rm.symbols, rm.worlds))
    if not best:
        raise ValueError("revision by a formula with no worlds in the model")
    leq = {(a, b) for a in best for b in rm.worlds}
    leq |= {(a, b) for a, b in rm.leq if a not in best and b not in best}
    return RelModel(rm.symbols, rm.worlds, leq)


def modal_ext(rm, f, revise=natural):
    """Set of worlds of ``rm`` where the modal formula ``f`` holds."""
    t = type(f)
    W = rm.worlds
    if t in (S.Atom, S.Top, S.Bottom):
        return sat_worlds(f, rm.symbols, W)
    if t is S.Dynamic:
        return modal_ext(revise(rm, f.arg), f.body, revise)
    if t in (S.And, S.Or, S.Implies, S.Iff):
        a, b = modal_ext(rm, f.left, revise), modal_ext(rm, f.right, revise)
        return {w for w in W if {S.And: lambda x, y: x and y, S.Or: lambda x, y: x or y,
                                 S.Implies: lambda x, y: (not x) or y,
                                 S.Iff: lambda x, y: x == y}[t](w in a, w in b)}
    sub = modal_ext(rm, f.arg, revise)
    if t is S.Not:
        return W - sub
    if t is S.Everywhere:
        return set(W) if sub == W else set()
    if t is S.Somewhere:
        return set(W) if sub else set()
    if t is S.BoxLeq:
        return {w for w in W if all(x in sub for x in W if (x, w) in rm.leq)}
    if t is S.BoxLt:
        return {w for w in W if all(x in sub for x in W if rm.lt(x, w))}
    if t is S.DiamondLeq:
        return {w for w in W if any(x in sub for x in W if (x, w) in rm.leq)}
    if t is S.DiamondLt:
        return {w for w in W if any(x in sub for x in W if rm.lt(x, w))}
    if t is S.Mu:
        return rm.minimal(sub)
    raise TypeError(t)


def modal(rm, f, w, revise=natural):
    return w in modal_ext(rm, f, revise)
