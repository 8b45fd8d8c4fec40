"""Conditionally-grounded preference models and modal model checking."""
from __future__ import annotations

import os
import random
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator

from . import kernels
from .errors import BoundExceededError, ModelError
from .syntax import (And, Atom, Bottom, BoxLeq, BoxLt, DiamondLeq, DiamondLt,
                     Dynamic, Everywhere, Formula, Iff, Implies, Mu, Not, Or,
                     Somewhere, SymbolTable, Top, as_mask, fingerprint,
                     iter_bits, worlds_desc)

DEFAULT_MAX_SYMBOLS = 2
MAX_SAMPLE_SYMBOLS = 4


def max_exhaustive_symbols() -> int:
    """Exhaustive-enumeration cap; ``PREFDL_MAX_SYMBOLS`` overrides it."""
    raw = os.environ.get("PREFDL_MAX_SYMBOLS")
    return int(raw) if raw else DEFAULT_MAX_SYMBOLS


@dataclass(frozen=True)
class Verdict:
    """Outcome of a structural validation, with the first violation found."""
    ok: bool
    witness: tuple | None = None
    reason: str = ""

    def __bool__(self):
        return self.ok


@dataclass(frozen=True)
class PreferenceModel:
    """Worlds plus a plausibility preorder; smaller is more plausible.

    ``up[w]`` is the bitset of worlds ``x`` with ``w <= x`` (0 for worlds
    outside the model), so the relation is a dense bit matrix indexed by
    valuation.  Use :meth:`from_pairs` to build one from generators.
    """
    st: SymbolTable
    worlds: int
    up: tuple[int, ...]

    @classmethod
    def from_pairs(cls, st: SymbolTable, worlds, pairs: Iterable[tuple[int, int]] = ()):
        """Reflexive-transitive closure of the given ``(a, b)`` = a<=b pairs."""
        worlds = as_mask(worlds)
        if worlds == 0:
            raise ModelError("a preference model needs at least one world")
        if worlds & ~st.full:
            raise ModelError("world index out of range")
        rows = [0] * st.size
        for a, b in pairs:
            if not (worlds >> a & 1 and worlds >> b & 1):
                raise ModelError(
                    f"pair {st.bitstring(a)}<={st.bitstring(b)} mentions a world outside the model")
            rows[a] |= 1 << b
        return cls(st, worlds, tuple(kernels.closure(rows, worlds)))

    @classmethod
    def chain(cls, st: SymbolTable, order: Iterable[int]):
        """Total order, most plausible first."""
        order = list(order)
        return cls.from_pairs(st, order, zip(order, order[1:]))

    @classmethod
    def flat(cls, st: SymbolTable, worlds):
        """All worlds equi-plausible."""
        worlds = as_mask(worlds)
        return cls(st, worlds, tuple((worlds if worlds >> w & 1 else 0) for w in range(st.size)))

    def leq(self, a: int, b: int) -> bool:
        return bool(self.up[a] >> b & 1)

    def lt(self, a: int, b: int) -> bool:
        return self.leq(a, b) and not self.leq(b, a)

    @cached_property
    def down(self) -> tuple[int, ...]:
        """``down[w]``: bitset of worlds ``x`` with ``x <= w``."""
        rows = [0] * self.st.size
        for x in iter_bits(self.worlds):
            for w in iter_bits(self.up[x]):
                rows[w] |= 1 << x
        return tuple(rows)

    @property
    def world_list(self) -> list[int]:
        return worlds_desc(self.worlds)

    def __len__(self):
        return bin(self.worlds).count("1")

    def __str__(self):
        from .formats import model_to_text
        return model_to_text(self)


def validate_model(m: PreferenceModel) -> Verdict:
    """Check reflexivity and transitivity, reporting the first violation."""
    up = m.up
    if len(up) != m.st.size:
        return Verdict(False, None, "relation has the wrong dimension")
    if m.worlds == 0:
        return Verdict(False, None, "no worlds")
    for w in range(m.st.size):
        if not m.worlds >> w & 1 and up[w]:
            return Verdict(False, (w,), "relation mentions a world outside the model")
        if up[w] & ~m.worlds:
            return Verdict(False, (w,), "relation mentions a world outside the model")
    for w in iter_bits(m.worlds):
        if not up[w] >> w & 1:
            return Verdict(False, (w,), "not reflexive")
    bad = kernels.transitivity_witness(up, m.worlds)
    if bad is not None:
        return Verdict(False, bad, "not transitive")
    return Verdict(True)


def min_worlds(m: PreferenceModel, s) -> int:
    """Members of ``s`` with no strictly more plausible member of ``s``."""
    s = as_mask(s)
    if s & ~m.worlds:
        raise ModelError("min_worlds: set is not a subset of the model's worlds")
    return kernels.min_mask(m.up, s)


def clusters(m: PreferenceModel) -> list[int]:
    """Equivalence classes of mutual plausibility, most plausible-looking first.

    Classes are ordered by their highest valuation, descending; the strict
    order between them is read off with :func:`cluster_lt`.
    """
    seen = 0
    out = []
    for w in m.world_list:
        if seen >> w & 1:
            continue
        c = m.up[w] & m.down[w]
        seen |= c
        out.append(c)
    return out


def cluster_lt(m: PreferenceModel, c1: int, c2: int) -> bool:
    a = (c1 & -c1).bit_length() - 1
    b = (c2 & -c2).bit_length() - 1
    return m.lt(a, b)


def restrict(m: PreferenceModel, sub) -> PreferenceModel:
    sub = as_mask(sub)
    if sub == 0:
        raise ModelError("cannot restrict to an empty world set")
    if sub & ~m.worlds:
        raise ModelError("restriction target is not a subset of the model's worlds")
    return PreferenceModel(m.st, sub, tuple(
        (r & sub) if sub >> w & 1 else 0 for w, r in enumerate(m.up)))


def subsets(mask: int) -> Iterator[int]:
    """Nonempty subsets of ``mask`` in ascending numeric order."""
    members = list(iter_bits(mask))
    subs = []
    for bits in range(1, 1 << len(members)):
        s = 0
        for i, w in enumerate(members):
            if bits >> i & 1:
                s |= 1 << w
        subs.append(s)
    return iter(sorted(subs))


def models_on(st: SymbolTable, worlds: int) -> Iterator[PreferenceModel]:
    """Every preference model whose world set is exactly ``worlds``."""
    members = sorted(iter_bits(worlds))
    for rows in kernels.preorders(len(members)):
        up = [0] * st.size
        for i, w in enumerate(members):
            r = 0
            for j in iter_bits(rows[i]):
                r |= 1 << members[j]
            up[w] = r
        yield PreferenceModel(st, worlds, tuple(up))


def enumerate_models(st: SymbolTable, mode: str = "exhaustive", count: int = 100,
                     seed: int = 0) -> Iterator[PreferenceModel]:
    """Stream models over ``st``.

    ``exhaustive`` yields every model once: world sets by ascending bitset,
    then preorders in kernel order.  It is capped at n=2 (499 models) unless
    ``PREFDL_MAX_SYMBOLS`` raises the cap.  ``sample`` draws ``count`` random
    models (n <= 4) from a seeded generator.
    """
    if mode == "exhaustive":
        cap = max_exhaustive_symbols()
        if st.n > cap:
            raise BoundExceededError(
                f"exhaustive enumeration is capped at {cap} symbols (got {st.n}); "
                "set PREFDL_MAX_SYMBOLS to override")
        for worlds in range(1, st.full + 1):
            yield from models_on(st, worlds)
    elif mode == "sample":
        if st.n > max(MAX_SAMPLE_SYMBOLS, max_exhaustive_symbols()):
            raise BoundExceededError(f"sampling is capped at {MAX_SAMPLE_SYMBOLS} symbols")
        rng = random.Random(seed)
        for _ in range(count):
            worlds = rng.randint(1, st.full)
            members = list(iter_bits(worlds))
            density = rng.random()
            pairs = [(a, b) for a in members for b in members
                     if a != b and rng.random() < density * 0.5]
            yield PreferenceModel.from_pairs(st, worlds, pairs)
    else:
        raise ValueError(f"unknown enumeration mode {mode!r}")


# --------------------------------------------------------------------------
# Modal semantics

class Evaluator:
    """Extension (world bitset) of modal formulas in one model, memoized.

    Dynamic modalities are resolved through ``registry`` (an object with an
    ``apply(name, model, phi)`` method); revised models get their own child
    evaluators so repeated ``[* op phi]`` subformulas are computed once.
    """

    def __init__(self, m: PreferenceModel, registry=None):
        if registry is None:
            from .dynamics import DEFAULT_REGISTRY
            registry = DEFAULT_REGISTRY
        self.m = m
        self.registry = registry
        # keyed by object identity; the formula is stored to keep its id alive
        self.cache: dict[int, tuple[int, Formula]] = {}
        self.children: dict[tuple[str, int], Evaluator] = {}
        self._child_ids: dict[tuple[str, int], tuple[Evaluator, Formula]] = {}

    def child(self, op: str, phi: Formula) -> Evaluator:
        hit = self._child_ids.get((op, id(phi)))
        if hit is not None:
            return hit[0]
        key = (op, fingerprint(phi, self.m.st))
        ev = self.children.get(key)
        if ev is None:
            revised = self.registry.apply(op, self.m, phi)
            ev = self.children[key] = Evaluator(revised, self.registry)
        self._child_ids[op, id(phi)] = (ev, phi)
        return ev

    def __call__(self, f: Formula) -> int:
        hit = self.cache.get(id(f))
        if hit is None:
            hit = self.cache[id(f)] = (self._ext(f), f)
        return hit[0]

    def _ext(self, f):
        m = self.m
        W = m.worlds
        t = type(f)
        if t is Atom:
            return m.st.atom_masks[f.name] & W
        if t is Top:
            return W
        if t is Bottom:
            return 0
        if t is Not:
            return W & ~self(f.arg)
        if t is And:
            return self(f.left) & self(f.right)
        if t is Or:
            return self(f.left) | self(f.right)
        if t is Implies:
            return (W & ~self(f.left)) | self(f.right)
        if t is Iff:
            return W & ~(self(f.left) ^ self(f.right))
        if t is Everywhere:
            return W if self(f.arg) == W else 0
        if t is Somewhere:
            return W if self(f.arg) else 0
        if t is BoxLeq:
            return kernels.box_mask(m.up, W, self(f.arg), False)
        if t is BoxLt:
            return kernels.box_mask(m.up, W, self(f.arg), True)
        if t is DiamondLeq:
            return W & ~kernels.box_mask(m.up, W, W & ~self(f.arg), False)
        if t is DiamondLt:
            return W & ~kernels.box_mask(m.up, W, W & ~self(f.arg), True)
        if t is Mu:
            return kernels.min_mask(m.up, self(f.arg))
        if t is Dynamic:
            return self.child(f.op, f.arg)(f.body)
        raise TypeError(f"cannot evaluate {f!r}")


def extension(m: PreferenceModel, f: Formula, registry=None) -> int:
    """Bitset of the worlds of ``m`` satisfying ``f``."""
    return Evaluator(m, registry)(f)


def satisfies(m: PreferenceModel, w: int, f: Formula, registry=None) -> bool:
    if not m.worlds >> w & 1:
        raise ModelError(f"world {m.st.bitstring(w)} is not in the model")
    return bool(extension(m, f, registry) >> w & 1)

