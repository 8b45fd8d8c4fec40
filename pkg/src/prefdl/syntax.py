"""Formulas: AST, parser, printer and truth-table semantics.

Worlds (valuations) are integers in ``0 .. 2**n - 1``.  The binary numeral of
a world, padded to ``n`` digits, lists the truth values of the symbols in
canonical (lexicographic) order, so world ``0b10`` over ``p q`` makes ``p``
true and ``q`` false.  Sets of worlds, and formula fingerprints, are Python
ints used as bitsets: bit ``w`` is set iff world ``w`` is in the set.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from typing import Iterable, Iterator

from .errors import ParseError, SymbolTableError, UndeclaredSymbolError

MAX_SYMBOLS = 16
_SYMBOL_RE = re.compile(r"[a-z][a-z0-9_]*\Z")


@dataclass(frozen=True)
class SymbolTable:
    symbols: tuple[str, ...]

    def __post_init__(self):
        symbols = tuple(self.symbols)
        object.__setattr__(self, "symbols", symbols)
        if not 1 <= len(symbols) <= MAX_SYMBOLS:
            raise SymbolTableError(
                f"need between 1 and {MAX_SYMBOLS} symbols, got {len(symbols)}")
        for s in symbols:
            if not _SYMBOL_RE.match(s) or s == "mu":
                raise SymbolTableError(f"invalid symbol name {s!r}")
        if len(set(symbols)) != len(symbols):
            raise SymbolTableError("duplicate symbols")
        if list(symbols) != sorted(symbols):
            raise SymbolTableError(
                f"symbols must be in lexicographic order: {' '.join(symbols)}")

    @classmethod
    def of(cls, *names: str) -> SymbolTable:
        """Build a table from names in any order."""
        if len(names) == 1 and not isinstance(names[0], str):
            names = tuple(names[0])
        return cls(tuple(sorted(names)))

    @property
    def n(self) -> int:
        return len(self.symbols)

    @property
    def size(self) -> int:
        """Number of valuations, ``2**n``."""
        return 1 << len(self.symbols)

    @property
    def full(self) -> int:
        """The bitset of all valuations."""
        return (1 << self.size) - 1

    def index(self, name: str) -> int:
        try:
            return self.symbols.index(name)
        except ValueError:
            raise UndeclaredSymbolError(f"undeclared symbol {name!r}") from None

    @cached_property
    def atom_masks(self) -> dict[str, int]:
        n = self.n
        masks = {}
        for i, s in enumerate(self.symbols):
            bit = n - 1 - i
            m = 0
            for w in range(self.size):
                if w >> bit & 1:
                    m |= 1 << w
            masks[s] = m
        return masks

    def holds(self, name: str, w: int) -> bool:
        """Truth of symbol ``name`` at world ``w``."""
        return bool(w >> (self.n - 1 - self.index(name)) & 1)

    def bitstring(self, w: int) -> str:
        return format(w, f"0{self.n}b")

    def parse_world(self, text: str) -> int:
        if len(text) != self.n or set(text) - {"0", "1"}:
            raise ParseError(
                f"world {text!r} is not a {self.n}-digit bitstring over {' '.join(self.symbols)}")
        return int(text, 2)


def iter_bits(mask: int) -> Iterator[int]:
    """Yield the set bits of ``mask`` in ascending order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def worlds_desc(mask: int) -> list[int]:
    """Members of a world bitset in output order (highest valuation first)."""
    return sorted(iter_bits(mask), reverse=True)


def as_mask(worlds) -> int:
    """Accept either a bitset or an iterable of world indices."""
    if isinstance(worlds, int):
        return worlds
    m = 0
    for w in worlds:
        m |= 1 << w
    return m


# --------------------------------------------------------------------------
# AST

def _fields_hash(self):
    h = self.__dict__.get("_hash")
    if h is None:
        h = hash((type(self).__name__,) + tuple(
            getattr(self, f) for f in self.__dataclass_fields__))
        object.__setattr__(self, "_hash", h)
    return h


@dataclass(frozen=True)
class Formula:
    __hash__ = _fields_hash

    def __str__(self):
        return to_text(self)


@dataclass(frozen=True)
class Atom(Formula):
    name: str
    __hash__ = _fields_hash


@dataclass(frozen=True)
class Top(Formula):
    __hash__ = _fields_hash


@dataclass(frozen=True)
class Bottom(Formula):
    __hash__ = _fields_hash


@dataclass(frozen=True)
class Not(Formula):
    arg: Formula
    __hash__ = _fields_hash


@dataclass(frozen=True)
class And(Formula):
    left: Formula
    right: Formula
    __hash__ = _fields_hash


@dataclass(frozen=True)
class Or(Formula):
    left: Formula
    right: Formula
    __hash__ = _fields_hash


@dataclass(frozen=True)
class Implies(Formula):
    left: Formula
    right: Formula
    __hash__ = _fields_hash


@dataclass(frozen=True)
class Iff(Formula):
    left: Formula
    right: Formula
    __hash__ = _fields_hash


# Modal layer.  Kept in the same AST so one parser and printer serve both.

@dataclass(frozen=True)
class Everywhere(Formula):
    """``A x``: x holds at every world."""
    arg: Formula
    __hash__ = _fields_hash


@dataclass(frozen=True)
class Somewhere(Formula):
    """``E x``, the dual of ``A``."""
    arg: Formula
    __hash__ = _fields_hash


@dataclass(frozen=True)
class BoxLeq(Formula):
    arg: Formula
    __hash__ = _fields_hash


@dataclass(frozen=True)
class BoxLt(Formula):
    arg: Formula
    __hash__ = _fields_hash


@dataclass(frozen=True)
class DiamondLeq(Formula):
    arg: Formula
    __hash__ = _fields_hash


@dataclass(frozen=True)
class DiamondLt(Formula):
    arg: Formula
    __hash__ = _fields_hash


@dataclass(frozen=True)
class Mu(Formula):
    """True at exactly the most plausible worlds satisfying ``arg``."""
    arg: Formula
    __hash__ = _fields_hash


@dataclass(frozen=True)
class Dynamic(Formula):
    """``[* op arg] body``: body holds after applying operator ``op`` by ``arg``."""
    op: str
    arg: Formula
    body: Formula
    __hash__ = _fields_hash


_BINARY = (And, Or, Implies, Iff)
_MODAL_UNARY = (Everywhere, Somewhere, BoxLeq, BoxLt, DiamondLeq, DiamondLt)
T = Top()
F = Bottom()


def is_propositional(f: Formula) -> bool:
    if isinstance(f, (Atom, Top, Bottom)):
        return True
    if isinstance(f, Not):
        return is_propositional(f.arg)
    if isinstance(f, _BINARY):
        return is_propositional(f.left) and is_propositional(f.right)
    return False


def atoms_of(f: Formula) -> set[str]:
    if isinstance(f, Atom):
        return {f.name}
    if isinstance(f, (Top, Bottom)):
        return set()
    if isinstance(f, _BINARY):
        return atoms_of(f.left) | atoms_of(f.right)
    if isinstance(f, Dynamic):
        return atoms_of(f.arg) | atoms_of(f.body)
    return atoms_of(f.arg)


def conj(parts: Iterable[Formula]) -> Formula:
    """Left-nested conjunction; ``T`` when empty."""
    out = None
    for p in parts:
        out = p if out is None else And(out, p)
    return T if out is None else out


def disj(parts: Iterable[Formula]) -> Formula:
    """Left-nested disjunction; ``F`` when empty."""
    out = None
    for p in parts:
        out = p if out is None else Or(out, p)
    return F if out is None else out


# --------------------------------------------------------------------------
# Parsing

_TOKEN_RE = re.compile(r"""
    (?P<ws>\s+)
  | (?P<op><->|->|<<=>|<<>|\[<=\]|\[<\]|\[\*|[()~&|\]])
  | (?P<name>[A-Za-z][A-Za-z0-9_]*)
""", re.VERBOSE)


def _tokenize(text):
    pos = 0
    toks = []
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}", text, pos)
        if m.lastgroup != "ws":
            toks.append((m.group(), m.start()))
        pos = m.end()
    toks.append(("<eof>", len(text)))
    return toks


class _Parser:
    def __init__(self, text, st, modal):
        self.text = text
        self.st = st
        self.modal = modal
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i][0]

    def take(self):
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def expect(self, want):
        tok, pos = self.take()
        if tok != want:
            raise ParseError(f"expected {want!r}, found {tok!r}", self.text, pos)

    def fail(self, msg):
        raise ParseError(msg, self.text, self.toks[self.i][1])

    def parse(self):
        f = self.iff()
        if self.peek() != "<eof>":
            self.fail(f"unexpected token {self.peek()!r}")
        return f

    def iff(self):
        f = self.imp()
        while self.peek() == "<->":
            self.take()
            f = Iff(f, self.imp())
        return f

    def imp(self):
        f = self.or_()
        if self.peek() == "->":
            self.take()
            return Implies(f, self.imp())
        return f

    def or_(self):
        f = self.and_()
        while self.peek() == "|":
            self.take()
            f = Or(f, self.and_())
        return f

    def and_(self):
        f = self.unary()
        while self.peek() == "&":
            self.take()
            f = And(f, self.unary())
        return f

    def require_modal(self, tok):
        if not self.modal:
            self.fail(f"modal operator {tok!r} not allowed in a propositional formula")

    def unary(self):
        tok, pos = self.toks[self.i]
        if tok == "~":
            self.take()
            return Not(self.unary())
        if tok == "(":
            self.take()
            f = self.iff()
            self.expect(")")
            return f
        modal = {"A": Everywhere, "E": Somewhere, "[<=]": BoxLeq, "[<]": BoxLt,
                 "<<=>": DiamondLeq, "<<>": DiamondLt}
        if tok in modal:
            self.require_modal(tok)
            self.take()
            return modal[tok](self.unary())
        if tok == "[*":
            self.require_modal(tok)
            self.take()
            name, npos = self.take()
            if not re.match(r"[A-Za-z_][A-Za-z0-9_\-]*\Z", name):
                raise ParseError(f"expected operator name, found {name!r}", self.text, npos)
            # dynamic arguments are propositional
            saved = self.modal
            self.modal = False
            arg = self.iff()
            self.modal = saved
            self.expect("]")
            return Dynamic(name, arg, self.unary())
        if tok == "T":
            self.take()
            return T
        if tok == "F":
            self.take()
            return F
        if tok == "mu" and self.toks[self.i + 1][0] == "(":
            self.require_modal(tok)
            self.take()
            self.expect("(")
            f = self.iff()
            self.expect(")")
            return Mu(f)
        if re.match(r"[a-z][a-z0-9_]*\Z", tok):
            self.take()
            if self.st is not None and tok not in self.st.symbols:
                raise UndeclaredSymbolError(f"undeclared symbol {tok!r}", self.text, pos)
            return Atom(tok)
        if tok == "<eof>":
            self.fail("unexpected end of input")
        self.fail(f"unexpected token {tok!r}")


def parse_prop(text: str, st: SymbolTable | None = None) -> Formula:
    """Parse a propositional formula; atoms must be declared in ``st``."""
    return _Parser(text, st, modal=False).parse()


def parse_formula(text: str, st: SymbolTable | None = None) -> Formula:
    """Parse a formula that may use the modal and dynamic operators."""
    return _Parser(text, st, modal=True).parse()


# --------------------------------------------------------------------------
# Printing

_PREC = {Iff: 1, Implies: 2, Or: 3, And: 4}
_SYM = {Iff: "<->", Implies: "->", Or: "|", And: "&"}
_PREFIX = {Everywhere: "A ", Somewhere: "E ", BoxLeq: "[<=] ", BoxLt: "[<] ",
           DiamondLeq: "<<=> ", DiamondLt: "<<> "}


def _prec(f):
    return _PREC.get(type(f), 5)


def to_text(f: Formula) -> str:
    if isinstance(f, Atom):
        return f.name
    if isinstance(f, Top):
        return "T"
    if isinstance(f, Bottom):
        return "F"
    if isinstance(f, Not):
        return "~" + _wrap(f.arg, 5)
    if isinstance(f, type(None)):
        raise TypeError("None is not a formula")
    if type(f) in _PREFIX:
        return _PREFIX[type(f)] + _wrap(f.arg, 5)
    if isinstance(f, Mu):
        return f"mu({to_text(f.arg)})"
    if isinstance(f, Dynamic):
        return f"[* {f.op} {to_text(f.arg)}] " + _wrap(f.body, 5)
    p = _PREC[type(f)]
    if isinstance(f, Implies):
        left, right = _wrap(f.left, p + 1), _wrap(f.right, p)
    else:
        left, right = _wrap(f.left, p), _wrap(f.right, p + 1)
    return f"{left} {_SYM[type(f)]} {right}"


def _wrap(f, min_prec):
    s = to_text(f)
    return s if _prec(f) >= min_prec else f"({s})"


# --------------------------------------------------------------------------
# Truth tables

def fingerprint(f: Formula, st: SymbolTable) -> int:
    """Bitset of the valuations satisfying the propositional formula ``f``."""
    if isinstance(f, Atom):
        try:
            return st.atom_masks[f.name]
        except KeyError:
            raise UndeclaredSymbolError(f"undeclared symbol {f.name!r}") from None
    if isinstance(f, Top):
        return st.full
    if isinstance(f, Bottom):
        return 0
    if isinstance(f, Not):
        return st.full & ~fingerprint(f.arg, st)
    if isinstance(f, And):
        return fingerprint(f.left, st) & fingerprint(f.right, st)
    if isinstance(f, Or):
        return fingerprint(f.left, st) | fingerprint(f.right, st)
    if isinstance(f, Implies):
        return (st.full & ~fingerprint(f.left, st)) | fingerprint(f.right, st)
    if isinstance(f, Iff):
        return st.full & ~(fingerprint(f.left, st) ^ fingerprint(f.right, st))
    raise TypeError(f"not a propositional formula: {to_text(f)}")


def fingerprint_bits(f: Formula, st: SymbolTable) -> str:
    """Fingerprint as a string, bit 0 (world 0) first."""
    fp = fingerprint(f, st)
    return "".join("1" if fp >> w & 1 else "0" for w in range(st.size))


def equivalent(f: Formula, g: Formula, st: SymbolTable) -> bool:
    return fingerprint(f, st) == fingerprint(g, st)


def entails(f: Formula, g: Formula, st: SymbolTable) -> bool:
    return fingerprint(f, st) & ~fingerprint(g, st) == 0


def is_consistent(f: Formula, st: SymbolTable) -> bool:
    return fingerprint(f, st) != 0


def world_formula(w: int, st: SymbolTable) -> Formula:
    """Conjunction of literals true at exactly world ``w``."""
    if not 0 <= w < st.size:
        raise ValueError(f"world {w} out of range for {st.n} symbols")
    lits = []
    for s in st.symbols:
        a = Atom(s)
        lits.append(a if st.holds(s, w) else Not(a))
    return conj(lits)


def model_formula(worlds, st: SymbolTable) -> Formula:
    """Formula satisfied by exactly the given world set.

    Disjunction of the present worlds conjoined with the negation of every
    absent one.
    """
    mask = as_mask(worlds)
    if mask == 0:
        raise ValueError("model_formula needs a nonempty world set")
    present = disj(world_formula(w, st) for w in worlds_desc(mask))
    absent = [Not(world_formula(w, st)) for w in worlds_desc(st.full & ~mask)]
    return conj([present] + absent)


def dnf_formula(mask: int, st: SymbolTable) -> Formula:
    if mask == 0:
        return F
    if mask == st.full:
        return T
    return disj(world_formula(w, st) for w in worlds_desc(mask))


@lru_cache(maxsize=None)
def _small_representatives(st: SymbolTable):
    # Cheapest formula per truth table.  Literals cost 1, & and | cost 1,
    # -> and <-> cost 2, negating a compound costs 2, so literal forms win ties.
    full = st.full
    target = 1 << st.size
    best: dict[int, Formula] = {full: T, 0: F}
    by_cost: dict[int, list[tuple[int, Formula]]] = {1: []}
    for name in st.symbols:
        m = st.atom_masks[name]
        for mm, f in ((m, Atom(name)), (full & ~m, Not(Atom(name)))):
            if mm not in best:
                best[mm] = f
                by_cost[1].append((mm, f))
    cost = 1
    while len(best) < target:
        cost += 1
        level = []

        def add(mm, f):
            if mm not in best:
                best[mm] = f
                level.append((mm, f))

        for m, f in by_cost.get(cost - 2, ()):
            if not isinstance(f, (Atom, Not)):
                add(full & ~m, Not(f))
        for extra, ops in ((1, ((And, lambda a, b: a & b), (Or, lambda a, b: a | b))),
                           (2, ((Implies, lambda a, b: (full & ~a) | b),
                                (Iff, lambda a, b: full & ~(a ^ b))))):
            budget = cost - extra
            for lc in range(1, budget):
                for lm, lf in by_cost.get(lc, ()):
                    for rm, rf in by_cost.get(budget - lc, ()):
                        for ctor, op in ops:
                            add(op(lm, rm), ctor(lf, rf))
        by_cost[cost] = level
    return best


def semantic_classes(st: SymbolTable, max_symbols: int = 3) -> list[tuple[int, Formula]]:
    """One representative formula per truth table, ordered by fingerprint.

    Representatives are shortest formulas (e.g. ``p``, ``p <-> q``); the
    number of classes is ``2**(2**n)`` so this is only offered for small n.
    """
    from .errors import BoundExceededError
    if st.n > max_symbols:
        raise BoundExceededError(
            f"{2 ** st.size} semantic classes at n={st.n} exceeds the cap n<={max_symbols}")
    reps = _small_representatives(st)
    return [(m, reps[m]) for m in range(1 << st.size)]


def consistent_classes(st: SymbolTable) -> list[tuple[int, Formula]]:
    return [(m, f) for m, f in semantic_classes(st) if m]
