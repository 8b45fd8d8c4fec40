import sys
from pathlib import Path

import pytest
from hypothesis import strategies as hs

sys.path.insert(0, str(Path(__file__).parent))

from prefdl.model import PreferenceModel  # noqa: E402
from prefdl.syntax import (And, Atom, Bottom, BoxLeq, BoxLt, DiamondLeq,  # noqa: E402
                           DiamondLt, Dynamic, Everywhere, Iff, Implies, Mu,
                           Not, Or, Somewhere, SymbolTable, Top)


@pytest.fixture
def st1():
    return SymbolTable(("p",))


@pytest.fixture
def st2():
    return SymbolTable(("p", "q"))


@pytest.fixture
def chain(st2):
    """11 < 10 < 01 < 00."""
    return PreferenceModel.chain(st2, [0b11, 0b10, 0b01, 0b00])


# -- hypothesis strategies --------------------------------------------------

def props(symbols=("p", "q"), max_leaves=12):
    leaves = hs.sampled_from([Atom(s) for s in symbols] + [Top(), Bottom()])
    return hs.recursive(leaves, lambda sub: hs.one_of(
        hs.builds(Not, sub),
        *[hs.builds(c, sub, sub) for c in (And, Or, Implies, Iff)]), max_leaves=max_leaves)


def modal_formulas(symbols=("p", "q"), max_leaves=10, ops=("natural",)):
    prop = props(symbols, 4)
    leaves = hs.sampled_from([Atom(s) for s in symbols] + [Top(), Bottom()])

    def extend(sub):
        return hs.one_of(
            *[hs.builds(c, sub) for c in (Not, Everywhere, Somewhere, BoxLeq, BoxLt,
                                          DiamondLeq, DiamondLt, Mu)],
            *[hs.builds(c, sub, sub) for c in (And, Or, Implies, Iff)],
            hs.builds(Dynamic, hs.sampled_from(ops), prop, sub))
    return hs.recursive(leaves, extend, max_leaves=max_leaves)


@hs.composite
def models(draw, st):
    worlds = draw(hs.integers(1, st.full))
    members = [w for w in range(st.size) if worlds >> w & 1]
    pairs = draw(hs.lists(hs.tuples(hs.sampled_from(members), hs.sampled_from(members)), max_size=8))
    return PreferenceModel.from_pairs(st, worlds, pairs)


# -- acceptance report ------------------------------------------------------

def pytest_terminal_summary(terminalreporter):
    lines = []
    for key in ("passed", "failed"):
        for rep in terminalreporter.stats.get(key, []):
            lines += [v for k, v in getattr(rep, "user_properties", ()) if k == "criterion"]
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines, key=lambda s: int(s.split()[1])):
            terminalreporter.write_line(line)
