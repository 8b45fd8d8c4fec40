import pytest
from hypothesis import given, settings

from oracles import sat_worlds
from conftest import modal_formulas, props
from prefdl.errors import ParseError, SymbolTableError, UndeclaredSymbolError
from prefdl.syntax import (And, Atom, Dynamic, Implies, Mu, Not, SymbolTable, T, F,
                           BoxLt, consistent_classes, entails, equivalent,
                           fingerprint, fingerprint_bits, is_consistent,
                           iter_bits, model_formula, parse_formula, parse_prop,
                           semantic_classes, to_text, world_formula)
from prefdl.errors import BoundExceededError

P, Q, R = Atom("p"), Atom("q"), Atom("r")


class TestSymbolTable:
    def test_sorted_and_sizes(self, st2):
        assert st2.n == 2 and st2.size == 4 and st2.full == 0b1111

    def test_of_sorts(self):
        assert SymbolTable.of("q", "p").symbols == ("p", "q")

    @pytest.mark.parametrize("symbols", [(), ("q", "p"), ("p", "p"), ("P",), ("mu",), ("1a",),
                                         tuple(f"s{i:02d}" for i in range(17))])
    def test_rejects(self, symbols):
        with pytest.raises(SymbolTableError):
            SymbolTable(symbols)

    def test_first_symbol_is_high_bit(self, st2):
        assert st2.holds("p", 0b10) and not st2.holds("q", 0b10)
        assert st2.parse_world("10") == 2
        assert st2.bitstring(1) == "01"

    def test_parse_world_errors(self, st2):
        for bad in ("1", "102", "abc"):
            with pytest.raises(ParseError):
                st2.parse_world(bad)


class TestParse:
    def test_conjunction(self, st2):
        assert parse_prop("p & ~q", st2) == And(P, Not(Q))

    def test_constant(self, st2):
        assert parse_prop("T", st2) == T and parse_prop("F") == F

    def test_implication_right_assoc(self):
        st = SymbolTable(("p", "q", "r"))
        f = parse_prop("p -> q -> r", st)
        assert f == Implies(P, Implies(Q, R))
        assert to_text(f) == "p -> q -> r"
        assert to_text(Implies(Implies(P, Q), R)) == "(p -> q) -> r"

    def test_precedence(self, st2):
        assert parse_prop("p | q & ~p", st2) == parse_prop("p | (q & ~p)", st2)
        assert parse_prop("p <-> q <-> p", st2) == parse_prop("(p <-> q) <-> p", st2)

    def test_undeclared(self, st2):
        with pytest.raises(UndeclaredSymbolError):
            parse_prop("p & r", st2)

    @pytest.mark.parametrize("text", ["p &", "(p", "p q", "~", "p & & q", "p $ q", ""])
    def test_syntax_errors_have_position(self, text, st2):
        with pytest.raises(ParseError) as e:
            parse_prop(text, st2)
        assert e.value.position is not None

    def test_prop_rejects_modal(self, st2):
        with pytest.raises(ParseError):
            parse_prop("A p", st2)

    def test_modal_tokens(self, st2):
        f = parse_formula("[* natural ~p] [<] F", st2)
        assert f == Dynamic("natural", Not(P), BoxLt(F))
        g = parse_formula("A p -> E q & [<=] p & <<=> q & <<> p & mu(p | q)", st2)
        assert parse_formula(to_text(g), st2) == g
        assert isinstance(parse_formula("mu(p)", st2), Mu)

    def test_dynamic_argument_is_propositional(self, st2):
        with pytest.raises(ParseError):
            parse_formula("[* natural A p] p", st2)


class TestSemantics:
    def test_atom_fingerprint(self, st2):
        assert fingerprint_bits(P, st2) == "0011"
        assert fingerprint(P, st2) == 0b1100

    def test_conjunction_fingerprint(self, st2):
        assert fingerprint(parse_prop("p & ~q", st2), st2) == 1 << 0b10

    def test_iff_fingerprint(self, st2):
        assert set(iter_bits(fingerprint(parse_prop("p <-> q", st2), st2))) == {0b00, 0b11}

    def test_constants(self, st2):
        assert fingerprint(T, st2) == st2.full and fingerprint(F, st2) == 0

    def test_equivalence_examples(self, st2):
        e = lambda a, b: equivalent(parse_prop(a, st2), parse_prop(b, st2), st2)
        assert e("p -> q", "~p | q")
        assert not e("p", "p & q")
        assert e("~(p & q)", "~p | ~q")

    def test_entails_and_consistency(self, st2):
        assert entails(parse_prop("p & q", st2), P, st2)
        assert not entails(P, parse_prop("p & q", st2), st2)
        assert not is_consistent(parse_prop("p & ~p", st2), st2)

    def test_world_formula(self, st2):
        assert to_text(world_formula(0b10, st2)) == "p & ~q"
        assert to_text(world_formula(0b00, st2)) == "~p & ~q"
        assert to_text(world_formula(0b111, SymbolTable(("p", "q", "r")))) == "p & q & r"

    def test_model_formula_example(self, st2):
        f = model_formula({0b11, 0b00}, st2)
        assert to_text(f) == "(p & q | ~p & ~q) & ~(p & ~q) & ~(~p & q)"
        assert fingerprint(f, st2) == 0b1001

    def test_model_formula_edge_cases(self, st2):
        assert equivalent(model_formula({0b01}, st2), world_formula(0b01, st2), st2)
        assert equivalent(model_formula(st2.full, st2), T, st2)
        with pytest.raises(ValueError):
            model_formula(0, st2)

    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_model_formula_exhaustive(self, n):
        st = SymbolTable(("p", "q", "r")[:n])
        for mask in range(1, st.full + 1):
            assert fingerprint(model_formula(mask, st), st) == mask

    def test_semantic_classes(self, st2):
        classes = semantic_classes(st2)
        assert [m for m, _ in classes] == list(range(16))
        assert all(fingerprint(f, st2) == m for m, f in classes)
        assert len(consistent_classes(st2)) == 15
        assert to_text(classes[0b0110][1]) == "p <-> ~q"

    def test_semantic_classes_bound(self):
        with pytest.raises(BoundExceededError):
            semantic_classes(SymbolTable(("p", "q", "r", "s")))


@settings(max_examples=300, deadline=None)
@given(props(("p", "q", "r"), max_leaves=24))
def test_fingerprint_matches_truth_tables(f):
    st = SymbolTable(("p", "q", "r"))
    assert set(iter_bits(fingerprint(f, st))) == sat_worlds(f, st.symbols)


@settings(max_examples=300, deadline=None)
@given(props(("p", "q", "r"), max_leaves=40))
def test_print_parse_round_trip(f):
    st = SymbolTable(("p", "q", "r"))
    text = to_text(f)
    g = parse_prop(text, st)
    assert g == f
    assert to_text(g) == text


@settings(max_examples=200, deadline=None)
@given(modal_formulas(max_leaves=16))
def test_modal_round_trip(f):
    assert parse_formula(to_text(f)) == f


@settings(max_examples=200, deadline=None)
@given(props(), props())
def test_equivalent_iff_same_fingerprint(f, g):
    st = SymbolTable(("p", "q"))
    same = sat_worlds(f, st.symbols) == sat_worlds(g, st.symbols)
    assert equivalent(f, g, st) == same
