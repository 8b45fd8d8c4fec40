import pytest

from prefdl.cli import run

CHAIN = "model { symbols: p q; worlds: 11 10 01 00; leq: 11<=10, 10<=01, 01<=00; }"
PAIR = 'graph { symbols: p q; nodes: a = "p", b = "q"; edges: a < b; }'
GROUNDED = 'graph { symbols: p q; ground: "T"; nodes: a = "p", b = "q"; edges: a < b; }'


@pytest.fixture
def files(tmp_path):
    def write(name, text):
        path = tmp_path / name
        path.write_text(text)
        return str(path)
    return write


def cli(capsys, *argv):
    code = run(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


class TestModels:
    def test_check_model(self, capsys, files):
        assert cli(capsys, "check-model", files("m.pm", CHAIN)) == (0, "VALID\n", "")

    def test_check_model_file_missing(self, capsys, tmp_path):
        code, out, err = cli(capsys, "check-model", str(tmp_path / "none.pm"))
        assert code == 2 and err.startswith("prefdl: error:")

    def test_check_model_parse_error(self, capsys, files):
        code, _, err = cli(capsys, "check-model", files("m.pm", "model { symbols: p; }"))
        assert code == 2 and "worlds" in err

    def test_canonical(self, capsys, files):
        code, out, _ = cli(capsys, "canonical", "--model", files("m.pm", CHAIN))
        assert code == 0 and out.startswith("graph { symbols: p q;")
        assert "edges: n1 < n2, n1 < n3, n1 < n4, n2 < n3, n2 < n4, n3 < n4;" in out

    def test_revise(self, capsys, files):
        code, out, _ = cli(capsys, "revise", "--model", files("m.pm", CHAIN), "--phi", "~p")
        assert code == 0
        assert out == "model { symbols: p q; worlds: 11 10 01 00; leq: 11<=10, 10<=00, 01<=11; }\n"

    def test_revise_unknown_operator(self, capsys, files):
        code, _, err = cli(capsys, "revise", "--model", files("m.pm", CHAIN), "--phi", "p", "--op", "radical")
        assert code == 2 and "radical" in err

    def test_revise_needs_one_source(self, capsys, files):
        assert cli(capsys, "revise", "--phi", "p")[0] == 2

    def test_eval(self, capsys, files):
        m = files("m.pm", CHAIN)
        assert cli(capsys, "eval", "--model", m, "--world", "01",
                   "--formula", "[* natural ~p] [<] F")[:2] == (0, "TRUE\n")
        assert cli(capsys, "eval", "--model", m, "--world", "10", "--formula", "[<] F")[:2] == (1, "FALSE\n")
        assert cli(capsys, "eval", "--model", m, "--world", "10", "--formula", "[<] r")[0] == 2

    def test_output_file(self, capsys, files, tmp_path):
        target = tmp_path / "out.txt"
        code, out, _ = cli(capsys, "-o", str(target), "check-model", files("m.pm", CHAIN))
        assert code == 0 and out == "" and target.read_text() == "VALID\n"

    def test_enumerate(self, capsys):
        code, out, _ = cli(capsys, "enumerate", "--symbols", "1")
        assert code == 0 and len(out.splitlines()) == 6
        a = cli(capsys, "enumerate", "--symbols", "3", "--sample", "5", "--seed", "4")[1]
        b = cli(capsys, "enumerate", "--symbols", "3", "--sample", "5", "--seed", "4")[1]
        assert a == b and len(a.splitlines()) == 5


class TestGraphs:
    def test_check_graph(self, capsys, files):
        assert cli(capsys, "check-graph", files("g.pg", PAIR))[:2] == (0, "VALID\n")
        cyc = files("c.pg", 'graph { symbols: p; nodes: a = "p", b = "~p"; edges: a < b < a; }')
        code, out, _ = cli(capsys, "check-graph", cyc)
        assert code == 1 and out.startswith("INVALID") and "n1 < n2 < n1" in out

    def test_induce(self, capsys, files):
        code, out, _ = cli(capsys, "induce", "--graph", files("g.pg", PAIR))
        assert (code, out) == (0, CHAIN + "\n")
        code, out, _ = cli(capsys, "induce", "--graph", files("g.pg", PAIR), "--worlds", "~q")
        assert out == "model { symbols: p q; worlds: 10 00; leq: 10<=00; }\n"

    def test_induce_rejects_grounded(self, capsys, files):
        assert cli(capsys, "induce", "--graph", files("g.pg", GROUNDED))[0] == 2

    def test_ground_induce_and_mu(self, capsys, files):
        g = files("g.pg", GROUNDED)
        assert cli(capsys, "ground-induce", "--graph", g)[1] == CHAIN + "\n"
        code, out, _ = cli(capsys, "mu", "--graph", g, "--psi", "~p")
        assert code == 0 and out.splitlines()[1] == "worlds: {01}"

    def test_revise_graph(self, capsys, files):
        code, out, _ = cli(capsys, "revise", "--graph", files("g.pg", GROUNDED), "--phi", "~p")
        assert code == 0 and out.startswith('graph { symbols: p q; ground: "T"; nodes: n1 = ')
        assert "edges: n1 < n2, n1 < n3, n2 < n3;" in out

    def test_equiv(self, capsys, files):
        a = files("a.pg", 'graph { symbols: p q; nodes: a = "p"; }')
        b = files("b.pg", 'graph { symbols: p q; nodes: a = "q"; }')
        assert cli(capsys, "equiv", "--g1", a, "--g2", b, "--phi", "p <-> q")[:2] == (0, "HOLDS\n")
        assert cli(capsys, "equiv", "--g1", a, "--g2", b)[:2] == (1, "FAILS\n")


class TestPostulates:
    def test_faith_and_cb(self, capsys, files):
        m = files("m.pm", CHAIN)
        code, out, _ = cli(capsys, "postulate", "faith", "--model", m, "--phi", "~p", "--revised", m)
        assert code == 1 and out.splitlines()[0] == "POSTULATE faith FAILS instances=1"
        assert out.rstrip().endswith("END")
        assert cli(capsys, "postulate", "cb", "--model", m, "--phi", "~p", "--revised", m)[0] == 0

    def test_missing_args(self, capsys):
        assert cli(capsys, "postulate", "faith")[0] == 2
        assert cli(capsys, "postulate", "grounded-cb")[0] == 2

    def test_cb_axioms(self, capsys):
        code, out, _ = cli(capsys, "postulate", "cb-axioms", "--symbols", "1")
        assert code == 0 and out.startswith("POSTULATE cb-axioms HOLDS")

    def test_grounded(self, capsys, files):
        nat = files("n.tr", "transform { kind: grounded; rule: natural; }")
        assert cli(capsys, "postulate", "grounded-cb", "--transform", nat, "--symbols", "1")[0] == 0
        ident = files("i.tr", "transform { kind: grounded; rule: identity; }")
        code, out, _ = cli(capsys, "postulate", "grounded-faith", "--transform", ident, "--symbols", "1")
        assert code == 1 and "WITNESS" in out
        plain = files("p.tr", "transform { rule: identity; }")
        assert cli(capsys, "postulate", "grounded-cb", "--transform", plain)[0] == 2

    def test_induction_and_relevance(self, capsys, files):
        nat = files("n.tr", "transform { kind: grounded; rule: natural; }")
        ident = files("i.tr", "transform { rule: identity; }")
        assert cli(capsys, "induction", "--transform", nat, "--symbols", "1")[0] == 0
        code, out, _ = cli(capsys, "induction", "--transform", ident, "--symbols", "1")
        assert code == 1 and "POSTULATE induction FAILS" in out
        assert cli(capsys, "relevance", "--transform", ident, "--symbols", "1")[0] == 0

    def test_gap_demo(self, capsys):
        code, out, _ = cli(capsys, "gap-demo", "--symbols", "1")
        assert out.startswith("GAP ")
        assert code == (0 if "FOUND" in out else 1)
        code, out, _ = cli(capsys, "gap-demo", "--symbols", "1", "--grounded")
        assert code == 0 and out.startswith("GAP INCONCLUSIVE")


class TestVerify:
    def test_single_criterion(self, capsys):
        code, out, _ = cli(capsys, "verify", "--criterion", "1", "--symbols", "1")
        assert code == 0
        assert out.splitlines() == ["CRITERION 1 PASS canonical round trip: 6/6 models",
                                    "SUMMARY 1/1 criteria passed"]

    def test_usage(self, capsys):
        assert cli(capsys, "verify")[0] == 2
        assert cli(capsys, "verify", "--criterion", "42")[0] == 2
        assert cli(capsys, "no-such-command")[0] == 2
        assert cli(capsys, "--version")[0] == 0
