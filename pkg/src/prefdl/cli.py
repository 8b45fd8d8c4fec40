"""Command-line front end.

Exit codes: 0 when the command succeeds or the check holds, 1 when a check
fails (the witness is printed), 2 for usage, parse or validation errors.
"""
from __future__ import annotations

import argparse
import io
import sys

from . import __version__
from .dynamics import (DEFAULT_REGISTRY, NATURAL_GRAPH, InductionVerdict,
                       induction_check, relevance_check)
from .errors import GraphError, PrefDLError
from .formats import (graph_to_text, model_to_text, read_graph, read_model,
                      read_transform)
from .model import enumerate_models, extension, validate_model
from .pgraph import (GroundedPGraph, PGraph, canonical_graph, grounded_induce,
                     induced_order, mu, phi_equivalent, validate_graph)
from .postulates import (PostulateReport, check_cb, check_cb2_axioms,
                         check_faith, check_grounded_cb_structure,
                         check_grounded_faith_structure,
                         demonstrate_plain_graph_gap, render, render_worlds,
                         report_to_text)
from .syntax import fingerprint, parse_formula, parse_prop, to_text
from .verify import CRITERIA, run_criteria, symbols_for


class CheckFailed(Exception):
    """Raised by a command whose output is complete but whose check failed."""


def _plain(g, what="graph"):
    if isinstance(g, GroundedPGraph):
        raise GraphError(f"{what} must not have a ground")
    return g


def _grounded(g, what="graph"):
    if not isinstance(g, GroundedPGraph):
        raise GraphError(f"{what} needs a ground")
    return g


def _emit_report(out, r: PostulateReport):
    print(report_to_text(r), file=out)
    if not r.holds:
        raise CheckFailed


def _verdict_report(name, v: InductionVerdict, st):
    fields = ()
    if v.witness is not None:
        labels = ("graph", "model", "phi") if len(v.witness) == 3 else ("graph1", "graph2", "psi", "phi")
        fields = tuple((k, render(x, st)) for k, x in zip(labels, v.witness))
    return PostulateReport(name, v.holds, v.witness, v.instances, v.skipped, fields)


# --------------------------------------------------------------------------
# Subcommands

def cmd_check_model(a, out):
    m = read_model(a.file)
    v = validate_model(m)
    if v:
        print("VALID", file=out)
        return
    print(f"INVALID {v.reason}: {v.witness}", file=out)
    raise CheckFailed


def cmd_check_graph(a, out):
    g = read_graph(a.file)
    base = g.graph if isinstance(g, GroundedPGraph) else g
    v = validate_graph(base)
    if v:
        print("VALID", file=out)
        return
    cycle = " < ".join(f"n{i + 1}" for i in v.witness + v.witness[:1])
    print(f"INVALID {v.reason}: {cycle}", file=out)
    raise CheckFailed


def cmd_induce(a, out):
    g = _plain(read_graph(a.graph))
    print(model_to_text(induced_order(g, fingerprint(parse_prop(a.worlds, g.st), g.st))), file=out)


def cmd_canonical(a, out):
    print(graph_to_text(canonical_graph(read_model(a.model))), file=out)


def cmd_ground_induce(a, out):
    print(model_to_text(grounded_induce(_grounded(read_graph(a.graph)))), file=out)


def cmd_mu(a, out):
    g = _grounded(read_graph(a.graph))
    f = mu(g, parse_prop(a.psi, g.st), over=a.over)
    print(f"formula: {to_text(f)}", file=out)
    print(f"worlds: {render_worlds(fingerprint(f, g.st) & g.ground_worlds, g.st)}", file=out)


def cmd_revise(a, out):
    if (a.model is None) == (a.graph is None):
        raise PrefDLError("revise needs exactly one of --model or --graph")
    if a.model is not None:
        m = read_model(a.model)
        print(model_to_text(DEFAULT_REGISTRY.apply(a.op, m, parse_prop(a.phi, m.st))), file=out)
        return
    if a.op != "natural":
        raise PrefDLError("graph revision supports only --op natural")
    g = _grounded(read_graph(a.graph))
    print(graph_to_text(NATURAL_GRAPH(g, parse_prop(a.phi, g.st))), file=out)


def cmd_eval(a, out):
    m = read_model(a.model)
    w = m.st.parse_world(a.world)
    if not m.worlds >> w & 1:
        raise PrefDLError(f"world {a.world} is not in the model")
    f = parse_formula(a.formula, m.st)
    ok = bool(extension(m, f) >> w & 1)
    print("TRUE" if ok else "FALSE", file=out)
    if not ok:
        raise CheckFailed


def cmd_postulate(a, out):
    if a.postulate in ("faith", "cb"):
        for name in ("model", "phi", "revised"):
            if getattr(a, name) is None:
                raise PrefDLError(f"postulate {a.postulate} needs --{name}")
        m, r = read_model(a.model), read_model(a.revised)
        check = check_faith if a.postulate == "faith" else check_cb
        _emit_report(out, check(m, parse_prop(a.phi, m.st), r))
    elif a.postulate == "cb-axioms":
        _emit_report(out, check_cb2_axioms(DEFAULT_REGISTRY[a.op], symbols_for(a.symbols), a.depth))
    else:
        if a.transform is None:
            raise PrefDLError(f"postulate {a.postulate} needs --transform")
        t = read_transform(a.transform)
        check = (check_grounded_faith_structure if a.postulate == "grounded-faith"
                 else check_grounded_cb_structure)
        if not t.grounded:
            raise PrefDLError(f"postulate {a.postulate} needs a grounded transformation")
        _emit_report(out, check(t, symbols_for(a.symbols)))


def cmd_equiv(a, out):
    g1, g2 = _plain(read_graph(a.g1), "--g1"), _plain(read_graph(a.g2), "--g2")
    if g1.st != g2.st:
        raise PrefDLError("graphs are over different symbols")
    ok = phi_equivalent(g1, g2, parse_prop(a.phi, g1.st))
    print("HOLDS" if ok else "FAILS", file=out)
    if not ok:
        raise CheckFailed


def cmd_induction(a, out):
    t = read_transform(a.transform)
    st = symbols_for(a.symbols)
    v = induction_check(t, DEFAULT_REGISTRY[a.op], st)
    _emit_report(out, _verdict_report("induction", v, st))


def cmd_relevance(a, out):
    t = read_transform(a.transform)
    st = symbols_for(a.symbols)
    _emit_report(out, _verdict_report("relevance", relevance_check(t, st), st))


def cmd_gap_demo(a, out):
    r = demonstrate_plain_graph_gap(symbols_for(a.symbols), grounded=a.grounded)
    status = "FOUND" if r.holds else "INCONCLUSIVE"
    print(f"GAP {status} instances={r.instances}", file=out)
    if r.fields:
        print("CERTIFICATE", file=out)
        for k, v in r.fields:
            print(f"  {k}: {v}", file=out)
        print("END", file=out)
    if not r.holds and not a.grounded:
        raise CheckFailed


def cmd_enumerate(a, out):
    st = symbols_for(a.symbols)
    if a.sample is None:
        models = enumerate_models(st)
    else:
        models = enumerate_models(st, "sample", a.sample, a.seed)
    for m in models:
        print(model_to_text(m), file=out)


def cmd_verify(a, out):
    if a.criterion is None and not a.all:
        raise PrefDLError("verify needs --all or --criterion")
    which = None if a.all else a.criterion
    for k in which or ():
        if k not in CRITERIA:
            raise PrefDLError(f"unknown criterion {k}")
    results = run_criteria(symbols_for(a.symbols), which, out)
    passed = sum(r.passed for r in results)
    print(f"SUMMARY {passed}/{len(results)} criteria passed", file=out)
    if passed != len(results):
        raise CheckFailed


# --------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="prefdl", description="Preference models, priority graphs and revision checks.")
    p.add_argument("--version", action="version", version=f"prefdl {__version__}")
    p.add_argument("-o", "--output", help="write output to this file instead of stdout")
    sub = p.add_subparsers(dest="command", required=True, metavar="COMMAND")

    def add(name, fn, help_):
        sp = sub.add_parser(name, help=help_)
        sp.set_defaults(fn=fn)
        return sp

    sp = add("check-model", cmd_check_model, "validate a model file")
    sp.add_argument("file")
    sp = add("check-graph", cmd_check_graph, "validate a graph file")
    sp.add_argument("file")
    sp = add("induce", cmd_induce, "model induced by a graph on a world set")
    sp.add_argument("--graph", required=True)
    sp.add_argument("--worlds", default="T", help="formula selecting the worlds")
    sp = add("canonical", cmd_canonical, "canonical graph of a model")
    sp.add_argument("--model", required=True)
    sp = add("ground-induce", cmd_ground_induce, "model induced by a grounded graph")
    sp.add_argument("--graph", required=True)
    sp = add("mu", cmd_mu, "formula for the most plausible psi-worlds")
    sp.add_argument("--graph", required=True)
    sp.add_argument("--psi", required=True)
    sp.add_argument("--over", choices=("extensions", "chains"), default="extensions")
    sp = add("revise", cmd_revise, "revise a model (or grounded graph)")
    sp.add_argument("--model")
    sp.add_argument("--graph")
    sp.add_argument("--phi", required=True)
    sp.add_argument("--op", default="natural")
    sp = add("eval", cmd_eval, "model-check a formula at a world")
    sp.add_argument("--model", required=True)
    sp.add_argument("--world", required=True)
    sp.add_argument("--formula", required=True)
    sp = add("postulate", cmd_postulate, "check a revision postulate")
    sp.add_argument("postulate", choices=("faith", "cb", "cb-axioms", "grounded-faith", "grounded-cb"))
    sp.add_argument("--model")
    sp.add_argument("--phi")
    sp.add_argument("--revised")
    sp.add_argument("--op", default="natural")
    sp.add_argument("--transform")
    sp.add_argument("--symbols", type=int, default=2)
    sp.add_argument("--depth", type=int, default=2)
    sp = add("equiv", cmd_equiv, "phi-equivalence of two graphs")
    sp.add_argument("--g1", required=True)
    sp.add_argument("--g2", required=True)
    sp.add_argument("--phi", default="T")
    sp = add("induction", cmd_induction, "does a transformation induce an operator")
    sp.add_argument("--transform", required=True)
    sp.add_argument("--op", default="natural")
    sp.add_argument("--symbols", type=int, default=2)
    sp = add("relevance", cmd_relevance, "bounded relevance check of a transformation")
    sp.add_argument("--transform", required=True)
    sp.add_argument("--symbols", type=int, default=2)
    sp = add("gap-demo", cmd_gap_demo, "search for a plain-graph impossibility certificate")
    sp.add_argument("--symbols", type=int, default=2)
    sp.add_argument("--grounded", action="store_true")
    sp = add("enumerate", cmd_enumerate, "list preference models")
    sp.add_argument("--symbols", type=int, default=2)
    sp.add_argument("--sample", type=int, help="draw this many random models instead")
    sp.add_argument("--seed", type=int, default=0)
    sp = add("verify", cmd_verify, "run the acceptance sweeps")
    sp.add_argument("--all", action="store_true")
    sp.add_argument("--criterion", type=int, action="append")
    sp.add_argument("--symbols", type=int, default=2)
    return p


def run(argv=None) -> int:
    parser = build_parser()
    try:
        a = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    buf = io.StringIO()
    # stream verify output line by line when writing to the terminal
    out = sys.stdout if a.output is None and a.command == "verify" else buf
    code = 0
    try:
        a.fn(a, out)
    except CheckFailed:
        code = 1
    except (PrefDLError, OSError, ValueError) as e:
        print(f"prefdl: error: {e}", file=sys.stderr)
        return 2
    text = buf.getvalue()
    if a.output is not None:
        with open(a.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


def main():
    sys.exit(run())
