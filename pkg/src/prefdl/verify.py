"""The acceptance sweeps, one function per criterion.

Each criterion returns a :class:`CriterionResult` whose ``line`` is a
deterministic one-line summary; ``run_all`` prints them in order.
"""
from __future__ import annotations

import sys
from dataclasses import dataclass

from .dynamics import (IDENTITY, NATURAL, NATURAL_GRAPH, induction_check,
                       relevance_check, table_transformation)
from .model import enumerate_models, min_worlds, restrict, subsets
from .pgraph import (PGraph, canonical_graph, graph_pool, grounded_induce,
                     grounded_pool, induced_order, induces, mu, phi_equivalent)
from .postulates import (PROMOTE_ALL, check_cb2_axioms, check_operator,
                         demonstrate_plain_graph_gap)
from .syntax import (T, SymbolTable, fingerprint, parse_prop, semantic_classes,
                     to_text)


@dataclass(frozen=True)
class CriterionResult:
    number: int
    title: str
    passed: bool
    detail: str

    @property
    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"CRITERION {self.number} {status} {self.title}: {self.detail}"


def symbols_for(n: int) -> SymbolTable:
    names = ("p", "q", "r", "s", "t", "u")
    if not 1 <= n <= len(names):
        raise ValueError(f"symbol count must be between 1 and {len(names)}")
    return SymbolTable(names[:n])


def criterion_canonical(st: SymbolTable) -> CriterionResult:
    total = ok = 0
    for m in enumerate_models(st):
        total += 1
        ok += induces(canonical_graph(m), m)
    return CriterionResult(1, "canonical round trip", ok == total, f"{ok}/{total} models")


def criterion_submodels(st: SymbolTable) -> CriterionResult:
    checked = failures = 0
    for g in graph_pool(st):
        induced = {w: induced_order(g, w) for w in subsets(st.full)}
        for w, m in induced.items():
            for sub in subsets(w):
                checked += 1
                if restrict(m, sub).up != induced[sub].up:
                    failures += 1
    return CriterionResult(2, "submodel closure", failures == 0,
                           f"{checked} restrictions, {failures} failures")


def criterion_mu(st: SymbolTable) -> CriterionResult:
    classes = semantic_classes(st)
    checked = failures = chain_failures = 0
    for g in grounded_pool(st):
        m = grounded_induce(g)
        for mask, psi in classes:
            want = min_worlds(m, mask & m.worlds)
            checked += 1
            if fingerprint(mu(g, psi), st) & m.worlds != want:
                failures += 1
            if fingerprint(mu(g, psi, over="chains"), st) & m.worlds != want:
                chain_failures += 1
    return CriterionResult(
        3, "mu correctness", failures == 0,
        f"{checked} instances, {failures} failures "
        f"(maximal-chain variant: {chain_failures} failures)")


def criterion_natural_revision(st: SymbolTable) -> CriterionResult:
    faith, cb = check_operator(NATURAL, st)
    total = faith.instances + faith.skipped
    ok = faith.holds and cb.holds
    return CriterionResult(
        4, "natural revision conformance", ok,
        f"{total} model/formula pairs, {faith.instances} revised, {faith.skipped} without "
        f"phi-worlds; faith {'holds' if faith.holds else 'FAILS'}, "
        f"cb {'holds' if cb.holds else 'FAILS'}")


def criterion_grounded_induction(st: SymbolTable) -> CriterionResult:
    v = induction_check(NATURAL_GRAPH, NATURAL, st)
    return CriterionResult(5, "grounded induction", v.holds,
                           f"{v.instances} instances, {v.skipped} skipped, "
                           f"{'0 failures' if v.holds else 'counterexample found'}")


def criterion_cb_axioms(st: SymbolTable, depth: int = 2) -> CriterionResult:
    nat = check_cb2_axioms(NATURAL, st, depth)
    ident = check_cb2_axioms(IDENTITY, st, depth)
    promo = check_cb2_axioms(PROMOTE_ALL, st, depth)
    ok = nat.holds and not ident.holds and not promo.holds

    def fail_at(r):
        return f"fails on {r.witness[0]}" if not r.holds else "HOLDS"

    return CriterionResult(
        6, "cb axiom schemata", ok,
        f"natural {'holds' if nat.holds else 'FAILS'} on {nat.instances} instances; "
        f"identity {fail_at(ident)}; promote-all {fail_at(promo)}")


def chain_pair(st: SymbolTable):
    """Two T-equivalent graphs: ``p ≺ q`` and the four-world chain it induces."""
    two = PGraph(st, (parse_prop("p", st), parse_prop("q", st)), frozenset({(0, 1)}))
    four = PGraph(st, tuple(parse_prop(s, st) for s in ("p & q", "p & ~q", "~p & q", "~p & ~q")),
                  frozenset({(0, 1), (1, 2), (2, 3)}))
    return two, four


def permuted_chain(st: SymbolTable) -> PGraph:
    return PGraph(st, tuple(parse_prop(s, st) for s in ("p & q", "~p & q", "p & ~q", "~p & ~q")),
                  frozenset({(0, 1), (1, 2), (2, 3)}))


def inconsistent_table(st: SymbolTable):
    two, four = chain_pair(st)
    return table_transformation("swap-middle", [(two, two), (four, permuted_chain(st))])


def criterion_relevance(st: SymbolTable) -> CriterionResult:
    if st.symbols[:2] != ("p", "q"):
        return CriterionResult(7, "equivalence and relevance", False, "needs symbols p q")
    two, four = chain_pair(st)
    equiv = phi_equivalent(two, four, T)
    bad = relevance_check(inconsistent_table(st), st)
    nat = relevance_check(NATURAL_GRAPH, st)
    ok = equiv and not bad.holds and bad.witness is not None and nat.holds
    wit = f"witness psi = {to_text(bad.witness[2])}" if bad.witness else "no witness"
    return CriterionResult(
        7, "equivalence and relevance", ok,
        f"chain pair T-equivalent: {'yes' if equiv else 'NO'}; swap-middle table "
        f"{'non-relevant, ' + wit if not bad.holds else 'RELEVANT'}; natural graph revision "
        f"{'relevant' if nat.holds else 'NOT RELEVANT'} on {nat.instances} comparisons")


def criterion_gap(st: SymbolTable) -> CriterionResult:
    plain = demonstrate_plain_graph_gap(st)
    grounded = demonstrate_plain_graph_gap(st, grounded=True)
    ok = plain.holds and not grounded.holds
    desc = "none"
    if plain.certificate:
        g, psi = plain.certificate[:2]
        desc = f"graph with {len(g.nodes)} node(s), psi = {to_text(psi)}"
    return CriterionResult(
        8, "plain graph gap", ok,
        f"plain certificate: {desc}; grounded certificate: "
        f"{'found' if grounded.holds else 'none'}")


CRITERIA = {
    1: criterion_canonical,
    2: criterion_submodels,
    3: criterion_mu,
    4: criterion_natural_revision,
    5: criterion_grounded_induction,
    6: criterion_cb_axioms,
    7: criterion_relevance,
    8: criterion_gap,
}


def run_criteria(st: SymbolTable, which=None, out=None):
    """Run the selected criteria in order, printing each line as it completes."""
    out = out or sys.stdout
    results = []
    for k in sorted(which or CRITERIA):
        r = CRITERIA[k](st)
        print(r.line, file=out, flush=True)
        results.append(r)
    return results
