"""Checkers for Faith, CB, the CB axiom schemata and their graph-level forms."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from .dynamics import (DEFAULT_REGISTRY, DynamicOperator, GraphTransformation,
                       prepend_mu, natural_revision)
from .errors import VacuousRevisionError, WorldSetMismatchError
from .model import (Evaluator, PreferenceModel, enumerate_models, min_worlds,
                    restrict, subsets)
from .pgraph import (GroundedPGraph, PGraph, canonical_pool, grounded_induce,
                     grounded_pool, induced_order, induces, mu, phi_equivalent,
                     small_graphs, _check_pool_bound)
from .syntax import (And, Atom, BoxLeq, BoxLt, Dynamic, Everywhere, Formula,
                     Iff, Implies, Mu, Not, Or, SymbolTable, consistent_classes,
                     fingerprint, iter_bits, to_text, worlds_desc)


@dataclass(frozen=True)
class PostulateReport:
    """Verdict of one postulate check.

    ``witness`` is the raw failing instance (None when the check holds);
    ``fields`` is the same instance rendered as ``(label, text)`` pairs for
    the report format.  The gap demonstration instead carries a positive
    ``certificate``.
    """
    postulate: str
    holds: bool
    witness: tuple | None = None
    instances: int = 0
    skipped: int = 0
    fields: tuple = ()
    certificate: tuple | None = None

    def __bool__(self):
        return self.holds


def render_worlds(mask: int, st: SymbolTable) -> str:
    return "{" + " ".join(st.bitstring(w) for w in worlds_desc(mask)) + "}"


def render(value, st: SymbolTable) -> str:
    from .formats import graph_to_text, model_to_text
    if isinstance(value, PreferenceModel):
        return model_to_text(value)
    if isinstance(value, (PGraph, GroundedPGraph)):
        return graph_to_text(value)
    if isinstance(value, Formula):
        return f'"{to_text(value)}"'
    return str(value)


def report_to_text(r: PostulateReport) -> str:
    status = "HOLDS" if r.holds else "FAILS"
    lines = [f"POSTULATE {r.postulate} {status} instances={r.instances}"]
    if r.skipped:
        lines[0] += f" skipped={r.skipped}"
    if r.fields:
        lines.append("WITNESS" if r.certificate is None else "CERTIFICATE")
        lines += [f"  {k}: {v}" for k, v in r.fields]
        lines.append("END")
    return "\n".join(lines)


def _same_frame(m, revised):
    if m.st != revised.st or m.worlds != revised.worlds:
        raise WorldSetMismatchError("original and revised models must share worlds and symbols")


# --------------------------------------------------------------------------
# Model-level postulates

def check_faith(m: PreferenceModel, phi: Formula, revised: PreferenceModel) -> PostulateReport:
    """Minimal phi-worlds before must be exactly the minimal worlds after.

    Witness: (expected minimal set, actual minimal set) as world bitsets.
    """
    _same_frame(m, revised)
    st = m.st
    expected = min_worlds(m, fingerprint(phi, st) & m.worlds)
    actual = min_worlds(revised, revised.worlds)
    if expected == actual:
        return PostulateReport("faith", True, instances=1)
    return PostulateReport("faith", False, (expected, actual), 1, fields=(
        ("model", render(m, st)), ("phi", render(phi, st)), ("revised", render(revised, st)),
        ("expected-min", render_worlds(expected, st)), ("actual-min", render_worlds(actual, st))))


def check_cb(m: PreferenceModel, phi: Formula, revised: PreferenceModel) -> PostulateReport:
    """Comparisons between worlds outside the minimal phi-worlds are unchanged.

    Pairs are scanned from the highest valuation down; the witness is the
    first pair ``(w, x)`` whose ``w <= x`` status differs.
    """
    _same_frame(m, revised)
    st = m.st
    best = min_worlds(m, fingerprint(phi, st) & m.worlds)
    outside = worlds_desc(m.worlds & ~best)
    for w in outside:
        for x in outside:
            if m.leq(w, x) != revised.leq(w, x):
                return PostulateReport("cb", False, (w, x), 1, fields=(
                    ("model", render(m, st)), ("phi", render(phi, st)),
                    ("revised", render(revised, st)),
                    ("pair", f"{st.bitstring(w)} {st.bitstring(x)}"),
                    ("before", "leq" if m.leq(w, x) else "not leq"),
                    ("after", "leq" if revised.leq(w, x) else "not leq")))
    return PostulateReport("cb", True, instances=1)


def promote_all(m: PreferenceModel, phi: Formula) -> PreferenceModel:
    """Every phi-world strictly below every other world; internal orders kept.

    Not registered by default: it exists as a mutation of natural revision.
    """
    target = fingerprint(phi, m.st) & m.worlds
    if not target:
        raise VacuousRevisionError(f"no world of the model satisfies {phi}")
    W = m.worlds
    rest = W & ~target
    up = tuple(((r & target) | rest) if target >> w & 1 else (r & rest)
               for w, r in enumerate(m.up))
    return PreferenceModel(m.st, W, up)


PROMOTE_ALL = DynamicOperator("promote-all", promote_all)


def check_operator(op: DynamicOperator, st: SymbolTable):
    """Faith and CB for ``op`` on every model and consistent formula class.

    Returns ``(faith_report, cb_report)``.  Classes with no world in the
    model are outside the operator's domain and counted as skipped.
    """
    reports = {}
    counts = {"faith": 0, "cb": 0}
    skipped = 0
    classes = consistent_classes(st)
    for m in enumerate_models(st):
        for mask, phi in classes:
            if not mask & m.worlds:
                skipped += 1
                continue
            r = op(m, phi)
            for name, check in (("faith", check_faith), ("cb", check_cb)):
                if name in reports:
                    continue
                counts[name] += 1
                rep = check(m, phi, r)
                if not rep:
                    reports[name] = rep
        if len(reports) == 2:
            break
    out = []
    for name in ("faith", "cb"):
        rep = reports.get(name)
        if rep is None:
            rep = PostulateReport(name, True)
        out.append(PostulateReport(name, rep.holds, rep.witness, counts[name], skipped, rep.fields))
    return tuple(out)


# --------------------------------------------------------------------------
# CB axiom schemata

def _dyn(op, phi, body):
    return Dynamic(op, phi, body)


def _schema_atoms(op, phi, xi, atom):
    return Iff(_dyn(op, phi, atom), atom)


def _schema_and(op, phi, xi, atom):
    # conjunct repeated as printed
    return Iff(_dyn(op, phi, And(xi, xi)), And(_dyn(op, phi, xi), _dyn(op, phi, xi)))


def _schema_not(op, phi, xi, atom):
    return Iff(_dyn(op, phi, Not(xi)), Not(_dyn(op, phi, xi)))


def _schema_everywhere(op, phi, xi, atom):
    return Iff(_dyn(op, phi, Everywhere(xi)), Everywhere(_dyn(op, phi, xi)))


def _schema_box_leq(op, phi, xi, atom):
    m, r = Mu(phi), _dyn(op, phi, xi)
    return Iff(_dyn(op, phi, BoxLeq(xi)),
               And(Everywhere(Implies(m, r)), Implies(Not(m), BoxLeq(r))))


def _schema_box_lt(op, phi, xi, atom):
    m, r = Mu(phi), _dyn(op, phi, xi)
    return Iff(_dyn(op, phi, BoxLt(xi)),
               Or(m, Implies(Not(m), And(Everywhere(Implies(m, r)), BoxLt(r)))))


def schema_box_lt_tautological(op, phi, xi, atom):
    """The strict-box reduction read with ``(mu | ~mu)`` as a tautological guard."""
    m, r = Mu(phi), _dyn(op, phi, xi)
    return Iff(_dyn(op, phi, BoxLt(xi)),
               Implies(Or(m, Not(m)), And(Everywhere(Implies(m, r)), BoxLt(r))))


def _schema_back_leq(op, phi, xi, atom):
    n = Not(Mu(phi))
    return Implies(BoxLeq(_dyn(op, phi, xi)),
                   Implies(n, _dyn(op, phi, BoxLeq(Implies(n, xi)))))


def _schema_back_lt(op, phi, xi, atom):
    n = Not(Mu(phi))
    return Implies(BoxLt(_dyn(op, phi, xi)),
                   Implies(n, _dyn(op, phi, BoxLt(Implies(n, xi)))))


@dataclass(frozen=True)
class Schema:
    name: str
    build: Callable
    uses_atom: bool = False


CB_SCHEMATA = (
    Schema("atom-permanence", _schema_atoms, uses_atom=True),
    Schema("conjunction", _schema_and),
    Schema("negation", _schema_not),
    Schema("everywhere", _schema_everywhere),
    Schema("box-leq-reduction", _schema_box_leq),
    Schema("box-lt-reduction", _schema_box_lt),
    Schema("box-leq-converse", _schema_back_leq),
    Schema("box-lt-converse", _schema_back_lt),
)


def xi_pool(st: SymbolTable, depth: int = 2) -> list[Formula]:
    """Modal formulas up to ``depth`` over atoms, ``~``, ``&``, ``A``, ``[<=]``, ``[<]``.

    Deterministic: each level lists the previous level, then unary
    applications, then conjunctions of unordered distinct pairs.
    """
    level = [Atom(s) for s in st.symbols]
    for _ in range(depth):
        nxt = list(level)
        for ctor in (Not, Everywhere, BoxLeq, BoxLt):
            nxt += [ctor(f) for f in level]
        nxt += [And(a, b) for i, a in enumerate(level) for b in level[i + 1:]]
        level = nxt
    return level


def check_cb2_axioms(op: DynamicOperator, st: SymbolTable, depth: int = 2,
                     schemata=CB_SCHEMATA) -> PostulateReport:
    """Model-check every schema instance on every model at every world.

    Instances range over schemata x models x consistent phi classes x xi
    (atoms for the atom schema).  Two reductions keep the sweep small, and
    both follow from where xi and phi occur in the schemata:

    * xi only occurs under ``[* op phi]``, so its truth enters only through
      its extension in the revised model; one xi per extension is checked
      and the verdict counts for the whole group.
    * phi only occurs as ``[* op phi]`` and ``mu(phi)``, so an instance is
      fixed by the model, the revised model and the minimal phi-worlds of
      each; phi classes agreeing on all of these share one check.

    Schemata are swept in order and the first failing instance is the
    witness ``(schema, model, world, phi, xi)``.
    """
    registry = DEFAULT_REGISTRY.copy()
    registry.register(op)
    pool = xi_pool(st, depth)
    atoms = [Atom(s) for s in st.symbols]
    classes = consistent_classes(st)
    contexts = []
    shared: dict = {}
    groups_by_revised: dict = {}
    skipped = 0
    for m in enumerate_models(st):
        for mask, phi in classes:
            target = mask & m.worlds
            if not target:
                skipped += 1
                continue
            r = registry.apply(op.name, m, phi)
            key = (m.worlds, m.up, r.up, min_worlds(m, target), min_worlds(r, target))
            if key not in shared:
                rkey = (r.worlds, r.up)
                groups = groups_by_revised.get(rkey)
                if groups is None:
                    after = Evaluator(r, registry)
                    by_ext: dict[int, list] = {}
                    for xi in pool:
                        by_ext.setdefault(after(xi), []).append(xi)
                    groups = groups_by_revised[rkey] = [(g[0], len(g)) for g in by_ext.values()]
                shared[key] = (Evaluator(m, registry), phi, groups, {})
            contexts.append((m, phi, key))
    instances = 0
    for schema in schemata:
        for m, phi, key in contexts:
            ev, rep_phi, groups, verdicts = shared[key]
            cases = [(a, 1) for a in atoms] if schema.uses_atom else groups
            for xi, weight in cases:
                instances += weight
                vkey = (schema.name, id(xi))
                bad = verdicts.get(vkey)
                if bad is None:
                    bad = verdicts[vkey] = m.worlds & ~ev(schema.build(op.name, rep_phi, xi, xi))
                if bad:
                    w = worlds_desc(bad)[0]
                    f = schema.build(op.name, phi, xi, xi)
                    return PostulateReport(
                        "cb-axioms", False, (schema.name, m, w, phi, xi), instances, skipped,
                        (("schema", schema.name), ("model", render(m, st)),
                         ("world", st.bitstring(w)), ("phi", render(phi, st)),
                         ("xi", render(xi, st)), ("instance", render(f, st))))
    return PostulateReport("cb-axioms", True, None, instances, skipped)


# --------------------------------------------------------------------------
# Grounded graph transformations

def _grounded_instances(st, pool):
    if pool is None:
        pool = grounded_pool(st)
    classes = consistent_classes(st)
    for g in pool:
        for mask, psi in classes:
            yield g, psi, bool(mask & g.ground_worlds)


def check_grounded_faith_structure(t: GraphTransformation, st: SymbolTable,
                                   pool=None) -> PostulateReport:
    """``t(G, psi)`` must be ground-equivalent to G with ``mu(G, psi)`` prepended.

    Formulas inconsistent with the grounding are skipped.  Witness: (G, psi).
    """
    checked = skipped = 0
    for g, psi, ok in _grounded_instances(st, pool):
        if not ok:
            skipped += 1
            continue
        checked += 1
        ref = prepend_mu(g, psi)
        out = t(g, psi)
        if not phi_equivalent(out.graph, ref, g.ground):
            return PostulateReport("grounded-faith", False, (g, psi), checked, skipped, (
                ("graph", render(g, st)), ("psi", render(psi, st)),
                ("result", render(out, st)), ("reference", render(GroundedPGraph(g.ground, ref), st))))
    return PostulateReport("grounded-faith", True, None, checked, skipped)


def check_grounded_cb_structure(t: GraphTransformation, st: SymbolTable,
                                pool=None) -> PostulateReport:
    """CB on the models induced before and after ``t``.  Witness: (G, psi, pair)."""
    checked = skipped = 0
    for g, psi, ok in _grounded_instances(st, pool):
        if not ok:
            skipped += 1
            continue
        checked += 1
        out = t(g, psi)
        before, after = grounded_induce(g), grounded_induce(out)
        rep = check_cb(before, psi, after)
        if not rep:
            return PostulateReport("grounded-cb", False, (g, psi, rep.witness), checked, skipped, (
                ("graph", render(g, st)), ("psi", render(psi, st)),
                ("result", render(out, st))) + rep.fields[-3:])
    return PostulateReport("grounded-cb", True, None, checked, skipped)


def cb_structure_clauses(g: GroundedPGraph, psi: Formula, out: GroundedPGraph) -> bool:
    """Clause-by-clause structural CB conditions between ``g`` and ``out``.

    Node formulas are compared relative to the grounding; ``a ≺ b`` uses the
    closed priority orders.  Used as a cross-check on the prepend construction.
    """
    G, H = g.graph, out.graph
    W = g.ground_worlds
    fa = [fp & W for fp in G.fingerprints]
    fb = [fp & W for fp in H.fingerprints]
    nu = fingerprint(mu(g, psi), g.st) & W
    ka, kb = range(len(fa)), range(len(fb))

    def clause1(x, y):
        return fa[x] == fb[y] and all(
            fb[a2] == nu or any(fa[a] == fb[a2] and G.precedes(a, x) for a in ka)
            for a2 in kb if H.precedes(a2, y))

    def clause2(y, x):
        return fa[x] == fb[y] and all(
            any(fa[a] == fb[a2] and H.precedes(a2, y) for a2 in kb)
            for a in ka if G.precedes(a, x))

    one = all(any(clause1(x, y) for y in kb) for x in ka)
    two = all(fb[y] == nu or any(clause2(y, x) for x in ka) for y in kb)
    return one and two


# --------------------------------------------------------------------------
# Plain-graph impossibility

def _gap_graphs(st):
    return small_graphs(st) + canonical_pool(st)


def demonstrate_plain_graph_gap(st: SymbolTable, grounded: bool = False) -> PostulateReport:
    """Search for two models induced by one plain graph whose natural
    revisions no single graph can induce together.

    Certificate ``(G, psi, M1, M2, R1, R2)``: G induces M1 and its proper
    submodel M2, but ``R1 = nr(M1, psi)`` restricted to M2's worlds differs
    from ``R2 = nr(M2, psi)``.  Any graph inducing R1 induces that
    restriction, so none induces R2 as well; this is also confirmed against
    the pool.  A grounded graph induces a single model, so the grounded
    search has no pair to compare and reports no certificate.  An empty
    search is inconclusive, not a refutation.
    """
    _check_pool_bound(st)
    name = "gap-grounded" if grounded else "gap"
    pool = _gap_graphs(st)
    classes = list(reversed(consistent_classes(st)))
    checked = 0
    if grounded:
        for g in grounded_pool(st):
            models = [grounded_induce(g)]
            checked += len(models) * len(classes)
            # one induced model per graph: no submodel pair exists
        return PostulateReport(name, False, None, checked)
    for g in pool:
        for psi_mask, psi in classes:
            for w1 in subsets(st.full):
                if not psi_mask & w1:
                    continue
                m1 = induced_order(g, w1)
                r1 = natural_revision(m1, psi)
                for w2 in subsets(w1):
                    if w2 == w1 or not psi_mask & w2:
                        continue
                    checked += 1
                    m2 = induced_order(g, w2)
                    r2 = natural_revision(m2, psi)
                    if restrict(r1, w2).up == r2.up:
                        continue
                    if any(induces(h, r1) and induces(h, r2) for h in pool):
                        continue
                    return PostulateReport(name, True, None, checked, certificate=(
                        g, psi, m1, m2, r1, r2), fields=(
                        ("graph", render(g, st)), ("psi", render(psi, st)),
                        ("m1", render(m1, st)), ("m2", render(m2, st)),
                        ("r1", render(r1, st)), ("r2", render(r2, st)),
                        ("r1-restricted", render(restrict(r1, w2), st))))
    return PostulateReport(name, False, None, checked)
