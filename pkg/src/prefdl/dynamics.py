"""Dynamic operators on models and transformations on priority graphs."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterable

from .errors import (GraphError, InconsistentFormulaError,
                     InvariantViolationError, UnknownOperatorError,
                     VacuousRevisionError)
from .model import (PreferenceModel, enumerate_models, min_worlds, subsets,
                    validate_model)
from .pgraph import (GroundedPGraph, PGraph, graph_pool, grounded_induce,
                     grounded_pool, induced_order, induces, mu)
from .syntax import (Formula, Or, SymbolTable, consistent_classes, fingerprint,
                     semantic_classes)


@dataclass(frozen=True)
class DynamicOperator:
    name: str
    apply: Callable[[PreferenceModel, Formula], PreferenceModel]

    def __call__(self, m, phi):
        return self.apply(m, phi)


def natural_revision(m: PreferenceModel, phi: Formula) -> PreferenceModel:
    """Promote the most plausible phi-worlds to a single bottom cluster.

    All other comparisons are left as they were.
    """
    target = fingerprint(phi, m.st) & m.worlds
    if not target:
        raise VacuousRevisionError(f"no world of the model satisfies {phi}")
    best = min_worlds(m, target)
    W = m.worlds
    rest = W & ~best
    up = tuple(W if best >> w & 1 else (r & rest) for w, r in enumerate(m.up))
    return PreferenceModel(m.st, W, up)


def identity_operator(m: PreferenceModel, phi: Formula) -> PreferenceModel:
    return m


NATURAL = DynamicOperator("natural", natural_revision)
IDENTITY = DynamicOperator("identity", identity_operator)


class OperatorRegistry:
    """Named dynamic operators; ``apply`` enforces the worlds-preservation contract."""

    def __init__(self, ops: Iterable[DynamicOperator] = ()):
        self._ops: dict[str, DynamicOperator] = {}
        for op in ops:
            self.register(op)

    def register(self, op: DynamicOperator) -> None:
        self._ops[op.name] = op

    def __contains__(self, name):
        return name in self._ops

    def __getitem__(self, name) -> DynamicOperator:
        try:
            return self._ops[name]
        except KeyError:
            raise UnknownOperatorError(f"unknown operator {name!r}") from None

    def names(self):
        return sorted(self._ops)

    def copy(self) -> OperatorRegistry:
        return OperatorRegistry(self._ops.values())

    def apply(self, name, m, phi):
        return apply_operator(self, name, m, phi)


DEFAULT_REGISTRY = OperatorRegistry([NATURAL, IDENTITY])


def apply_operator(registry: OperatorRegistry, name: str, m: PreferenceModel,
                   phi: Formula) -> PreferenceModel:
    out = registry[name](m, phi)
    if not isinstance(out, PreferenceModel) or out.st != m.st:
        raise InvariantViolationError(f"operator {name!r} did not return a model over the same symbols")
    if out.worlds != m.worlds:
        raise InvariantViolationError(f"operator {name!r} changed the set of worlds")
    v = validate_model(out)
    if not v:
        raise InvariantViolationError(f"operator {name!r} produced an invalid model: {v.reason}")
    return out


# --------------------------------------------------------------------------
# Graph transformations

@dataclass(frozen=True)
class GraphTransformation:
    """A rewrite of priority graphs by a propositional formula.

    Grounded rules receive the grounded graph and return only the new
    priority graph; the grounding is reattached unchanged, so a grounded
    transformation cannot alter which worlds exist.
    """
    name: str
    grounded: bool
    rule: Callable
    sources: tuple = field(default=(), compare=False)

    def __call__(self, g, phi):
        if self.grounded:
            if not isinstance(g, GroundedPGraph):
                raise GraphError(f"transformation {self.name!r} needs a grounded graph")
            out = self.rule(g, phi)
            if isinstance(out, GroundedPGraph):
                out = out.graph
            return GroundedPGraph(g.ground, out)
        if isinstance(g, GroundedPGraph):
            raise GraphError(f"transformation {self.name!r} works on plain graphs")
        return self.rule(g, phi)


def _graph_of(g):
    return g.graph if isinstance(g, GroundedPGraph) else g


def prepend_graph(g: PGraph, node: Formula) -> PGraph:
    """``node`` placed first, strictly above every existing node."""
    k = len(g.nodes)
    edges = {(0, i + 1) for i in range(k)} | {(a + 1, b + 1) for a, b in g.edges}
    return PGraph(g.st, (node,) + g.nodes, frozenset(edges))


def prepend_mu(g: GroundedPGraph, psi: Formula) -> PGraph:
    """Reference construction: mu(g, psi) added above all of g's nodes."""
    nu = mu(g, psi)
    if fingerprint(nu, g.st) == 0:
        raise InconsistentFormulaError(f"{psi} is inconsistent with the grounding {g.ground}")
    return prepend_graph(g.graph, nu)


def natural_revision_graph(g: GroundedPGraph, psi: Formula) -> GroundedPGraph:
    """Grounded counterpart of :func:`natural_revision`.

    Prepends ``nu = mu(g, psi)`` above every node.  Nodes that separate two
    of the promoted worlds are weakened to ``node | nu`` so the promoted
    worlds form one cluster; when they already do, no node is touched and
    this is exactly :func:`prepend_mu`.
    """
    nu = mu(g, psi)
    best = fingerprint(nu, g.st)
    if best == 0:
        raise InconsistentFormulaError(f"{psi} is inconsistent with the grounding {g.ground}")
    nodes = []
    for f, fp in zip(g.graph.nodes, g.graph.fingerprints):
        split = fp & best
        nodes.append(Or(f, nu) if split and split != best else f)
    graph = prepend_graph(PGraph(g.st, tuple(nodes), g.graph.edges), nu)
    return GroundedPGraph(g.ground, graph)


def _identity_rule(g, phi):
    return _graph_of(g)


IDENTITY_PLAIN = GraphTransformation("identity", False, _identity_rule)
IDENTITY_GROUNDED = GraphTransformation("identity", True, _identity_rule)
NATURAL_GRAPH = GraphTransformation("natural", True, lambda g, psi: natural_revision_graph(g, psi).graph)
PREPEND_MU = GraphTransformation("prepend-mu", True, prepend_mu)


def graph_key(g: PGraph):
    """Identity of a graph up to node equivalence: fingerprints plus closed order."""
    return g.fingerprints, g.pred


def table_transformation(name: str, entries: Iterable[tuple[PGraph, PGraph]],
                         grounded: bool = False) -> GraphTransformation:
    """Transformation given by explicit cases; graphs not listed map to themselves.

    A case matches a graph with the same node fingerprints, position by
    position, and the same closed priority order.
    """
    entries = list(entries)
    table = {graph_key(src): dst for src, dst in entries}

    def rule(g, phi):
        base = _graph_of(g)
        return table.get(graph_key(base), base)

    return GraphTransformation(name, grounded, rule, tuple(src for src, _ in entries))


# --------------------------------------------------------------------------
# Bounded induction and relevance sweeps

@dataclass(frozen=True)
class InductionVerdict:
    holds: bool
    witness: tuple | None = None
    instances: int = 0
    skipped: int = 0

    def __bool__(self):
        return self.holds


def induction_check(t: GraphTransformation, s: DynamicOperator, st: SymbolTable,
                    pool=None) -> InductionVerdict:
    """Does ``t`` induce ``s`` on the pooled graphs?

    For every pooled graph G, every model M it induces and every formula
    class phi, ``t(G, phi)`` must induce ``s(M, phi)``.  Plain graphs induce
    one model per nonempty world set; grounded graphs induce exactly one.
    Revisions outside the operator's domain (no phi-worlds) are skipped.
    The witness is ``(G, M, phi)``.
    """
    if pool is None:
        pool = grounded_pool(st) if t.grounded else graph_pool(st, t.sources)
    classes = semantic_classes(st)
    checked = skipped = 0
    for g in pool:
        if t.grounded:
            models = [grounded_induce(g)]
        else:
            models = [induced_order(g, w) for w in range(1, st.full + 1)]
        for m in models:
            for mask, phi in classes:
                if not mask & m.worlds or (t.grounded and not mask & g.ground_worlds):
                    skipped += 1
                    continue
                target = s(m, phi)
                out = t(g, phi)
                checked += 1
                if not induces(_graph_of(out), target):
                    return InductionVerdict(False, (g, m, phi), checked, skipped)
    return InductionVerdict(True, None, checked, skipped)


def _order_key(g: PGraph, worlds: int):
    return induced_order(g, worlds).up


def relevance_check(t: GraphTransformation, st: SymbolTable, pool=None) -> InductionVerdict:
    """Bounded check that ``t`` preserves psi-equivalence.

    Plain transformations: for all pooled G1, G2 and consistent psi, phi,
    G1 ≡psi G2 must imply t(G1, phi) ≡psi t(G2, phi).  Grounded graphs each
    induce a single model, so for grounded transformations two graphs are
    equivalent when they share the grounding and are equivalent relative to
    it, and the check is that equivalent inputs give equivalent outputs.
    The witness is ``(G1, G2, psi, phi)``; psi runs from ``T`` downwards.
    """
    if pool is None:
        pool = grounded_pool(st) if t.grounded else graph_pool(st, t.sources)
    pool = list(pool)
    classes = semantic_classes(st)
    checked = 0
    if t.grounded:
        groups: dict = {}
        for g in pool:
            key = (g.ground_worlds, _order_key(g.graph, g.ground_worlds))
            groups.setdefault(key, []).append(g)
        for (worlds, _), members in groups.items():
            if len(members) < 2:
                continue
            for mask, phi in classes:
                if not mask & worlds:
                    continue
                rep = members[0]
                want = _order_key(t(rep, phi).graph, worlds)
                for other in members[1:]:
                    checked += 1
                    if _order_key(t(other, phi).graph, worlds) != want:
                        return InductionVerdict(False, (rep, other, rep.ground, phi), checked)
        return InductionVerdict(True, None, checked)

    images = {}
    for idx, g in enumerate(pool):
        for mask, phi in classes:
            images[idx, mask] = t(g, phi)
    for psi_mask, psi in reversed(consistent_classes(st)):
        groups = {}
        for idx, g in enumerate(pool):
            groups.setdefault(_order_key(g, psi_mask), []).append(idx)
        for members in groups.values():
            if len(members) < 2:
                continue
            rep = members[0]
            for mask, phi in classes:
                want = _order_key(images[rep, mask], psi_mask)
                for other in members[1:]:
                    checked += 1
                    if _order_key(images[other, mask], psi_mask) != want:
                        return InductionVerdict(
                            False, (pool[rep], pool[other], psi, phi), checked)
    return InductionVerdict(True, None, checked)
