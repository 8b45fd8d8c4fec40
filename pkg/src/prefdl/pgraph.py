"""Priority graphs, grounded priority graphs and the orders they induce."""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Iterator

from . import kernels
from .errors import BoundExceededError, GraphError, InconsistentFormulaError
from .model import (PreferenceModel, Verdict, cluster_lt, clusters,
                    max_exhaustive_symbols, enumerate_models, validate_model)
from .syntax import (And, Formula, SymbolTable, F, as_mask, disj, fingerprint,
                     is_propositional, model_formula, semantic_classes,
                     world_formula, worlds_desc)


@dataclass(frozen=True)
class PGraph:
    """Formulas under a strict priority order; ``(i, j)`` in ``edges`` means i ≺ j.

    Node identity is positional, so equivalent formulas may repeat.  The
    order used everywhere is the transitive closure of ``edges``.
    """
    st: SymbolTable
    nodes: tuple[Formula, ...]
    edges: frozenset[tuple[int, int]] = frozenset()

    def __post_init__(self):
        object.__setattr__(self, "nodes", tuple(self.nodes))
        object.__setattr__(self, "edges", frozenset((int(a), int(b)) for a, b in self.edges))
        k = len(self.nodes)
        for a, b in self.edges:
            if not (0 <= a < k and 0 <= b < k):
                raise GraphError(f"edge ({a}, {b}) refers to a missing node")
        for f in self.nodes:
            if not is_propositional(f):
                raise GraphError(f"graph nodes must be propositional: {f}")

    @cached_property
    def fingerprints(self) -> tuple[int, ...]:
        return tuple(fingerprint(f, self.st) for f in self.nodes)

    @cached_property
    def pred(self) -> tuple[int, ...]:
        """``pred[j]``: bitset of nodes i with i ≺ j in the transitive closure."""
        k = len(self.nodes)
        pred = [0] * k
        for a, b in self.edges:
            pred[b] |= 1 << a
        for mid in range(k):
            bm = 1 << mid
            for j in range(k):
                if pred[j] & bm:
                    pred[j] |= pred[mid]
        return tuple(pred)

    def precedes(self, i: int, j: int) -> bool:
        return bool(self.pred[j] >> i & 1)

    def __len__(self):
        return len(self.nodes)

    def __str__(self):
        from .formats import graph_to_text
        return graph_to_text(self)


@dataclass(frozen=True)
class GroundedPGraph:
    """A priority graph together with a consistent formula fixing its worlds."""
    ground: Formula
    graph: PGraph

    def __post_init__(self):
        if not is_propositional(self.ground):
            raise GraphError("grounding formula must be propositional")
        if fingerprint(self.ground, self.graph.st) == 0:
            raise InconsistentFormulaError(f"grounding formula {self.ground} is inconsistent")

    @property
    def st(self) -> SymbolTable:
        return self.graph.st

    @cached_property
    def ground_worlds(self) -> int:
        return fingerprint(self.ground, self.graph.st)

    def __str__(self):
        from .formats import graph_to_text
        return graph_to_text(self)


def validate_graph(g: PGraph) -> Verdict:
    """A graph is valid iff the closure of its edges is irreflexive."""
    for i in range(len(g.nodes)):
        if g.pred[i] >> i & 1:
            return Verdict(False, _cycle_through(g, i), "priority relation is cyclic")
    return Verdict(True)


def _cycle_through(g, start):
    succ = {}
    for a, b in g.edges:
        succ.setdefault(a, []).append(b)
    for v in succ:
        succ[v].sort()
    # BFS for the shortest path start -> ... -> start
    frontier = [(start, (start,))]
    seen = set()
    while frontier:
        nxt = []
        for v, path in frontier:
            for u in succ.get(v, ()):
                if u == start:
                    return path
                if u not in seen:
                    seen.add(u)
                    nxt.append((u, path + (u,)))
        frontier = nxt
    return (start,)


def _require_valid(g):
    v = validate_graph(g)
    if not v:
        raise GraphError(f"{v.reason}: cycle {v.witness}")


def induced_order(g: PGraph, worlds) -> PreferenceModel:
    """The preference model on ``worlds`` induced by ``g``.

    w <= x iff every node that x satisfies and w does not has a strictly
    higher-priority node that w satisfies and x does not.
    """
    worlds = as_mask(worlds)
    if worlds == 0:
        raise GraphError("induced_order needs a nonempty world set")
    _require_valid(g)
    up = kernels.induced_up(list(g.fingerprints), list(g.pred), worlds, g.st.size)
    return PreferenceModel(g.st, worlds, tuple(up))


def induces(g: PGraph, m: PreferenceModel) -> bool:
    return induced_order(g, m.worlds).up == m.up


def canonical_graph(m: PreferenceModel) -> PGraph:
    """One disjunctive characteristic formula per cluster, ordered as the clusters are."""
    cs = clusters(m)
    nodes = [disj(world_formula(w, m.st) for w in worlds_desc(c)) for c in cs]
    edges = [(i, j) for i, ci in enumerate(cs) for j, cj in enumerate(cs)
             if i != j and cluster_lt(m, ci, cj)]
    g = PGraph(m.st, tuple(nodes), frozenset(edges))
    v = validate_graph(g)
    if not v:
        # the cluster order of a preorder is always a strict order; surface it if not
        raise GraphError(f"canonical graph is not a strict order: {v.witness}")
    return g


def grounded_induce(g: GroundedPGraph) -> PreferenceModel:
    return induced_order(g.graph, g.ground_worlds)


def maximal_chains(g: PGraph) -> list[tuple[int, ...]]:
    """All maximal chains, each listed from the highest-priority node down."""
    _require_valid(g)
    k = len(g.nodes)
    succ = [0] * k
    for j in range(k):
        for i in range(k):
            if g.pred[j] >> i & 1:
                succ[i] |= 1 << j
    covers = []
    for i in range(k):
        c = 0
        for j in range(k):
            if succ[i] >> j & 1 and not (succ[i] & g.pred[j]):
                c |= 1 << j
        covers.append(c)
    out = []

    def extend(chain):
        last = chain[-1]
        if not covers[last]:
            out.append(tuple(chain))
            return
        for j in range(k):
            if covers[last] >> j & 1:
                extend(chain + [j])

    for i in range(k):
        if not g.pred[i]:
            extend([i])
    return sorted(out)


def linear_extensions(g: PGraph) -> Iterator[tuple[int, ...]]:
    """Orderings of all nodes compatible with ≺, in lexicographic order."""
    _require_valid(g)
    k = len(g.nodes)
    full = (1 << k) - 1

    def rec(placed, seq):
        if placed == full:
            yield tuple(seq)
            return
        for i in range(k):
            if not placed >> i & 1 and g.pred[i] & ~placed == 0:
                seq.append(i)
                yield from rec(placed | 1 << i, seq)
                seq.pop()

    yield from rec(0, [])


def mu_sequence(g: GroundedPGraph, psi: Formula, seq: Iterable[int]) -> tuple[Formula, int]:
    """Greedy consistent conjunction of ``seq``'s nodes onto ground ∧ psi.

    Returns the formula and its fingerprint.
    """
    st = g.st
    f = And(g.ground, psi)
    fp = g.ground_worlds & fingerprint(psi, st)
    for i in seq:
        cand = fp & g.graph.fingerprints[i]
        if cand:
            f = And(g.graph.nodes[i], f)
            fp = cand
    return f, fp


def mu(g: GroundedPGraph, psi: Formula, over: str = "extensions") -> Formula:
    """Formula true at exactly the most plausible psi-worlds of ``grounded_induce(g)``.

    The greedy recursion runs along every linear extension of the priority
    order (``over="extensions"``) and the results are disjoined.  The
    ``over="chains"`` variant runs it along maximal chains only; it agrees on
    totally ordered graphs but over-approximates when incomparable nodes
    overlap (e.g. nodes p, q without edges and psi = T yield p | q, not p & q).
    """
    if fingerprint(And(g.ground, psi), g.st) == 0:
        return F
    if over == "extensions":
        seqs = list(linear_extensions(g.graph))
    elif over == "chains":
        seqs = maximal_chains(g.graph)
    else:
        raise ValueError(f"unknown sequence family {over!r}")
    if not seqs:
        seqs = [()]
    parts = []
    seen = set()
    for seq in seqs:
        f, _ = mu_sequence(g, psi, seq)
        if f not in seen:
            seen.add(f)
            parts.append(f)
    return disj(parts)


def phi_equivalent(g1: PGraph, g2: PGraph, phi: Formula) -> bool:
    """Do both graphs induce the same order on the worlds satisfying ``phi``?"""
    worlds = fingerprint(phi, g1.st)
    if worlds == 0:
        raise InconsistentFormulaError(f"phi-equivalence needs a consistent formula, got {phi}")
    return induced_order(g1, worlds).up == induced_order(g2, worlds).up


# --------------------------------------------------------------------------
# Candidate pools for the bounded sweeps

def _check_pool_bound(st):
    cap = max_exhaustive_symbols()
    if st.n > cap:
        raise BoundExceededError(
            f"graph pools are exhaustive and capped at {cap} symbols (got {st.n}); "
            "set PREFDL_MAX_SYMBOLS to override")


def small_graphs(st: SymbolTable, max_nodes: int = 2) -> list[PGraph]:
    """Every graph with at most two nodes drawn from the semantic classes.

    Two-node graphs are taken up to swapping positions: classes a <= b by
    fingerprint, with no edge, a ≺ b, or b ≺ a (one edge when a == b).
    """
    _check_pool_bound(st)
    if max_nodes > 2:
        raise BoundExceededError("small_graphs supports at most two nodes")
    reps = [f for _, f in semantic_classes(st)]
    out = [PGraph(st, ())]
    if max_nodes >= 1:
        out += [PGraph(st, (f,)) for f in reps]
    if max_nodes >= 2:
        for i, a in enumerate(reps):
            for j in range(i, len(reps)):
                b = reps[j]
                out.append(PGraph(st, (a, b)))
                out.append(PGraph(st, (a, b), frozenset({(0, 1)})))
                if i != j:
                    out.append(PGraph(st, (a, b), frozenset({(1, 0)})))
    return out


def canonical_pool(st: SymbolTable) -> list[PGraph]:
    return [canonical_graph(m) for m in enumerate_models(st)]


def graph_pool(st: SymbolTable, extra: Iterable[PGraph] = ()) -> list[PGraph]:
    """``extra`` graphs, then the canonical graph of every model, then small graphs."""
    return list(extra) + canonical_pool(st) + small_graphs(st)


def grounded_pool(st: SymbolTable) -> list[GroundedPGraph]:
    """Small graphs under every consistent grounding, then canonical graphs
    grounded by the formula of their model's world set."""
    _check_pool_bound(st)
    out = []
    for mask, ground in semantic_classes(st):
        if mask:
            out.extend(GroundedPGraph(ground, g) for g in small_graphs(st))
    for m in enumerate_models(st):
        out.append(GroundedPGraph(model_formula(m.worlds, st), canonical_graph(m)))
    return out
