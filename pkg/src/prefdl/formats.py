"""Flat-file formats for models, graphs and transformation specs.

    model { symbols: p q; worlds: 11 10 01 00; leq: 11<=10, 10~01; }
    graph { symbols: p q; ground: "p | q"; nodes: n1 = "p", n2 = "q"; edges: n1 < n2; }
    transform { name: t; kind: plain; rule: table { a.pg -> b.pg; }; }

Worlds are bitstrings in symbol order.  ``leq`` lists generating pairs; the
reflexive-transitive closure is taken.  Output is deterministic: worlds and
pairs run from the highest valuation down.
"""
from __future__ import annotations

import re
from pathlib import Path

from .errors import ParseError
from .model import PreferenceModel, cluster_lt, clusters
from .pgraph import GroundedPGraph, PGraph
from .syntax import SymbolTable, parse_prop, to_text, worlds_desc

_TOKEN_RE = re.compile(r'''
    (?P<ws>\s+|\#[^\n]*)
  | (?P<str>"[^"]*")
  | (?P<punct><=|->|[{};:,=<~])
  | (?P<word>(?:[^\s{};:,=<~"\->]|-(?!>))+)
''', re.VERBOSE)


def _tokenize(text):
    toks = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}", text, pos)
        if m.lastgroup != "ws":
            toks.append((m.lastgroup, m.group(), m.start()))
        pos = m.end()
    return toks


class _Stanza:
    """Generic ``kind { key: value; ... }`` reader; values stay as token lists."""

    def __init__(self, text):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0

    def next(self, what="token"):
        if self.i >= len(self.toks):
            raise ParseError(f"unexpected end of input, expected {what}", self.text, len(self.text))
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def expect(self, value):
        kind, v, pos = self.next(repr(value))
        if v != value:
            raise ParseError(f"expected {value!r}, found {v!r}", self.text, pos)

    def read(self, kind):
        self.expect(kind)
        self.expect("{")
        fields = {}
        while True:
            _, key, pos = self.next("field name or '}'")
            if key == "}":
                break
            if key in fields:
                raise ParseError(f"duplicate field {key!r}", self.text, pos)
            self.expect(":")
            fields[key] = self._value()
        if self.i != len(self.toks):
            raise ParseError("trailing input after stanza", self.text, self.toks[self.i][2])
        return fields

    def _value(self):
        out = []
        depth = 0
        while True:
            tok = self.next("';'")
            if tok[1] == "{":
                depth += 1
            elif tok[1] == "}":
                depth -= 1
                if depth < 0:
                    raise ParseError("unbalanced '}'", self.text, tok[2])
            elif tok[1] == ";" and depth == 0:
                return out
            out.append(tok)


def _split(tokens, sep):
    """Split a token list at top-level separators, dropping empty items."""
    items, cur, depth = [], [], 0
    for tok in tokens:
        if tok[1] == "{":
            depth += 1
        elif tok[1] == "}":
            depth -= 1
        if tok[1] == sep and depth == 0:
            if cur:
                items.append(cur)
            cur = []
        else:
            cur.append(tok)
    if cur:
        items.append(cur)
    return items


def _symbols(fields, text):
    if "symbols" not in fields:
        raise ParseError("missing 'symbols' field", text)
    return SymbolTable(tuple(t[1] for t in fields["symbols"]))


def _unquote(tok, text):
    if tok[0] != "str":
        raise ParseError(f"expected a quoted formula, found {tok[1]!r}", text, tok[2])
    return tok[1][1:-1]


# --------------------------------------------------------------------------
# Models

def parse_model_text(text: str) -> PreferenceModel:
    fields = _Stanza(text).read("model")
    st = _symbols(fields, text)
    if "worlds" not in fields:
        raise ParseError("missing 'worlds' field", text)
    worlds = [st.parse_world(t[1]) for t in fields["worlds"]]
    pairs = []
    for item in _split(fields.get("leq", []), ","):
        vals = [t[1] for t in item]
        if len(vals) != 3 or vals[1] not in ("<=", "~"):
            raise ParseError(f"bad leq item {' '.join(vals)!r}", text, item[0][2])
        a, b = st.parse_world(vals[0]), st.parse_world(vals[2])
        pairs.append((a, b))
        if vals[1] == "~":
            pairs.append((b, a))
    extra = set(fields) - {"symbols", "worlds", "leq"}
    if extra:
        raise ParseError(f"unknown model field(s): {', '.join(sorted(extra))}", text)
    return PreferenceModel.from_pairs(st, worlds, pairs)


def model_to_text(m: PreferenceModel) -> str:
    """Serialize with a minimal generating set: ``~`` chains inside clusters,
    ``<=`` between each cluster and the clusters directly above it."""
    st = m.st
    b = st.bitstring
    items = []
    cs = clusters(m)
    for c in cs:
        ws = worlds_desc(c)
        items += [f"{b(x)}~{b(y)}" for x, y in zip(ws, ws[1:])]
    for c1 in cs:
        for c2 in cs:
            if c1 == c2 or not cluster_lt(m, c1, c2):
                continue
            if any(cluster_lt(m, c1, c3) and cluster_lt(m, c3, c2) for c3 in cs):
                continue
            items.append(f"{b(worlds_desc(c1)[0])}<={b(worlds_desc(c2)[0])}")
    worlds = " ".join(b(w) for w in m.world_list)
    return f"model {{ symbols: {' '.join(st.symbols)}; worlds: {worlds}; leq: {', '.join(items)}; }}"


# --------------------------------------------------------------------------
# Graphs

def parse_graph_text(text: str) -> PGraph | GroundedPGraph:
    fields = _Stanza(text).read("graph")
    st = _symbols(fields, text)
    names: dict[str, int] = {}
    nodes = []
    for item in _split(fields.get("nodes", []), ","):
        if len(item) != 3 or item[1][1] != "=":
            raise ParseError("bad node item, expected name = \"formula\"", text, item[0][2])
        name = item[0][1]
        if name in names:
            raise ParseError(f"duplicate node name {name!r}", text, item[0][2])
        names[name] = len(nodes)
        nodes.append(parse_prop(_unquote(item[2], text), st))
    edges = set()
    for item in _split(fields.get("edges", []), ","):
        vals = [t[1] for t in item]
        if len(vals) < 3 or len(vals) % 2 == 0 or any(v != "<" for v in vals[1::2]):
            raise ParseError(f"bad edge item {' '.join(vals)!r}", text, item[0][2])
        chain = vals[0::2]
        for a, b in zip(chain, chain[1:]):
            for v in (a, b):
                if v not in names:
                    raise ParseError(f"unknown node {v!r}", text, item[0][2])
            edges.add((names[a], names[b]))
    extra = set(fields) - {"symbols", "ground", "nodes", "edges"}
    if extra:
        raise ParseError(f"unknown graph field(s): {', '.join(sorted(extra))}", text)
    g = PGraph(st, tuple(nodes), frozenset(edges))
    if "ground" in fields:
        toks = fields["ground"]
        if len(toks) != 1:
            raise ParseError("ground must be one quoted formula", text)
        return GroundedPGraph(parse_prop(_unquote(toks[0], text), st), g)
    return g


def graph_to_text(g: PGraph | GroundedPGraph) -> str:
    ground = None
    if isinstance(g, GroundedPGraph):
        ground, g = g.ground, g.graph
    parts = [f"symbols: {' '.join(g.st.symbols)};"]
    if ground is not None:
        parts.append(f'ground: "{to_text(ground)}";')
    nodes = ", ".join(f'n{i + 1} = "{to_text(f)}"' for i, f in enumerate(g.nodes))
    edges = ", ".join(f"n{a + 1} < n{b + 1}" for a, b in sorted(g.edges))
    parts.append(f"nodes: {nodes};")
    parts.append(f"edges: {edges};")
    return "graph { " + " ".join(parts) + " }"


# --------------------------------------------------------------------------
# Transformation specs

def parse_transform_text(text: str, base_dir: str | Path = "."):
    from .dynamics import (IDENTITY_GROUNDED, IDENTITY_PLAIN, NATURAL_GRAPH,
                           PREPEND_MU, GraphTransformation, table_transformation)
    fields = _Stanza(text).read("transform")
    name = "".join(t[1] for t in fields.get("name", [])) or "transform"
    kind = "".join(t[1] for t in fields.get("kind", [])) or "plain"
    if kind not in ("plain", "grounded"):
        raise ParseError(f"kind must be 'plain' or 'grounded', not {kind!r}", text)
    grounded = kind == "grounded"
    rule = fields.get("rule")
    if not rule:
        raise ParseError("missing 'rule' field", text)
    head = rule[0][1]
    if head in ("prepend-mu", "natural"):
        if not grounded:
            raise ParseError(f"rule {head!r} needs kind: grounded", text)
        base = PREPEND_MU if head == "prepend-mu" else NATURAL_GRAPH
        return GraphTransformation(name, True, base.rule)
    if head == "identity":
        base = IDENTITY_GROUNDED if grounded else IDENTITY_PLAIN
        return GraphTransformation(name, grounded, base.rule)
    if head != "table":
        raise ParseError(f"unknown rule {head!r}", text, rule[0][2])
    if len(rule) < 3 or rule[1][1] != "{" or rule[-1][1] != "}":
        raise ParseError("table rule must be 'table { src -> dst; ... }'", text, rule[0][2])
    base_dir = Path(base_dir)
    entries = []
    for item in _split(rule[2:-1], ";"):
        vals = [t[1] for t in item]
        if len(vals) != 3 or vals[1] != "->":
            raise ParseError(f"bad table entry {' '.join(vals)!r}", text, item[0][2])
        src, dst = (read_graph(base_dir / v) for v in (vals[0], vals[2]))
        if grounded:
            src, dst = (x.graph if isinstance(x, GroundedPGraph) else x for x in (src, dst))
        entries.append((src, dst))
    return table_transformation(name, entries, grounded)


def read_model(path) -> PreferenceModel:
    return parse_model_text(Path(path).read_text())


def read_graph(path):
    return parse_graph_text(Path(path).read_text())


def read_transform(path):
    path = Path(path)
    return parse_transform_text(path.read_text(), path.parent)
