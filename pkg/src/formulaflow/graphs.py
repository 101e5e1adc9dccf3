"""Two-terminal labeled weighted multigraphs and their compositions.

Networks are immutable.  Vertex names are deterministic: a series composition
joins parts at junctions ``s2 .. sl`` and prefixes interior vertices of part
``i`` with ``"i."``, so repeated builds are byte-identical.  Formula-derived
networks carry a back-reference to their formula; the graph of an AND gate is
the series composition of its children's graphs, of an OR gate the parallel
composition, and of a leaf a single labeled edge.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Mapping, Sequence

from .errors import AssignmentLengthError, LabelCollisionError
from .formula import Formula, as_bits, dual_formula

SERIES = "series"
PARALLEL = "parallel"


@dataclass(frozen=True)
class Edge:
    u: str
    v: str
    label: str
    weight: Fraction

    def key(self):
        return (self.u, self.v, self.label, self.weight)


@dataclass(frozen=True, eq=False)
class Network:
    """Weighted multigraph with designated terminals ``s`` and ``t``."""

    vertices: tuple
    s: str
    t: str
    edges: tuple
    formula: Formula | None = None

    def __post_init__(self):
        if self.s == self.t:
            raise ValueError("terminals must be distinct")
        vset = set(self.vertices)
        if len(vset) != len(self.vertices):
            raise ValueError("duplicate vertex names")
        if self.s not in vset or self.t not in vset:
            raise ValueError("terminals must be vertices")
        labels = set()
        for e in self.edges:
            if e.u == e.v:
                raise ValueError(f"self-loop on {e.u!r}")
            if e.u not in vset or e.v not in vset:
                raise ValueError(f"edge {e.label!r} has unknown endpoint")
            if e.label in labels:
                raise LabelCollisionError(f"duplicate edge label {e.label!r}")
            labels.add(e.label)
            if not isinstance(e.weight, Fraction) or e.weight <= 0:
                raise ValueError(f"edge {e.label!r} needs a positive rational weight")

    def __eq__(self, other):
        if not isinstance(other, Network):
            return NotImplemented
        return (self.vertices, self.s, self.t, tuple(e.key() for e in self.edges)) == \
               (other.vertices, other.s, other.t, tuple(e.key() for e in other.edges))

    def __hash__(self):
        return hash((self.vertices, self.s, self.t, tuple(e.key() for e in self.edges)))

    @property
    def labels(self) -> tuple:
        return tuple(e.label for e in self.edges)

    @property
    def negated_labels(self) -> frozenset:
        if self.formula is None:
            return frozenset()
        return frozenset(f"x{v}" for v in self.formula.negated_vars())

    def weight_map(self) -> dict:
        return {e.label: e.weight for e in self.edges}

    def with_weights(self, weights: Mapping[str, Fraction]) -> "Network":
        edges = tuple(replace(e, weight=Fraction(weights[e.label])) for e in self.edges)
        return replace(self, edges=edges)

    def adjacency(self) -> dict:
        adj = {v: [] for v in self.vertices}
        for e in self.edges:
            adj[e.u].append((e.v, e))
            adj[e.v].append((e.u, e))
        return adj


def single_edge(label: str, weight=Fraction(1), s: str = "s", t: str = "t") -> Network:
    return Network((s, t), s, t, (Edge(s, t, label, Fraction(weight)),))


# ---------------------------------------------------------------------------
# composition
# ---------------------------------------------------------------------------

def compose_networks(mode: str, parts: Sequence[Network]) -> Network:
    """Series or parallel composition of two or more two-terminal networks."""
    if len(parts) < 2:
        raise ValueError("composition needs at least two parts")
    seen = set()
    for part in parts:
        for label in part.labels:
            if label in seen:
                raise LabelCollisionError(f"label {label!r} appears in several parts")
            seen.add(label)

    if mode == SERIES:
        def rename(i, v, part):
            if v == part.s:
                return "s" if i == 0 else f"s{i + 1}"
            if v == part.t:
                return "t" if i == len(parts) - 1 else f"s{i + 2}"
            return f"{i + 1}.{v}"
    elif mode == PARALLEL:
        def rename(i, v, part):
            if v == part.s:
                return "s"
            if v == part.t:
                return "t"
            return f"{i + 1}.{v}"
    else:
        raise ValueError(f"unknown composition mode {mode!r}")

    vertices = ["s"]
    for i, part in enumerate(parts):
        for v in part.vertices:
            name = rename(i, v, part)
            if name not in ("s", "t") and name not in vertices:
                vertices.append(name)
    vertices.append("t")

    edges = []
    for i, part in enumerate(parts):
        for e in part.edges:
            edges.append(Edge(rename(i, e.u, part), rename(i, e.v, part), e.label, e.weight))
    return Network(tuple(vertices), "s", "t", tuple(edges))


def formula_graph(f: Formula, weights: Mapping[str, Fraction] | None = None) -> Network:
    """The two-terminal series-parallel network of a read-once formula.

    Leaf i becomes the single edge labeled ``x{i}``; AND composes children in
    series, OR in parallel.  ``weights`` maps edge labels to rationals and
    defaults to all ones.
    """

    def build(g: Formula) -> Network:
        if g.is_leaf:
            label = f"x{g.var}"
            w = Fraction(weights[label]) if weights else Fraction(1)
            return single_edge(label, w)
        mode = SERIES if g.kind == "and" else PARALLEL
        return compose_networks(mode, [build(c) for c in g.children])

    net = build(f)
    return replace(net, formula=f)


def _rename_vertices(net: Network, mapping: Mapping[str, str]) -> Network:
    def nm(v):
        return mapping.get(v, v)

    return Network(
        tuple(nm(v) for v in net.vertices),
        nm(net.s),
        nm(net.t),
        tuple(Edge(nm(e.u), nm(e.v), e.label, e.weight) for e in net.edges),
        formula=net.formula,
    )


def dual_network(f: Formula, weights: Mapping[str, Fraction] | None = None) -> Network:
    """Structural dual of ``formula_graph(f, weights)``.

    Gates are swapped via the dual formula, terminals become ``s'``/``t'``,
    and each dual edge carries the reciprocal weight of its primal partner.
    """
    base = weights or {}
    dual_weights = {f"x{i}": 1 / Fraction(base.get(f"x{i}", 1))
                    for i in range(f.first_var, f.first_var + f.n_vars)}
    net = formula_graph(dual_formula(f), dual_weights)
    return _rename_vertices(net, {"s": "s'", "t": "t'"})


# ---------------------------------------------------------------------------
# subgraph selection
# ---------------------------------------------------------------------------

PRIMAL = "primal"
DUAL = "dual"


@dataclass(frozen=True)
class SubgraphSelector:
    """Assignment over edge labels plus a polarity.

    Primal polarity keeps edges whose presence bit is 1, dual polarity those
    whose presence bit is 0.  For edges that realize a negated leaf the
    presence bit is the complement of the assignment bit.
    """

    bits: Mapping[str, int]
    polarity: str = PRIMAL

    def __post_init__(self):
        if self.polarity not in (PRIMAL, DUAL):
            raise ValueError(f"unknown polarity {self.polarity!r}")


def selector_from_assignment(net: Network, x, polarity: str = PRIMAL) -> SubgraphSelector:
    """Build a selector for a formula-derived network from a plain assignment."""
    if net.formula is None:
        raise ValueError("assignment selectors need a formula-derived network")
    f = net.formula
    bits = as_bits(x, f.n_vars)
    mapping = {f"x{f.first_var + i}": bits[i] for i in range(f.n_vars)}
    return SubgraphSelector(mapping, polarity)


def subgraph(net: Network, sel: SubgraphSelector) -> Network:
    """Edge-induced subgraph; every vertex (terminals included) is retained."""
    missing = [label for label in net.labels if label not in sel.bits]
    if missing:
        raise AssignmentLengthError(f"selector misses labels {missing}")
    negated = net.negated_labels
    target = 1 if sel.polarity == PRIMAL else 0
    kept = tuple(e for e in net.edges
                 if (sel.bits[e.label] ^ (1 if e.label in negated else 0)) == target)
    return Network(net.vertices, net.s, net.t, kept)


def formula_subgraph(f: Formula, x, weights=None, polarity: str = PRIMAL) -> Network:
    """Input-selected subgraph of the formula network or of its dual.

    Primal polarity keeps the edges switched on by ``x``; dual polarity keeps
    the dual edges of those switched off.  The dual host shares the primal's
    labels and leaf negations, so the same assignment drives both.
    """
    host = formula_graph(f, weights) if polarity == PRIMAL else dual_network(f, weights)
    return subgraph(host, selector_from_assignment(host, x, polarity))


# ---------------------------------------------------------------------------
# serialization
# ---------------------------------------------------------------------------

def to_json(net: Network) -> bytes:
    doc = {
        "s": net.s,
        "t": net.t,
        "vertices": list(net.vertices),
        "edges": [{"u": e.u, "v": e.v, "label": e.label, "weight": str(e.weight)}
                  for e in net.edges],
    }
    return json.dumps(doc, separators=(",", ":"), sort_keys=False).encode()


def from_json(data) -> Network:
    doc = json.loads(data.decode() if isinstance(data, bytes) else data)
    edges = tuple(Edge(e["u"], e["v"], e["label"], Fraction(e["weight"]))
                  for e in doc["edges"])
    return Network(tuple(doc["vertices"]), doc["s"], doc["t"], edges)


def to_dot(net: Network) -> bytes:
    lines = ["graph network {"]
    for v in net.vertices:
        mark = ""
        if v == net.s:
            mark = ' [shape=doublecircle, role="s"]'
        elif v == net.t:
            mark = ' [shape=doublecircle, role="t"]'
        lines.append(f'  "{v}"{mark};')
    for e in net.edges:
        lines.append(f'  "{e.u}" -- "{e.v}" [label="{e.label}, c={e.weight}"];')
    lines.append("}")
    return ("\n".join(lines) + "\n").encode()


def export(net: Network, fmt: str = "json") -> bytes:
    """Deterministic serialization; ``json`` round-trips through from_json."""
    if fmt == "json":
        return to_json(net)
    if fmt == "dot":
        return to_dot(net)
    raise ValueError(f"unknown export format {fmt!r}")
