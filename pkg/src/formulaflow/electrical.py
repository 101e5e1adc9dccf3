"""Effective resistance, optimal unit flows, cuts, and path search.

Three mutually cross-checking resistance routes are provided:

* ``exact-sp``   -- recursive series/parallel reduction over exact rationals,
* ``laplacian``  -- float solve of the grounded weighted Laplacian,
* an exact rational Laplacian solve used by :func:`optimal_flow` and the
  span-program module.

Disconnection is the first-class value ``INF`` from :mod:`.extended`.
"""

from __future__ import annotations

import math
from collections import defaultdict, deque
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import linalg
from .errors import (
    DisconnectedError,
    NotSeriesParallelError,
    SearchBudgetError,
)
from .extended import INF, parallel_sum
from .formula import AND, Formula, as_bits
from .graphs import Network

EXACT_SP = "exact-sp"
LAPLACIAN = "laplacian"


# ---------------------------------------------------------------------------
# connectivity helpers
# ---------------------------------------------------------------------------

def component_of(net: Network, start: str) -> set:
    adj = net.adjacency()
    seen = {start}
    queue = deque([start])
    while queue:
        u = queue.popleft()
        for v, _e in adj[u]:
            if v not in seen:
                seen.add(v)
                queue.append(v)
    return seen


def terminals_connected(net: Network) -> bool:
    return net.t in component_of(net, net.s)


def components(net: Network) -> dict:
    """Map vertex -> canonical component representative (first in vertex order)."""
    parent = {v: v for v in net.vertices}

    def find(v):
        root = v
        while parent[root] != root:
            root = parent[root]
        while parent[v] != root:
            parent[v], v = root, parent[v]
        return root

    index = {v: i for i, v in enumerate(net.vertices)}
    for e in net.edges:
        ru, rv = find(e.u), find(e.v)
        if ru != rv:
            if index[ru] < index[rv]:
                parent[rv] = ru
            else:
                parent[ru] = rv
    return {v: find(v) for v in net.vertices}


# ---------------------------------------------------------------------------
# effective resistance
# ---------------------------------------------------------------------------

def _reduce_series_parallel(net: Network):
    """Exact resistance by repeated pruning, parallel merge, and series contraction."""
    if not terminals_connected(net):
        return INF
    s, t = net.s, net.t
    resistance = {}
    ends = {}
    incident = defaultdict(set)
    for i, e in enumerate(net.edges):
        resistance[i] = 1 / e.weight
        ends[i] = (e.u, e.v)
        incident[e.u].add(i)
        incident[e.v].add(i)
    next_id = len(net.edges)

    def other(eid, v):
        a, b = ends[eid]
        return b if a == v else a

    def remove_edge(eid):
        a, b = ends.pop(eid)
        incident[a].discard(eid)
        incident[b].discard(eid)
        del resistance[eid]

    def add_edge(a, b, r):
        nonlocal next_id
        eid = next_id
        next_id += 1
        ends[eid] = (a, b)
        resistance[eid] = r
        incident[a].add(eid)
        incident[b].add(eid)
        return eid

    changed = True
    while changed:
        changed = False
        # prune dead ends
        stack = [v for v, eids in incident.items() if v not in (s, t) and len(eids) <= 1]
        while stack:
            v = stack.pop()
            if v in (s, t) or len(incident[v]) > 1:
                continue
            for eid in list(incident[v]):
                w = other(eid, v)
                remove_edge(eid)
                if w not in (s, t) and len(incident[w]) <= 1:
                    stack.append(w)
            incident.pop(v, None)
            changed = True
        # merge parallel edges
        groups = defaultdict(list)
        for eid, (a, b) in ends.items():
            groups[frozenset((a, b))].append(eid)
        for group in groups.values():
            if len(group) > 1:
                r = parallel_sum(resistance[eid] for eid in group)
                a, b = ends[group[0]]
                for eid in group:
                    remove_edge(eid)
                add_edge(a, b, r)
                changed = True
        # contract series vertices
        for v in list(incident):
            if v in (s, t) or len(incident[v]) != 2:
                continue
            e1, e2 = sorted(incident[v])
            a, b = other(e1, v), other(e2, v)
            if a == b:
                continue  # parallel pair through v; next sweep merges it
            r = resistance[e1] + resistance[e2]
            remove_edge(e1)
            remove_edge(e2)
            incident.pop(v, None)
            add_edge(a, b, r)
            changed = True

    live = [eid for eid, (a, b) in ends.items()]
    if len(live) == 1 and set(ends[live[0]]) == {s, t}:
        return resistance[live[0]]
    raise NotSeriesParallelError("reduction stalled; network is not series-parallel")


def solve_potentials_exact(net: Network):
    """Exact vertex potentials for a unit current from s to t.

    Returns (potentials dict with p[t] = 0, resistance) or None when the
    terminals are disconnected.  Solved on the component of ``s`` only.
    """
    comp = component_of(net, net.s)
    if net.t not in comp:
        return None
    order = [v for v in net.vertices if v in comp and v != net.t]
    index = {v: i for i, v in enumerate(order)}
    n = len(order)
    lap = [[Fraction(0)] * n for _ in range(n)]
    for e in net.edges:
        if e.u not in comp:
            continue
        iu = index.get(e.u)
        iv = index.get(e.v)
        if iu is not None:
            lap[iu][iu] += e.weight
        if iv is not None:
            lap[iv][iv] += e.weight
        if iu is not None and iv is not None:
            lap[iu][iv] -= e.weight
            lap[iv][iu] -= e.weight
    rhs = [Fraction(0)] * n
    rhs[index[net.s]] = Fraction(1)
    sol = linalg.solve_consistent(lap, rhs)
    if sol is None:
        raise ArithmeticError("grounded Laplacian must be nonsingular")
    potentials = {v: sol[index[v]] for v in order}
    potentials[net.t] = Fraction(0)
    return potentials, potentials[net.s]


def _resistance_laplacian_float(net: Network) -> float:
    comp = component_of(net, net.s)
    if net.t not in comp:
        return math.inf
    order = [v for v in net.vertices if v in comp and v != net.t]
    index = {v: i for i, v in enumerate(order)}
    n = len(order)
    lap = np.zeros((n, n))
    for e in net.edges:
        if e.u not in comp:
            continue
        w = float(e.weight)
        iu = index.get(e.u)
        iv = index.get(e.v)
        if iu is not None:
            lap[iu, iu] += w
        if iv is not None:
            lap[iv, iv] += w
        if iu is not None and iv is not None:
            lap[iu, iv] -= w
            lap[iv, iu] -= w
    rhs = np.zeros(n)
    rhs[index[net.s]] = 1.0
    sol = np.linalg.solve(lap, rhs)
    return float(sol[index[net.s]])


def effective_resistance(net: Network, backend: str = EXACT_SP):
    """Effective resistance between the terminals of ``net``.

    ``exact-sp`` returns a Fraction (or INF) and requires a series-parallel
    network; ``laplacian`` returns a float (math.inf when disconnected).
    """
    if backend == EXACT_SP:
        return _reduce_series_parallel(net)
    if backend == LAPLACIAN:
        return _resistance_laplacian_float(net)
    raise ValueError(f"unknown backend {backend!r}")


def formula_resistance(f: Formula, x, weights=None, dual: bool = False):
    """Exact resistance of the input-selected formula network, by tree fold.

    With ``dual=True`` this is the resistance of the dual network on the
    complementary selection, i.e. the quantity paired with the primal one by
    the structural duality.  Weights map labels to rationals (default ones);
    the dual fold uses their reciprocals automatically.
    """
    bits = as_bits(x, f.n_vars)

    def fold(g: Formula):
        if g.is_leaf:
            present = bits[g.var - f.first_var] ^ (1 if g.negated else 0)
            if dual:
                present ^= 1
            if not present:
                return INF
            w = Fraction(weights[f"x{g.var}"]) if weights else Fraction(1)
            return w if dual else 1 / w
        series_gate = (g.kind == AND) if not dual else (g.kind != AND)
        if series_gate:
            total = Fraction(0)
            for c in g.children:
                total = total + fold(c)
            return total
        return parallel_sum(fold(c) for c in g.children)

    return fold(f)


# ---------------------------------------------------------------------------
# unit flows
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class FlowAssignment:
    """Antisymmetric valuation of directed edges; values are exact rationals."""

    values: dict

    def value(self, u: str, v: str, label: str) -> Fraction:
        return self.values.get((u, v, label), Fraction(0))

    def directed_support(self):
        return [(key, val) for key, val in self.values.items() if val > 0]

    def net_out(self, vertex: str) -> Fraction:
        return sum((val for (u, _v, _l), val in self.values.items() if u == vertex),
                   Fraction(0))


def flow_from_directed(values: dict) -> FlowAssignment:
    full = {}
    for (u, v, label), val in values.items():
        val = Fraction(val)
        if val == 0:
            continue
        full[(u, v, label)] = val
        full[(v, u, label)] = -val
    return FlowAssignment(full)


def check_unit_flow(net: Network, flow: FlowAssignment) -> None:
    """Raise ValueError unless ``flow`` is an exact unit s-t flow on ``net``."""
    known = {(e.u, e.v, e.label) for e in net.edges}
    known |= {(v, u, label) for (u, v, label) in known}
    for key, val in flow.values.items():
        if key not in known:
            raise ValueError(f"flow touches unknown directed edge {key}")
        u, v, label = key
        if flow.values.get((v, u, label), Fraction(0)) != -val:
            raise ValueError(f"antisymmetry violated on {key}")
    for vertex in net.vertices:
        out = flow.net_out(vertex)
        if vertex == net.s:
            if out != 1:
                raise ValueError(f"net outflow at s is {out}, expected 1")
        elif vertex == net.t:
            if out != -1:
                raise ValueError(f"net inflow at t is {-out}, expected 1")
        elif out != 0:
            raise ValueError(f"conservation violated at {vertex!r}")


def flow_energy(net: Network, flow: FlowAssignment) -> Fraction:
    total = Fraction(0)
    for e in net.edges:
        total += flow.value(e.u, e.v, e.label) ** 2 / e.weight
    return total


def optimal_flow(net: Network):
    """Minimum-energy unit s-t flow and its energy, both exact.

    The flow is the potential flow theta(u,v) = c * (p(u) - p(v)); its energy
    equals the effective resistance.  Raises DisconnectedError when no unit
    flow exists.
    """
    solved = solve_potentials_exact(net)
    if solved is None:
        raise DisconnectedError("terminals are not connected")
    potentials, resistance = solved
    values = {}
    for e in net.edges:
        if e.u in potentials and e.v in potentials:
            theta = e.weight * (potentials[e.u] - potentials[e.v])
            if theta != 0:
                values[(e.u, e.v, e.label)] = theta
    flow = flow_from_directed(values)
    return flow, flow_energy(net, flow)


def decompose_flow(flow: FlowAssignment):
    """Split a unit flow into weighted self-avoiding s-t paths and cycles.

    Terminals are recovered from the flow itself (the unique vertices with
    net outflow +1 / -1).  Returns a list of (coefficient, kind, edges)
    triples with kind "path" or "cycle"; recomposition is exact and the
    signed path coefficients sum to one.
    """
    balance = defaultdict(Fraction)
    for (u, _v, _label), val in flow.values.items():
        balance[u] += val
    sources = [v for v, b in balance.items() if b == 1]
    sinks = [v for v, b in balance.items() if b == -1]
    others = [v for v, b in balance.items() if b != 0 and v not in sources + sinks]
    if len(sources) != 1 or len(sinks) != 1 or others:
        raise ValueError("not a unit flow: bad source/sink balance")
    s, t = sources[0], sinks[0]

    residual = {k: v for k, v in flow.values.items() if v > 0}

    def out_arcs(v):
        arcs = [(key, val) for key, val in residual.items() if key[0] == v and val > 0]
        arcs.sort(key=lambda kv: (-kv[1], kv[0]))
        return arcs

    def find_path(a, b):
        # DFS over positive residual arcs, largest value first
        stack = [(a, [], {a})]
        while stack:
            v, path, seen = stack.pop()
            if v == b:
                return path
            for key, _val in reversed(out_arcs(v)):
                nxt = key[1]
                if nxt not in seen:
                    stack.append((nxt, path + [key], seen | {nxt}))
        return None

    def strip(arcs):
        # classic capped stripping: never flips an arc's sign, zeroes >= 1 arc
        coeff = min(residual[key] for key in arcs)
        for key in arcs:
            residual[key] -= coeff
            if residual[key] == 0:
                del residual[key]
        return coeff

    pieces = []
    while True:
        path = find_path(s, t)
        if path is None:
            break
        pieces.append((strip(path), "path", path))
    while True:
        back = find_path(t, s)
        if back is None:
            break
        coeff = strip(back)
        forward = [(v, u, label) for (u, v, label) in reversed(back)]
        pieces.append((-coeff, "path", forward))
    # the remainder is a circulation: peel cycles until nothing is left
    while residual:
        start = min(residual)
        walk = [start]
        first_arc_at = {start[0]: 0}
        v = start[1]
        while v not in first_arc_at:
            first_arc_at[v] = len(walk)
            key = out_arcs(v)[0][0]
            walk.append(key)
            v = key[1]
        cycle = walk[first_arc_at[v]:]
        pieces.append((strip(cycle), "cycle", cycle))
    return pieces


def recompose(pieces) -> FlowAssignment:
    values = defaultdict(Fraction)
    for coeff, _kind, edges in pieces:
        for (u, v, label) in edges:
            values[(u, v, label)] += coeff
            values[(v, u, label)] -= coeff
    return FlowAssignment({k: v for k, v in values.items() if v != 0})


# ---------------------------------------------------------------------------
# cuts
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CutAssignment:
    """0/1 vertex labeling with kappa(s) = 1 and kappa(t) = 0."""

    kappa: dict

    def crossing_edges(self, net: Network):
        return [e for e in net.edges if self.kappa[e.u] != self.kappa[e.v]]

    def s_side(self):
        return frozenset(v for v, bit in self.kappa.items() if bit == 1)


def _present_edges(host: Network, x) -> tuple:
    if host.formula is not None:
        bits = as_bits(x, host.formula.n_vars)
        negated = host.negated_labels
        first = host.formula.first_var
        by_label = {}
        for i in range(host.formula.n_vars):
            label = f"x{first + i}"
            by_label[label] = bits[i]
        return tuple(e for e in host.edges
                     if by_label[e.label] ^ (1 if e.label in negated else 0))
    bits = as_bits(x, len(host.edges))
    return tuple(e for e in host.edges if bits[host.labels.index(e.label)])


def _max_flow_value(n: int, capacity, adj, s: int, t: int) -> int:
    """Edmonds-Karp; mutates ``capacity`` into the residual capacities."""
    flow = 0
    while True:
        parent = {s: None}
        queue = deque([s])
        while queue and t not in parent:
            u = queue.popleft()
            for v in adj[u]:
                if v not in parent and capacity[(u, v)] > 0:
                    parent[v] = u
                    queue.append(v)
        if t not in parent:
            return flow
        bottleneck = None
        v = t
        while parent[v] is not None:
            u = parent[v]
            c = capacity[(u, v)]
            bottleneck = c if bottleneck is None else min(bottleneck, c)
            v = u
        v = t
        while parent[v] is not None:
            u = parent[v]
            capacity[(u, v)] -= bottleneck
            capacity[(v, u)] += bottleneck
            v = u
        flow += bottleneck


MAXFLOW = "maxflow"
SP_RECURSION = "sp-recursion"


def _cut_size_maxflow(host: Network, x):
    present = set(e.label for e in _present_edges(host, x))
    sub = Network(host.vertices, host.s, host.t,
                  tuple(e for e in host.edges if e.label in present))
    if terminals_connected(sub):
        return INF
    big = len(host.edges) + 1
    index = {v: i for i, v in enumerate(host.vertices)}
    capacity = defaultdict(int)
    adj = defaultdict(set)
    for e in host.edges:
        cap = big if e.label in present else 1
        iu, iv = index[e.u], index[e.v]
        capacity[(iu, iv)] += cap
        capacity[(iv, iu)] += cap
        adj[iu].add(iv)
        adj[iv].add(iu)
    return _max_flow_value(len(host.vertices), capacity, adj,
                           index[host.s], index[host.t])


def _cut_size_recursive(f: Formula, bits, negated) -> object:
    """Two-terminal cut size by structural recursion: series takes the min,
    parallel adds, and a present edge counts as infinity."""

    def fold(g: Formula):
        if g.is_leaf:
            present = bits[g.var - f.first_var] ^ (1 if g.var in negated else 0)
            return INF if present else 1
        if g.kind == AND:
            return min(fold(c) for c in g.children)
        total = 0
        for c in g.children:
            total = total + fold(c)
        return total

    return fold(f)


def cut_size(host: Network, x, backend: str = MAXFLOW):
    """Minimum number of host edges crossing any s-t cut of the selected
    subgraph; INF when the terminals are connected."""
    if backend == MAXFLOW:
        return _cut_size_maxflow(host, x)
    if backend == SP_RECURSION:
        if host.formula is None:
            raise ValueError("sp-recursion backend needs a formula-derived network")
        f = host.formula
        bits = as_bits(x, f.n_vars)
        return _cut_size_recursive(f, bits, f.negated_vars())
    raise ValueError(f"unknown backend {backend!r}")


def witness_cut(host: Network, x) -> CutAssignment:
    """A minimizing s-t cut of the selected subgraph.

    Ties are broken deterministically: among minimum cuts, the s-side whose
    characteristic vector over the sorted non-terminal vertices is smallest
    is returned (small graphs); larger graphs fall back to the canonical
    component-of-s cut.
    """
    present = set(e.label for e in _present_edges(host, x))
    sub = Network(host.vertices, host.s, host.t,
                  tuple(e for e in host.edges if e.label in present))
    if terminals_connected(sub):
        raise DisconnectedError("terminals are connected; no cut exists")
    free = [v for v in sorted(host.vertices) if v not in (host.s, host.t)]
    if len(free) <= 16:
        best = None
        best_key = None
        for mask in range(1 << len(free)):
            kappa = {host.s: 1, host.t: 0}
            for i, v in enumerate(free):
                kappa[v] = (mask >> i) & 1
            if any(kappa[e.u] != kappa[e.v] for e in sub.edges):
                continue
            crossing = sum(1 for e in host.edges if kappa[e.u] != kappa[e.v])
            key = (crossing, tuple(kappa[v] for v in free))
            if best_key is None or key < best_key:
                best_key = key
                best = kappa
        return CutAssignment(best)
    # large graphs: the source side of the max-flow residual is a minimum cut
    big = len(host.edges) + 1
    index = {v: i for i, v in enumerate(host.vertices)}
    capacity = defaultdict(int)
    adj = defaultdict(set)
    for e in host.edges:
        cap = big if e.label in present else 1
        iu, iv = index[e.u], index[e.v]
        capacity[(iu, iv)] += cap
        capacity[(iv, iu)] += cap
        adj[iu].add(iv)
        adj[iv].add(iu)
    _max_flow_value(len(host.vertices), capacity, adj, index[host.s], index[host.t])
    reach = {index[host.s]}
    stack = [index[host.s]]
    while stack:
        u = stack.pop()
        for v in adj[u]:
            if v not in reach and capacity[(u, v)] > 0:
                reach.add(v)
                stack.append(v)
    return CutAssignment({v: 1 if index[v] in reach else 0
                          for v in host.vertices})


# ---------------------------------------------------------------------------
# path search
# ---------------------------------------------------------------------------

def simple_st_paths(net: Network, budget: int = 24):
    """All self-avoiding s-t paths, as tuples of edges."""
    if len(net.edges) > budget:
        raise SearchBudgetError(f"edge count {len(net.edges)} exceeds budget {budget}")
    adj = net.adjacency()
    paths = []
    path = []

    def dfs(v, seen):
        if v == net.t:
            paths.append(tuple(path))
            return
        for w, e in adj[v]:
            if w not in seen:
                path.append(e)
                dfs(w, seen | {w})
                path.pop()

    dfs(net.s, {net.s})
    return paths


def longest_self_avoiding_path(net: Network, budget: int = 24) -> int:
    """Maximum edge count over simple s-t paths (0 when none exists)."""
    paths = simple_st_paths(net, budget)
    return max((len(p) for p in paths), default=0)


def shortest_st_path_length(net: Network):
    """Hop count of a shortest s-t path; INF when disconnected."""
    adj = net.adjacency()
    dist = {net.s: 0}
    queue = deque([net.s])
    while queue:
        u = queue.popleft()
        if u == net.t:
            return dist[u]
        for v, _e in adj[u]:
            if v not in dist:
                dist[v] = dist[u] + 1
                queue.append(v)
    return INF
