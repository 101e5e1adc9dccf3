"""Query-cost bound figures over promise domains, and the example families.

For a host network and a domain of inputs, three bound figures are compared:

* ``bound_old``  -- sqrt(max R over 1-side * edge count),
* ``bound_cut``  -- sqrt(max R over 1-side * max cut size over 0-side),
* ``bound_new``  -- sqrt(max R over 1-side * max dual resistance over 0-side).

With unit weights the three are provably ordered new <= cut <= old, because
the cut size equals the shortest dual path length, which the dual resistance
never exceeds, and no cut crosses more than every edge.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .electrical import SP_RECURSION, cut_size, formula_resistance
from .errors import DomainTooLargeError
from .extended import as_float, is_inf
from .formula import (
    Formula,
    as_bits,
    and_promise,
    build_nand_tree,
    composed_formula,
    count_composed_domain,
    enumerate_composed_domain,
    eval_formula,
    gate,
    leaf,
)
from .graphs import Network, formula_graph
from .nand import is_k_fault

ENUM_CAP = 1 << 20


@dataclass(frozen=True)
class DomainSpec:
    """Enumeration plan for a promise domain.

    ``items`` are (assignment, multiplicity) pairs.  A ``classes`` domain
    lists one representative per symmetry class, which is exact whenever the
    tracked quantities are class-invariant; ``sampled`` marks maxima as lower
    estimates.
    """

    kind: str  # "explicit" | "classes" | "sampled"
    items: tuple
    total: int

    @property
    def exhaustive(self) -> bool:
        return self.kind in ("explicit", "classes")


def explicit_domain(assignments) -> DomainSpec:
    items = tuple((tuple(a), 1) for a in assignments)
    return DomainSpec("explicit", items, len(items))


@dataclass(frozen=True)
class BoundReport:
    r_max: object
    r_dual_max: object
    c_max: object
    n_edges: int
    bound_old: float | None
    bound_cut: float | None
    bound_new: float | None
    weights: dict
    domain: str
    exhaustive: bool
    attain_r: tuple | None
    attain_r_dual: tuple | None
    attain_c: tuple | None

    def to_json(self) -> bytes:
        def enc(v):
            return None if v is None else ("inf" if is_inf(v) else str(v))

        doc = {
            "r_max": enc(self.r_max),
            "r_dual_max": enc(self.r_dual_max),
            "c_max": enc(self.c_max),
            "edges": self.n_edges,
            "bound_old": self.bound_old,
            "bound_cut": self.bound_cut,
            "bound_new": self.bound_new,
            "domain": self.domain,
            "exhaustive": self.exhaustive,
        }
        return json.dumps(doc, separators=(",", ":")).encode()

    def to_text(self) -> str:
        rows = [
            ("max R (1-side)", self.r_max),
            ("max R' (0-side)", self.r_dual_max),
            ("max C (0-side)", self.c_max),
            ("edges", self.n_edges),
            ("bound sqrt(R*E)", self.bound_old),
            ("bound sqrt(R*C)", self.bound_cut),
            ("bound sqrt(R*R')", self.bound_new),
        ]
        width = max(len(name) for name, _ in rows)
        return "\n".join(f"{name.ljust(width)}  {value}" for name, value in rows)


def compute_bounds(host, weights=None, domain: DomainSpec | None = None,
                   unit_weights: bool = False) -> BoundReport:
    """Bound figures for a formula network over a domain of assignments.

    ``host`` is a Formula or a formula-derived Network (whose stored weights
    then serve as the default weight map).  The maxima of the primal
    resistance (1-inputs), dual resistance and cut size (0-inputs) are
    tracked together with their attaining inputs.  The cut size is always
    computed with unit counting, the resistances with the supplied weights
    unless ``unit_weights`` forces ones.
    """
    if isinstance(host, Network):
        if host.formula is None:
            raise ValueError("bound figures need a formula-derived network")
        f = host.formula
        if weights is None:
            weights = host.weight_map()
    else:
        f = host
    if domain is None:
        if f.n_vars > 20:
            raise DomainTooLargeError("full domain too large; pass an explicit one")
        domain = explicit_domain(
            tuple(int(b) for b in format(i, f"0{f.n_vars}b"))
            for i in range(1 << f.n_vars)
        )
    use_weights = None if unit_weights else weights
    r_max = r_dual_max = c_max = None
    attain_r = attain_rd = attain_c = None
    net = formula_graph(f, use_weights)
    for x, _count in domain.items:
        bits = as_bits(x, f.n_vars)
        if eval_formula(f, bits) == 1:
            r = formula_resistance(f, bits, use_weights)
            if r_max is None or r > r_max:
                r_max, attain_r = r, bits
        else:
            rd = formula_resistance(f, bits, use_weights, dual=True)
            if r_dual_max is None or rd > r_dual_max:
                r_dual_max, attain_rd = rd, bits
            c = cut_size(net, bits, backend=SP_RECURSION)
            if c_max is None or c > c_max:
                c_max, attain_c = c, bits
    n_edges = f.n_vars

    def bound(a, b):
        if a is None or b is None:
            return None
        return math.sqrt(as_float(a) * as_float(b))

    return BoundReport(
        r_max, r_dual_max, c_max, n_edges,
        bound(r_max, n_edges), bound(r_max, c_max), bound(r_max, r_dual_max),
        dict(use_weights or {}), domain.kind, domain.exhaustive,
        attain_r, attain_rd, attain_c,
    )


# ---------------------------------------------------------------------------
# example families
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ExampleFamily:
    name: str
    params: dict
    formula: Formula
    weights: dict | None
    network: Network
    domain: DomainSpec
    promise: object


def _line_family(n: int, h: int) -> ExampleFamily:
    """Single path of n unit edges under the all-ones-or-few-ones promise."""
    if not 1 <= h <= n:
        raise ValueError("need 1 <= h <= n")
    f = gate("and", [leaf(i + 1) for i in range(n)]) if n > 1 else leaf(1)
    items = [(tuple([1] * n), 1)]
    total = 1
    for weight in range(0, n - h + 1):
        rep = tuple([1] * weight + [0] * (n - weight))
        count = math.comb(n, weight)
        items.append((rep, count))
        total += count
    domain = DomainSpec("classes", tuple(items), total)
    return ExampleFamily("line", {"n": n, "h": h}, f, None,
                         formula_graph(f), domain, and_promise(n, h))


def _balloon_family(n: int) -> ExampleFamily:
    """A length-n path in series with an n-fold multi-edge of weight 1/n."""
    if n < 2:
        raise ValueError("need n >= 2")
    path = [leaf(i + 1) for i in range(n)]
    bundle = gate("or", [leaf(n + i + 1) for i in range(n)])
    f = gate("and", path + [bundle])
    weights = {f"x{i + 1}": Fraction(1) for i in range(n)}
    weights.update({f"x{n + i + 1}": Fraction(1, n) for i in range(n)})
    items = []
    total = 0
    for absent_path in range(n + 1):
        for present_multi in range(n + 1):
            path_bits = [1] * (n - absent_path) + [0] * absent_path
            multi_bits = [1] * present_multi + [0] * (n - present_multi)
            count = math.comb(n, absent_path) * math.comb(n, present_multi)
            items.append((tuple(path_bits + multi_bits), count))
            total += count
    domain = DomainSpec("classes", tuple(items), total)
    return ExampleFamily("balloon", {"n": n}, f, weights,
                         formula_graph(f, weights), domain, None)


def _nand_kfault_family(d: int, k: int) -> ExampleFamily:
    """Alternating tree restricted to the inputs of fault level at most k."""
    if not 0 <= 2 * k <= d:
        raise ValueError("need 0 <= k <= d/2")
    if d > 4:
        raise DomainTooLargeError("k-fault enumeration supported for depth <= 4")
    f = build_nand_tree(d)
    n = 1 << d
    members = []
    for i in range(1 << n):
        bits = tuple(int(b) for b in format(i, f"0{n}b"))
        if is_k_fault(d, k, bits):
            members.append((bits, 1))
    domain = DomainSpec("explicit", tuple(members), len(members))
    return ExampleFamily("nand-kfault", {"d": d, "k": k}, f, None,
                         formula_graph(f), domain, None)


def example_family(name: str, **params) -> ExampleFamily:
    """Generate one of the built-in families: line, balloon, nand-kfault."""
    if name == "line":
        return _line_family(params["n"], params["h"])
    if name == "balloon":
        return _balloon_family(params["n"])
    if name == "nand-kfault":
        return _nand_kfault_family(params["d"], params["k"])
    raise ValueError(f"unknown family {name!r}")


def exponent_fit(sizes, values) -> float:
    """Slope of log(value) against log(size); the empirical growth exponent."""
    xs = np.log(np.asarray(sizes, dtype=float))
    ys = np.log(np.asarray(values, dtype=float))
    slope, _intercept = np.polyfit(xs, ys, 1)
    return float(slope)


# ---------------------------------------------------------------------------
# composed resistance product
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ProductReport:
    levels: tuple
    r_max: Fraction
    r_dual_max: Fraction
    product: Fraction
    expected: Fraction
    equal: bool
    quantum_bound: float
    domain_size: int

    def to_json(self) -> bytes:
        doc = {
            "levels": [{"kind": k, "n": n, "h": h} for (k, n, h) in self.levels],
            "r_max": str(self.r_max),
            "r_dual_max": str(self.r_dual_max),
            "product": str(self.product),
            "expected": str(self.expected),
            "equal": self.equal,
            "quantum_bound": self.quantum_bound,
            "domain_size": self.domain_size,
        }
        return json.dumps(doc, separators=(",", ":")).encode()


def verify_resistance_product(levels, cap: int = ENUM_CAP) -> ProductReport:
    """Exhaustively check the product identity for a promise composition.

    Builds the uniform composition chain, enumerates its composed promise
    domain, and verifies in exact arithmetic that the product of the worst
    primal resistance (over 1-inputs) and the worst dual resistance (over
    0-inputs) equals prod(N_i) / prod(h_i).  Also reports the accompanying
    estimate prod(sqrt(N_i / h_i)).
    """
    levels = tuple(tuple(level) for level in levels)
    f = composed_formula(levels)
    size = count_composed_domain(levels)
    if size > cap:
        raise DomainTooLargeError(f"domain has {size} points, over the cap {cap}")
    r_max = None
    rd_max = None
    for bits in enumerate_composed_domain(levels, cap):
        if eval_formula(f, bits) == 1:
            r = formula_resistance(f, bits)
            if r_max is None or r > r_max:
                r_max = r
        else:
            rd = formula_resistance(f, bits, dual=True)
            if rd_max is None or rd > rd_max:
                rd_max = rd
    expected = Fraction(1)
    quantum = 1.0
    for _kind, n, h in levels:
        expected *= Fraction(n, h)
        quantum *= math.sqrt(n / h)
    product = r_max * rd_max
    return ProductReport(levels, r_max, rd_max, product, expected,
                         product == expected, quantum, size)
