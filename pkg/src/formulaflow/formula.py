"""Read-once AND-OR formulas: parsing, evaluation, and structural transforms.

A formula is a rooted tree whose internal nodes are AND/OR gates with fan-in
at least two and whose leaves are (possibly negated) variables.  All public
constructors produce the canonical normal form:

* negations appear only on leaves,
* adjacent gates of the same kind are flattened (gate kinds alternate),
* leaf variables, read left to right, are numbered 1..N.

Grammar accepted by :func:`parse_formula` (whitespace ignored)::

    expr   := term ('|' term)*
    term   := factor ('&' factor)*
    factor := '~' factor | '(' expr ')' | var
    var    := 'x' [1-9][0-9]*

Assignments are given most-significant-first: character 0 instantiates x1.
"""

from __future__ import annotations

import itertools
import math
import re
from dataclasses import dataclass, field
from typing import Iterator, Sequence

from .errors import (
    AssignmentLengthError,
    DomainTooLargeError,
    FormulaError,
    FormulaSyntaxError,
    PromiseMismatchError,
    ReadOnceError,
)

AND = "and"
OR = "or"
LEAF = "leaf"


@dataclass(frozen=True)
class Formula:
    """Immutable formula node.  Use the module constructors, not this directly."""

    kind: str
    var: int = 0
    negated: bool = False
    children: tuple["Formula", ...] = ()
    n_vars: int = field(init=False, compare=False)
    first_var: int = field(init=False, compare=False)

    def __post_init__(self):
        if self.kind == LEAF:
            if self.var < 1 or self.children:
                raise FormulaError("leaf must carry a positive variable index and no children")
            object.__setattr__(self, "n_vars", 1)
            object.__setattr__(self, "first_var", self.var)
        elif self.kind in (AND, OR):
            if len(self.children) < 2:
                raise FormulaError(f"{self.kind}-gate requires fan-in >= 2")
            if self.negated or self.var:
                raise FormulaError("gates carry no variable or negation")
            first = self.children[0].first_var
            nxt = first
            for child in self.children:
                if child.first_var != nxt:
                    raise FormulaError("children must cover consecutive variable ranges")
                nxt += child.n_vars
            object.__setattr__(self, "n_vars", nxt - first)
            object.__setattr__(self, "first_var", first)
        else:
            raise FormulaError(f"unknown node kind {self.kind!r}")

    # structural measures ---------------------------------------------------
    @property
    def is_leaf(self) -> bool:
        return self.kind == LEAF

    def leaves(self) -> Iterator["Formula"]:
        if self.is_leaf:
            yield self
        else:
            for child in self.children:
                yield from child.leaves()

    def depth(self) -> int:
        if self.is_leaf:
            return 0
        return 1 + max(c.depth() for c in self.children)

    def max_fanin(self) -> int:
        if self.is_leaf:
            return 1
        return max(len(self.children), max(c.max_fanin() for c in self.children))

    def gate_depth(self, kind: str) -> int:
        """Largest number of ``kind``-gates on any root-to-leaf path."""
        own = 1 if self.kind == kind else 0
        if self.is_leaf:
            return 0
        return own + max(c.gate_depth(kind) for c in self.children)

    def and_depth(self) -> int:
        return self.gate_depth(AND)

    def or_depth(self) -> int:
        return self.gate_depth(OR)

    def negated_vars(self) -> frozenset:
        return frozenset(leaf.var for leaf in self.leaves() if leaf.negated)

    def __str__(self):
        return render(self)


def leaf(var: int, negated: bool = False) -> Formula:
    return Formula(LEAF, var=var, negated=negated)


def gate(kind: str, children: Sequence[Formula]) -> Formula:
    return Formula(kind, children=tuple(children))


# ---------------------------------------------------------------------------
# parsing and rendering
# ---------------------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(x[1-9][0-9]*)|([()&|~]))")


def _tokenize(text: str):
    pos = 0
    out = []
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            stripped = text[pos:].lstrip()
            if not stripped:
                break
            raise FormulaSyntaxError(f"unexpected character {stripped[0]!r}", pos)
        out.append((m.group(1) or m.group(2), m.start(1) if m.group(1) else m.start(2)))
        pos = m.end()
    out.append((None, len(text)))
    return out


def parse_formula(text: str) -> Formula:
    """Parse formula text into canonical normal form.

    Raises :class:`FormulaSyntaxError` on malformed input and
    :class:`ReadOnceError` if any variable labels more than one leaf.
    """
    tokens = _tokenize(text)
    index = 0

    def peek():
        return tokens[index][0]

    def advance():
        nonlocal index
        tok = tokens[index]
        index += 1
        return tok

    def expect(symbol):
        tok, pos = advance()
        if tok != symbol:
            raise FormulaSyntaxError(f"expected {symbol!r}, found {tok!r}", pos)

    # raw nodes: ("leaf", var), ("not", node), (AND/OR, [children])
    def parse_expr():
        terms = [parse_term()]
        while peek() == "|":
            advance()
            terms.append(parse_term())
        return (OR, terms) if len(terms) > 1 else terms[0]

    def parse_term():
        factors = [parse_factor()]
        while peek() == "&":
            advance()
            factors.append(parse_factor())
        return (AND, factors) if len(factors) > 1 else factors[0]

    def parse_factor():
        tok, pos = advance()
        if tok == "~":
            return ("not", parse_factor())
        if tok == "(":
            node = parse_expr()
            expect(")")
            return node
        if tok is not None and tok.startswith("x"):
            return ("leaf", int(tok[1:]))
        raise FormulaSyntaxError(f"expected '~', '(' or variable, found {tok!r}", pos)

    root = parse_expr()
    tok, pos = tokens[index]
    if tok is not None:
        raise FormulaSyntaxError(f"trailing input {tok!r}", pos)

    # push negations to the leaves and flatten same-kind nesting
    def normalize(node, neg):
        head = node[0]
        if head == "leaf":
            return ("leaf", node[1], neg)
        if head == "not":
            return normalize(node[1], not neg)
        kind = head if not neg else (AND if head == OR else OR)
        flat = []
        for child in node[1]:
            norm = normalize(child, neg)
            if norm[0] == kind:
                flat.extend(norm[1])
            else:
                flat.append(norm)
        return (kind, flat)

    norm = normalize(root, False)

    seen = []

    def collect(node):
        if node[0] == "leaf":
            seen.append(node[1])
        else:
            for child in node[1]:
                collect(child)

    collect(norm)
    duplicates = {v for v in seen if seen.count(v) > 1}
    if duplicates:
        raise ReadOnceError(f"variables repeated: {sorted(duplicates)}")

    counter = itertools.count(1)

    def build(node):
        if node[0] == "leaf":
            return leaf(next(counter), negated=node[2])
        return gate(node[0], [build(c) for c in node[1]])

    return build(norm)


def render(f: Formula) -> str:
    """Formula text that parses back to ``f``."""
    if f.is_leaf:
        return ("~" if f.negated else "") + f"x{f.var}"
    if f.kind == OR:
        return "|".join(render(c) for c in f.children)
    parts = []
    for c in f.children:
        text = render(c)
        parts.append(f"({text})" if c.kind == OR else text)
    return "&".join(parts)


# ---------------------------------------------------------------------------
# evaluation
# ---------------------------------------------------------------------------

def as_bits(x, n: int) -> tuple:
    """Coerce an assignment (bitstring or sequence) to a tuple of 0/1 bits."""
    if isinstance(x, str):
        if not all(c in "01" for c in x):
            raise AssignmentLengthError(f"assignment must be a bitstring, got {x!r}")
        bits = tuple(int(c) for c in x)
    else:
        bits = tuple(int(b) for b in x)
        if any(b not in (0, 1) for b in bits):
            raise AssignmentLengthError("assignment bits must be 0 or 1")
    if len(bits) != n:
        raise AssignmentLengthError(f"assignment length {len(bits)} != variable count {n}")
    return bits


def eval_formula(f: Formula, x) -> int:
    """Evaluate ``f`` on assignment ``x`` (bit i instantiates x_{i+1})."""
    if f.first_var != 1:
        raise FormulaError("evaluation needs a canonically numbered formula")
    bits = as_bits(x, f.n_vars)

    def ev(g: Formula) -> int:
        if g.is_leaf:
            return bits[g.var - 1] ^ (1 if g.negated else 0)
        if g.kind == AND:
            return 1 if all(ev(c) for c in g.children) else 0
        return 1 if any(ev(c) for c in g.children) else 0

    return ev(f)


# ---------------------------------------------------------------------------
# structural transforms
# ---------------------------------------------------------------------------

def build_nand_tree(d: int) -> Formula:
    """Full binary alternating tree of depth ``d`` over 2^d variables.

    A node at even distance from the leaves is an OR, odd an AND; depth 0 is
    the single-bit identity leaf.
    """
    if d < 0:
        raise FormulaError("depth must be nonnegative")

    def build(r: int, offset: int) -> Formula:
        if r == 0:
            return leaf(offset + 1)
        kind = OR if r % 2 == 0 else AND
        half = 1 << (r - 1)
        return gate(kind, [build(r - 1, offset), build(r - 1, offset + half)])

    return build(d, 0)


def dual_formula(f: Formula) -> Formula:
    """Swap AND and OR gates; leaves (including negations) are unchanged."""
    if f.is_leaf:
        return f
    kind = AND if f.kind == OR else OR
    return gate(kind, [dual_formula(c) for c in f.children])


def negate_formula(f: Formula) -> Formula:
    """Proper negation: gates swapped and leaf negations flipped."""
    if f.is_leaf:
        return leaf(f.var, negated=not f.negated)
    kind = AND if f.kind == OR else OR
    return gate(kind, [negate_formula(c) for c in f.children])


def _shift(f: Formula, offset: int) -> Formula:
    if f.is_leaf:
        return leaf(f.var + offset, negated=f.negated)
    return gate(f.kind, [_shift(c, offset) for c in f.children])


def _flatten(f: Formula) -> Formula:
    if f.is_leaf:
        return f
    merged = []
    for child in f.children:
        child = _flatten(child)
        if child.kind == f.kind:
            merged.extend(child.children)
        else:
            merged.append(child)
    return gate(f.kind, merged)


def compose(outer: Formula, inner: Formula) -> Formula:
    """Substitute a fresh copy of ``inner`` for every leaf of ``outer``.

    A negated outer leaf receives the negated copy.  The result has
    N_outer * N_inner variables, numbered left to right, with same-kind
    adjacency flattened.
    """
    n_inner = inner.n_vars

    def sub(g: Formula) -> Formula:
        if g.is_leaf:
            block = negate_formula(inner) if g.negated else inner
            return _shift(block, (g.var - 1) * n_inner) if g.var > 1 else block
        return gate(g.kind, [sub(c) for c in g.children])

    result = sub(outer)
    return _flatten(result) if not result.is_leaf else result


# ---------------------------------------------------------------------------
# promise domains
# ---------------------------------------------------------------------------

AND_PROMISE = "and"
OR_PROMISE = "or"
FULL = "full"
COMPOSED = "composed"


@dataclass(frozen=True)
class PromiseDomain:
    """Restriction of the inputs a formula is evaluated on.

    ``and``-promise on N bits keeps |x| = N or |x| <= N-h; the ``or``-promise
    keeps |x| = 0 or |x| >= h.  A composed domain applies a per-level promise
    to the input vector of every gate of a uniform composition chain.
    """

    kind: str
    n: int = 0
    h: int = 0
    levels: tuple = ()

    def __post_init__(self):
        if self.kind in (AND_PROMISE, OR_PROMISE):
            if not 1 <= self.h <= self.n:
                raise PromiseMismatchError("promise requires 1 <= h <= N")
        elif self.kind == COMPOSED:
            for lk, n, h in self.levels:
                if lk not in (AND_PROMISE, OR_PROMISE) or not 1 <= h <= n or n < 2:
                    raise PromiseMismatchError(f"bad level ({lk}, {n}, {h})")
        elif self.kind != FULL:
            raise PromiseMismatchError(f"unknown domain kind {self.kind!r}")


def full_domain(n: int) -> PromiseDomain:
    return PromiseDomain(FULL, n=n)


def and_promise(n: int, h: int) -> PromiseDomain:
    return PromiseDomain(AND_PROMISE, n=n, h=h)


def or_promise(n: int, h: int) -> PromiseDomain:
    return PromiseDomain(OR_PROMISE, n=n, h=h)


def composed_domain(levels) -> PromiseDomain:
    return PromiseDomain(COMPOSED, levels=tuple(tuple(level) for level in levels))


def _weight_ok(kind: str, n: int, h: int, weight: int) -> bool:
    if kind == AND_PROMISE:
        return weight == n or weight <= n - h
    return weight == 0 or weight >= h


def _gate_value(kind: str, weight: int, n: int) -> int:
    if kind == AND_PROMISE:
        return 1 if weight == n else 0
    return 1 if weight > 0 else 0


def composed_formula(levels) -> Formula:
    """The uniform composition chain AND_N/OR_N|level1 o ... o |level_l."""
    result = None
    for kind, n, _h in reversed([tuple(level) for level in levels]):
        block = gate(AND if kind == AND_PROMISE else OR, [leaf(i + 1) for i in range(n)])
        result = block if result is None else compose(block, result)
    if result is None:
        raise PromiseMismatchError("composed domain needs at least one level")
    return result


def promise_membership(dom: PromiseDomain, f: Formula, x) -> bool:
    """Whether ``x`` (and, for composed domains, every intermediate gate
    input vector) lies in the promised set."""
    if dom.kind == FULL:
        as_bits(x, f.n_vars)
        return True
    if dom.kind in (AND_PROMISE, OR_PROMISE):
        expected = gate(AND if dom.kind == AND_PROMISE else OR,
                        [leaf(i + 1) for i in range(dom.n)])
        if f != expected:
            raise PromiseMismatchError("formula is not the promised single gate")
        bits = as_bits(x, dom.n)
        return _weight_ok(dom.kind, dom.n, dom.h, sum(bits))
    if f != composed_formula(dom.levels):
        raise PromiseMismatchError("formula does not match the composed level structure")
    bits = as_bits(x, f.n_vars)

    def check(level_idx: int, segment) -> tuple:
        kind, n, h = dom.levels[level_idx]
        width = len(segment) // n
        if level_idx == len(dom.levels) - 1:
            values = list(segment)
        else:
            values = []
            for j in range(n):
                ok, value = check(level_idx + 1, segment[j * width:(j + 1) * width])
                if not ok:
                    return False, 0
                values.append(value)
        weight = sum(values)
        if not _weight_ok(kind, n, h, weight):
            return False, 0
        return True, _gate_value(kind, weight, n)

    ok, _ = check(0, bits)
    return ok


def count_composed_domain(levels) -> int:
    """Size of the composed promise domain, computed without enumeration."""
    ones, zeros = 1, 1  # counts for a single raw bit
    for kind, n, h in reversed([tuple(level) for level in levels]):
        n1 = n0 = 0
        for w in range(n + 1):
            if not _weight_ok(kind, n, h, w):
                continue
            count = math.comb(n, w) * ones**w * zeros**(n - w)
            if _gate_value(kind, w, n):
                n1 += count
            else:
                n0 += count
        ones, zeros = n1, n0
    return ones + zeros


def enumerate_composed_domain(levels, cap: int = 1 << 20):
    """Yield every assignment (as a bit tuple) of the composed promise domain.

    Raises :class:`DomainTooLargeError` when the domain exceeds ``cap``.
    """
    levels = [tuple(level) for level in levels]
    if count_composed_domain(levels) > cap:
        raise DomainTooLargeError("composed domain exceeds the exhaustive budget")
    strings = [((1,), 1), ((0,), 0)]  # (bits, value) for a raw bit
    for kind, n, h in reversed(levels):
        nxt = []
        for combo in itertools.product(strings, repeat=n):
            weight = sum(value for _, value in combo)
            if _weight_ok(kind, n, h, weight):
                bits = tuple(itertools.chain.from_iterable(b for b, _ in combo))
                nxt.append((bits, _gate_value(kind, weight, n)))
        strings = nxt
    for bits, _value in strings:
        yield bits


# ---------------------------------------------------------------------------
# systematic and random generation
# ---------------------------------------------------------------------------

def uniform_formula(root_kind: str, fanins: Sequence[int]) -> Formula:
    """Alternating tree with the given per-level fan-ins, root kind first."""
    def build(kind, level, offset):
        if level == len(fanins):
            return leaf(offset + 1), 1
        width = fanins[level]
        children = []
        used = 0
        other = AND if kind == OR else OR
        for _ in range(width):
            child, n = build(other, level + 1, offset + used)
            children.append(child)
            used += n
        return gate(kind, children), used

    if not fanins:
        return leaf(1)
    tree, _ = build(root_kind, 0, 0)
    return tree


def enumerate_formulas(max_depth: int, fanins=(2, 3), max_vars: int | None = None):
    """All canonical (alternating-gate) formula shapes up to the given depth.

    Shapes with more than ``max_vars`` variables are pruned when a cap is
    given.  Yields formulas with canonical variable numbering.
    """

    def shapes(kind, depth_left):
        # yields (size, builder) where builder(offset) -> Formula
        yield 1, lambda off: leaf(off + 1)
        if depth_left == 0:
            return
        other = AND if kind == OR else OR
        child_shapes = list(shapes(other, depth_left - 1))
        for fanin in fanins:
            for combo in itertools.product(child_shapes, repeat=fanin):
                size = sum(n for n, _ in combo)
                if max_vars is not None and size > max_vars:
                    continue
                def builder(off, combo=combo, kind=kind):
                    children = []
                    used = 0
                    for n, make in combo:
                        children.append(make(off + used))
                        used += n
                    return gate(kind, children)
                yield size, builder

    seen = set()
    yield leaf(1)
    for root_kind in (AND, OR):
        for size, builder in shapes(root_kind, max_depth):
            if size == 1:
                continue
            f = builder(0)
            key = render(f)
            if key not in seen:
                seen.add(key)
                yield f


def random_formula(rng, n_vars: int, max_fanin: int = 3) -> Formula:
    """Random canonical formula on exactly ``n_vars`` variables."""
    if n_vars < 1:
        raise FormulaError("need at least one variable")

    def build(kind, n, offset):
        if n == 1:
            return leaf(offset + 1)
        fanin = int(rng.integers(2, min(max_fanin, n) + 1))
        cuts = sorted(rng.choice(n - 1, size=fanin - 1, replace=False) + 1)
        bounds = [0, *cuts, n]
        other = AND if kind == OR else OR
        children = [build(other, bounds[i + 1] - bounds[i], offset + bounds[i])
                    for i in range(fanin)]
        return gate(kind, children)

    root_kind = AND if rng.integers(2) == 0 else OR
    return build(root_kind, n_vars, 0)
