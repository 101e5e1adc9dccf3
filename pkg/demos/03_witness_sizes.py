"""Span-program witness sizes and their resistance identities.

The connectivity span program spans one coordinate per directed edge and maps
(u, v) to sqrt(c) (e_u - e_v) with target e_s - e_t.  A positive witness is
an edge-space vector reaching the target over the available edges; its
minimum squared norm is half the primal effective resistance.  A negative
witness is a vertex functional separating the terminals while annihilating
available columns; its minimum squared row norm is twice the dual
resistance.  Approximate witnesses relax availability, minimizing the
violation first and the norm second.
"""

import itertools

import numpy as np

import formulaflow as ff

print(__doc__)

f = ff.parse_formula("(x1&x2)|(x3&x4)")
net = ff.formula_graph(f)
program = ff.build_span_program(net)

a = ff.span_matrix(program)
print(f"program: {a.shape[0]} vertex rows x {a.shape[1]} directed-edge columns")
lap = np.zeros((4, 4))
idx = program.vertex_index
for e in net.edges:
    lap[idx[e.u], idx[e.u]] += 1
    lap[idx[e.v], idx[e.v]] += 1
    lap[idx[e.u], idx[e.v]] -= 1
    lap[idx[e.v], idx[e.u]] -= 1
print("A A^T equals twice the weighted Laplacian:",
      bool(np.allclose(a @ a.T, 2 * lap)))

print("\nper-input witness sizes (inf marks the absent side):")
print("  x     value  w+      w-      R/2     2R'")
for x in ("1111", "1100", "1010", "0000"):
    value = ff.eval_formula(f, x)
    pos = ff.positive_witness(program, x)
    neg = ff.negative_witness(program, x)
    r = ff.formula_resistance(f, x)
    rd = ff.formula_resistance(f, x, dual=True)
    half = "inf" if r is ff.INF else str(r / 2)
    twice = "inf" if rd is ff.INF else str(2 * rd)
    print(f"  {x}  {value}      {str(pos.size):7} {str(neg.size):7} "
          f"{half:7} {twice}")

print("approximate witnesses never blow up; they trade error for size:")
for x in ("1111", "0000", "1000"):
    ap = ff.approx_positive_witness(program, x)
    an = ff.approx_negative_witness(program, x)
    print(f"  x={x}: (e+, w~+) = ({ap.error:.4f}, {ap.size:.4f})   "
          f"(e-, w~-) = ({an.error:.4f}, {an.size:.4f})")

fanin = f.max_fanin()
print(f"\nsize caps from the structure: w~+ <= l^d_and / 2 = "
      f"{0.5 * fanin ** f.and_depth()},  w~- <= 2 l^d_or = "
      f"{2.0 * fanin ** f.or_depth()}")

ext = ff.witness_extrema(program, list(itertools.product((0, 1), repeat=4)), f)
print(f"\nextrema over all inputs: W+ = {ext.w_plus}, W- = {ext.w_minus}, "
      f"sqrt(W+ W-) = {ext.bound:.4f}")
