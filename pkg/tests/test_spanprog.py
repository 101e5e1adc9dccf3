import itertools
import math
from fractions import Fraction

import numpy as np
import pytest

from formulaflow import (
    DUAL,
    INF,
    approx_negative_witness,
    approx_negative_witness_reference,
    approx_positive_witness,
    approx_positive_witness_reference,
    build_nand_tree,
    build_span_program,
    dual_network,
    effective_resistance,
    eval_formula,
    formula_graph,
    formula_resistance,
    gate,
    leaf,
    negative_witness,
    optimal_weights,
    parse_formula,
    positive_witness,
    random_formula,
    selector_from_assignment,
    span_matrix,
    subgraph,
    target_vector,
    witness_extrema,
)
from formulaflow.electrical import check_unit_flow, decompose_flow, flow_from_directed
from formulaflow.errors import DisconnectedError


def all_inputs(n):
    return itertools.product((0, 1), repeat=n)


def random_weights(rng, n):
    return {f"x{i + 1}": Fraction(int(rng.integers(1, 9)), int(rng.integers(1, 9)))
            for i in range(n)}


# ---------------------------------------------------------------------------
# program structure
# ---------------------------------------------------------------------------

def test_single_edge_matrix():
    program = build_span_program(formula_graph(leaf(1)))
    a = span_matrix(program)
    assert a.shape == (2, 2)
    np.testing.assert_allclose(a[:, 0], [1.0, -1.0])
    np.testing.assert_allclose(a[:, 1], [-1.0, 1.0])
    np.testing.assert_allclose(target_vector(program), [1.0, -1.0])


def test_column_negation_pairs():
    rng = np.random.default_rng(41)
    f = random_formula(rng, 6)
    program = build_span_program(formula_graph(f, random_weights(rng, 6)))
    a = span_matrix(program)
    for i in range(0, a.shape[1], 2):
        np.testing.assert_allclose(a[:, i], -a[:, i + 1])


def test_gram_identity_twice_laplacian():
    rng = np.random.default_rng(42)
    for _ in range(10):
        n = int(rng.integers(2, 9))
        f = random_formula(rng, n)
        weights = random_weights(rng, n)
        net = formula_graph(f, weights)
        program = build_span_program(net)
        a = span_matrix(program)
        lap = np.zeros((len(net.vertices), len(net.vertices)))
        idx = program.vertex_index
        for e in net.edges:
            w = float(e.weight)
            lap[idx[e.u], idx[e.u]] += w
            lap[idx[e.v], idx[e.v]] += w
            lap[idx[e.u], idx[e.v]] -= w
            lap[idx[e.v], idx[e.u]] -= w
        np.testing.assert_allclose(a @ a.T, 2 * lap, atol=1e-12)


def test_target_in_column_space_iff_connected():
    program = build_span_program(formula_graph(parse_formula("x1&x2")))
    a = span_matrix(program)
    tau = target_vector(program)
    sol, residual, *_ = np.linalg.lstsq(a, tau, rcond=None)
    assert np.linalg.norm(a @ sol - tau) < 1e-12


# ---------------------------------------------------------------------------
# exact witnesses
# ---------------------------------------------------------------------------

def test_single_present_edge_positive_witness():
    program = build_span_program(formula_graph(leaf(1)))
    report = positive_witness(program, "1")
    assert report.size == Fraction(1, 2)
    assert report.residual < 1e-12


def test_or2_positive_witness_quarter():
    program = build_span_program(formula_graph(parse_formula("x1|x2")))
    assert positive_witness(program, "11").size == Fraction(1, 4)


def test_zero_instance_positive_witness_infinite():
    program = build_span_program(formula_graph(parse_formula("x1&x2")))
    assert positive_witness(program, "01").size is INF
    assert math.isinf(positive_witness(program, "01").size_float)


def test_single_absent_edge_negative_witness():
    program = build_span_program(formula_graph(leaf(1)))
    report = negative_witness(program, "0")
    assert report.size == 2
    assert report.witness["s"] - report.witness["t"] == 1


def test_and2_all_absent_negative_witness():
    program = build_span_program(formula_graph(parse_formula("x1&x2")))
    assert negative_witness(program, "00").size == 1


def test_one_instance_negative_witness_infinite():
    program = build_span_program(formula_graph(leaf(1)))
    assert negative_witness(program, "1").size is INF


def test_witness_sizes_match_resistances_exactly():
    rng = np.random.default_rng(43)
    for _ in range(15):
        n = int(rng.integers(2, 10))
        f = random_formula(rng, n)
        weights = random_weights(rng, n)
        net = formula_graph(f, weights)
        dnet = dual_network(f, weights)
        program = build_span_program(net)
        for x in all_inputs(n):
            r = effective_resistance(
                subgraph(net, selector_from_assignment(net, x)))
            rd = effective_resistance(
                subgraph(dnet, selector_from_assignment(dnet, x, DUAL)))
            pos = positive_witness(program, x)
            neg = negative_witness(program, x)
            assert pos.size == (INF if r is INF else r / 2)
            assert neg.size == (INF if rd is INF else 2 * rd)


def test_positive_witness_matches_generic_least_squares():
    # the minimum-norm solution over present columns has the same norm
    rng = np.random.default_rng(44)
    for _ in range(10):
        n = int(rng.integers(2, 6))
        f = random_formula(rng, n)
        weights = random_weights(rng, n)
        net = formula_graph(f, weights)
        program = build_span_program(net)
        a = span_matrix(program)
        tau = target_vector(program)
        for x in all_inputs(n):
            if eval_formula(f, x) != 1:
                continue
            presence = {f"x{i + 1}": x[i] for i in range(n)}
            cols = [i for i, (_u, _v, lbl) in enumerate(program.directed)
                    if presence[lbl]]
            sol, *_ = np.linalg.lstsq(a[:, cols], tau, rcond=None)
            assert np.linalg.norm(a[:, cols] @ sol - tau) < 1e-9
            report = positive_witness(program, x)
            assert abs(float(sol @ sol) - float(report.size)) < 1e-9


def test_witness_vector_is_unit_flow():
    # converting the returned edge-space vector back to a flow satisfies the
    # flow axioms (checked exactly via the underlying potentials' flow)
    rng = np.random.default_rng(45)
    f = random_formula(rng, 6)
    weights = random_weights(rng, 6)
    net = formula_graph(f, weights)
    program = build_span_program(net)
    for x in all_inputs(6):
        if eval_formula(f, x) != 1:
            continue
        report = positive_witness(program, x)
        values = {}
        for col, (u, v, label) in enumerate(program.directed):
            w = math.sqrt(float(net.weight_map()[label]))
            theta = w * (report.witness[col] - report.witness[col ^ 1])
            if col % 2 == 0 and abs(theta) > 1e-15:
                values[(u, v, label)] = Fraction(theta).limit_denominator(10**9)
        sub = subgraph(net, selector_from_assignment(net, x))
        check_unit_flow(sub, flow_from_directed(values))


def test_negative_witness_annihilates_present_columns():
    rng = np.random.default_rng(46)
    f = random_formula(rng, 7)
    net = formula_graph(f)
    program = build_span_program(net)
    for x in all_inputs(7):
        if eval_formula(f, x) != 0:
            continue
        omega = negative_witness(program, x).witness
        for e in net.edges:
            if x[int(e.label[1:]) - 1]:
                assert omega[e.u] == omega[e.v]


# ---------------------------------------------------------------------------
# approximate witnesses
# ---------------------------------------------------------------------------

def test_approx_positive_reduces_to_exact_on_one_instances():
    program = build_span_program(formula_graph(parse_formula("x1&x2")))
    report = approx_positive_witness(program, "11")
    assert report.error < 1e-12
    assert abs(report.size - 1.0) < 1e-9  # w+ = R/2 = 1


def test_approx_positive_single_absent_edge():
    program = build_span_program(formula_graph(leaf(1)))
    report = approx_positive_witness(program, "0")
    assert abs(report.error - 0.5) < 1e-9
    assert abs(report.size - 0.5) < 1e-9


def test_approx_negative_reduces_to_exact_on_zero_instances():
    program = build_span_program(formula_graph(parse_formula("x1|x2")))
    report = approx_negative_witness(program, "00")
    assert report.error < 1e-12
    assert abs(report.size - 4.0) < 1e-9  # w- = 2 R' = 2*2


def test_approx_negative_single_present_edge():
    program = build_span_program(formula_graph(leaf(1)))
    report = approx_negative_witness(program, "1")
    assert abs(report.error - 2.0) < 1e-9
    assert abs(report.size - 2.0) < 1e-9


def test_approx_bounds_or_gate():
    # w~- <= 2l for a fan-in-l or gate, any input; exact values for l = 3
    f = gate("or", [leaf(1), leaf(2), leaf(3)])
    program = build_span_program(formula_graph(f))
    for x in all_inputs(3):
        report = approx_negative_witness(program, x)
        assert report.size <= 6.0 + 1e-9


def test_approx_matches_exact_reference():
    rng = np.random.default_rng(47)
    for _ in range(12):
        n = int(rng.integers(1, 7))
        f = random_formula(rng, n) if n > 1 else leaf(1)
        weights = random_weights(rng, n)
        program = build_span_program(formula_graph(f, weights))
        for x in all_inputs(n):
            pos = approx_positive_witness(program, x)
            neg = approx_negative_witness(program, x)
            err_p, size_p = approx_positive_witness_reference(program, x)
            err_n, size_n = approx_negative_witness_reference(program, x)
            assert abs(pos.error - float(err_p)) < 1e-7
            assert abs(pos.size - float(size_p)) < 1e-7
            assert abs(neg.error - float(err_n)) < 1e-7
            assert abs(neg.size - float(size_n)) < 1e-7


def test_approx_positive_requires_connectable_host():
    net = formula_graph(parse_formula("x1&x2"))
    disconnected_host = subgraph(net, selector_from_assignment(net, "01"))
    program = build_span_program(disconnected_host)
    with pytest.raises(DisconnectedError):
        approx_positive_witness(program, [0])


def test_optimal_positive_witness_decomposes_to_paths_only():
    rng = np.random.default_rng(48)
    for _ in range(10):
        n = int(rng.integers(2, 9))
        f = random_formula(rng, n)
        net = formula_graph(f)
        for x in all_inputs(n):
            if eval_formula(f, x) != 1:
                continue
            sub = subgraph(net, selector_from_assignment(net, x))
            from formulaflow import optimal_flow
            flow, _ = optimal_flow(sub)
            pieces = decompose_flow(flow)
            assert all(kind == "path" for _c, kind, _e in pieces)


# ---------------------------------------------------------------------------
# extrema and the weight recursion
# ---------------------------------------------------------------------------

def test_single_edge_extrema():
    f = leaf(1)
    program = build_span_program(formula_graph(f))
    ext = witness_extrema(program, [(0,), (1,)], f)
    assert (ext.w_plus, ext.w_minus) == (Fraction(1, 2), Fraction(2))
    assert abs(ext.bound - 1.0) < 1e-12


def test_line_promise_extrema():
    # under the few-ones promise the line's extrema are N/2 and 2/h
    n, h = 9, 3
    f = gate("and", [leaf(i + 1) for i in range(n)])
    program = build_span_program(formula_graph(f))
    domain = [tuple([1] * n)]
    for weight in range(n - h + 1):
        domain.append(tuple([1] * weight + [0] * (n - weight)))
    ext = witness_extrema(program, domain, f, include_approx=False)
    assert ext.w_plus == Fraction(n, 2)
    assert ext.w_minus == Fraction(2, h)


def test_nand2_extrema_cross_checked_against_resistance():
    f = build_nand_tree(2)
    program = build_span_program(formula_graph(f))
    ext = witness_extrema(program, list(all_inputs(4)), f)
    best_r = max(formula_resistance(f, x) for x in all_inputs(4)
                 if eval_formula(f, x) == 1)
    best_rd = max(formula_resistance(f, x, dual=True) for x in all_inputs(4)
                  if eval_formula(f, x) == 0)
    assert ext.w_plus == best_r / 2
    assert ext.w_minus == 2 * best_rd
    assert ext.bound == math.sqrt(float(ext.w_plus * ext.w_minus))


def test_leaf_certificate():
    cert = optimal_weights(leaf(1))
    assert cert.weights == {"x1": Fraction(1)}
    assert cert.bound == 1
    assert (cert.w_plus, cert.w_minus) == (Fraction(1, 2), Fraction(2))


@pytest.mark.parametrize("d", [1, 2, 3, 4])
def test_nand_certificates_are_tight(d):
    f = build_nand_tree(d)
    cert = optimal_weights(f)
    assert cert.bound == f.n_vars
    # exhaustive verification of the certified extrema
    best_p = max((formula_resistance(f, x, cert.weights) / 2
                  for x in all_inputs(1 << d) if eval_formula(f, x) == 1))
    best_m = max((2 * formula_resistance(f, x, cert.weights, dual=True)
                  for x in all_inputs(1 << d) if eval_formula(f, x) == 0))
    assert best_p == cert.w_plus
    assert best_m == cert.w_minus
    assert best_p * best_m <= f.n_vars


def test_asymmetric_certificate_not_exceeding_n():
    f = parse_formula("x1|(x2&x3)")
    cert = optimal_weights(f)
    assert cert.bound <= 3
    best_p = max((formula_resistance(f, x, cert.weights) / 2
                  for x in all_inputs(3) if eval_formula(f, x) == 1))
    best_m = max((2 * formula_resistance(f, x, cert.weights, dual=True)
                  for x in all_inputs(3) if eval_formula(f, x) == 0))
    assert best_p * best_m == cert.bound


def test_certificate_json_shape():
    doc = optimal_weights(build_nand_tree(2)).to_json()
    assert doc == b'{"weights":{"x1":"1","x2":"1","x3":"1","x4":"1"},"bound":"4"}'
