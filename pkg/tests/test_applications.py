import math

import numpy as np
import pytest

import equiosc as eq

SQRT3_HALF = 0.8660254037844386
SEED_UNION = eq.IntervalUnion(((0.0, 0.4), (0.6, 1.0)))


def ones_weight(domain=(0.0, 1.0)):
    return eq.constant_field(1.0, domain=domain)


# -- independent brute-force oracles (kept separate from the search code) -------

def brute_union_constant(E, restricted: bool, points: int = 4001):
    """1-D exhaustive minimization of max_{t in E} |t − x| over node positions."""
    T = np.concatenate([np.linspace(a, b, points) for a, b in E.components])
    if restricted:
        X = T
    else:
        A, B = E.hull
        X = np.linspace(A, B, points)
    best_x, best_v = None, math.inf
    for x in X:
        v = float(np.max(np.abs(T - x)))
        if v < best_v:
            best_x, best_v = float(x), v
    return best_x, best_v


def test_gap_eval_examples():
    w = ones_weight()
    assert eq.gap_eval((0.5,), (1.0,), w, 0.75) == pytest.approx(0.25)
    assert eq.gap_eval((0.5,), (2.0,), w, 0.0) == pytest.approx(0.25)
    assert eq.gap_eval((0.146447, 0.853553), (1.0, 1.0), w, 0.0) == pytest.approx(
        0.125, abs=1e-6
    )
    with pytest.raises(eq.DomainError):
        eq.gap_eval((0.5,), (1.0,), w, 1.5)


def test_solve_bojanov_unit_interval():
    gap = eq.GapProblem((0.0, 1.0), (1.0, 1.0), ones_weight())
    sol = eq.solve_bojanov(gap, tol=1e-10)
    assert sol.nodes[0] == pytest.approx(0.14644660940672624, abs=1e-8)
    assert sol.nodes[1] == pytest.approx(0.8535533905932737, abs=1e-8)
    assert sol.norm == pytest.approx(0.125, abs=1e-8)
    assert sol.interlaces


def test_solve_bojanov_even_exponent():
    gap = eq.GapProblem((0.0, 1.0), (2.0,), ones_weight())
    sol = eq.solve_bojanov(gap, tol=1e-10)
    assert sol.nodes[0] == pytest.approx(0.5, abs=1e-8)
    assert sol.norm == pytest.approx(0.25, abs=1e-8)


def test_solve_bojanov_shifted_interval():
    gap = eq.GapProblem((-1.0, 1.0), (1.0,) * 3, ones_weight(domain=(-1.0, 1.0)))
    sol = eq.solve_bojanov(gap, tol=1e-10)
    want = (-SQRT3_HALF, 0.0, SQRT3_HALF)
    for got, ref in zip(sol.nodes, want):
        assert got == pytest.approx(ref, abs=1e-8)
    assert sol.norm == pytest.approx(0.25, abs=1e-8)
    a, b = gap.interval
    assert a < sol.nodes[0] and sol.nodes[-1] < b


def test_bojanov_certificate_and_bracketing(rng):
    gap = eq.GapProblem((0.0, 1.0), (1.0, 1.5), ones_weight())
    sol = eq.solve_bojanov(gap, tol=1e-11)
    # equioscillation certificate at the extremal points
    for t in sol.extremal_points:
        value = eq.gap_eval(sol.nodes, gap.exponents, gap.weight, t)
        assert value == pytest.approx(sol.norm, rel=1e-8)
    # interval-maxima bracketing for any other admissible node system
    for _ in range(5):
        x = tuple(sorted(rng.uniform(0.05, 0.95, size=2)))
        if max(abs(a - b) for a, b in zip(x, sol.nodes)) < 1e-3:
            continue
        maxima = eq.gap_interval_maxima(x, gap.exponents, gap.weight)
        assert min(maxima) < sol.norm < max(maxima)


def test_verify_signed_equioscillation_classic():
    gap = eq.GapProblem((0.0, 1.0), (1.0, 1.0), ones_weight())
    sol = eq.solve_bojanov(gap, tol=1e-11)
    assert eq.verify_signed_equioscillation(
        sol.nodes, (1, 1), sol.extremal_points, gap.weight
    )


def test_verify_signed_equioscillation_even_multiplicity():
    gap = eq.GapProblem((0.0, 1.0), (2.0,), ones_weight())
    sol = eq.solve_bojanov(gap, tol=1e-11)
    # signs are (+, +): even multiplicity keeps the sign across the node
    assert eq.verify_signed_equioscillation(
        sol.nodes, (2,), sol.extremal_points, gap.weight
    )
    t0, t1 = sol.extremal_points
    x = sol.nodes[0]
    assert (t0 - x) ** 2 > 0 and (t1 - x) ** 2 > 0


def test_verify_signed_equioscillation_mixed():
    gap = eq.GapProblem((-1.0, 1.0), (1.0, 2.0), ones_weight(domain=(-1.0, 1.0)))
    sol = eq.solve_bojanov(gap, tol=1e-11)
    assert eq.verify_signed_equioscillation(
        sol.nodes, (1, 2), sol.extremal_points, gap.weight
    )


def test_verify_signed_preconditions():
    w = ones_weight()
    with pytest.raises(eq.PreconditionError):
        eq.verify_signed_equioscillation((0.5,), (1.5,), (0.0, 1.0), w)
    with pytest.raises(eq.PreconditionError):
        eq.verify_signed_equioscillation((0.5,), (1,), (0.6, 1.0), w)


def test_unrestricted_seed_instance():
    C, nodes = eq.unrestricted_constant(SEED_UNION, (1.0,))
    brute_x, brute_v = brute_union_constant(SEED_UNION, restricted=False)
    assert C == pytest.approx(0.5, abs=1e-6)
    assert nodes[0] == pytest.approx(0.5, abs=1e-6)
    assert C == pytest.approx(brute_v, abs=1e-3)
    assert nodes[0] == pytest.approx(brute_x, abs=1e-3)


def test_unrestricted_single_component_reduces_to_interval_solve():
    E = eq.IntervalUnion(((0.0, 1.0),))
    C, nodes = eq.unrestricted_constant(E, (1.0, 1.0))
    gap = eq.GapProblem((0.0, 1.0), (1.0, 1.0), ones_weight())
    sol = eq.solve_bojanov(gap)
    assert C == pytest.approx(sol.norm, abs=1e-9)
    for a, b in zip(nodes, sol.nodes):
        assert a == pytest.approx(b, abs=1e-7)


def test_snap_examples():
    assert eq.snap_to_E((0.5,), SEED_UNION) == (0.4,)  # tie goes left
    assert eq.snap_to_E((0.45, 0.7), SEED_UNION) == (0.4, 0.7)
    assert eq.snap_to_E((0.3,), SEED_UNION) == (0.3,)
    with pytest.raises(eq.PreconditionError):
        eq.snap_to_E((1.5,), SEED_UNION)


def test_restricted_seed_instance():
    R, nodes = eq.restricted_constant(SEED_UNION, (1.0,))
    _, brute_v = brute_union_constant(SEED_UNION, restricted=True)
    assert R == pytest.approx(0.6, abs=1e-6)
    assert nodes[0] in (pytest.approx(0.4, abs=1e-6), pytest.approx(0.6, abs=1e-6))
    assert R == pytest.approx(brute_v, abs=1e-3)
    assert SEED_UNION.contains(nodes[0])


def test_restricted_no_gap_equals_unrestricted():
    E = eq.IntervalUnion(((0.0, 1.0),))
    C, _ = eq.unrestricted_constant(E, (1.0, 1.0))
    R, _ = eq.restricted_constant(E, (1.0, 1.0))
    assert R == pytest.approx(C, rel=1e-6)


def test_bound_factor_values():
    assert eq.union_bound_factor(2, (1.0, 1.0, 1.0)) == pytest.approx(2.0)
    assert eq.union_bound_factor(3, (1.0, 1.0)) == pytest.approx(4.0)
    assert eq.union_bound_factor(2, (2.0, 1.0)) == pytest.approx(4.0)


def test_compare_constants_seed():
    report = eq.compare_constants(SEED_UNION, (1.0,))
    assert report["C"] == pytest.approx(0.5, abs=1e-6)
    assert report["R"] == pytest.approx(0.6, abs=1e-6)
    assert report["bound"] == pytest.approx(2.0)
    assert report["lower_ok"] and report["upper_ok"] and report["snap_ok"]
    assert report["snap_norm"] <= report["bound"] * report["C"] + 1e-9


def test_compare_constants_three_components():
    E = eq.IntervalUnion(((0.0, 0.25), (0.4, 0.6), (0.8, 1.0)))
    report = eq.compare_constants(E, (1.0, 1.0))
    assert report["lower_ok"] and report["upper_ok"] and report["snap_ok"]
    assert report["bound"] == pytest.approx(4.0)
    assert all(E.contains(x) for x in report["nodes_restricted"])


def test_union_validation():
    with pytest.raises(eq.SchemaError):
        eq.IntervalUnion(((0.0, 0.5), (0.5, 1.0)))  # touching components
    with pytest.raises(eq.SchemaError):
        eq.IntervalUnion(((0.5, 0.4),))
    with pytest.raises(eq.BudgetError):
        eq.restricted_constant(SEED_UNION, (1.0,) * 5)


def test_gap_problem_validation():
    with pytest.raises(eq.SchemaError):
        eq.GapProblem((1.0, 0.0), (1.0,), ones_weight())
    with pytest.raises(eq.SchemaError):
        eq.GapProblem((0.0, 1.0), (-2.0,), ones_weight())
