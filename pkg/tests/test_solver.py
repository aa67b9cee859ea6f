import math

import numpy as np
import pytest

import equiosc as eq
from equiosc.catalog import build_problem
from conftest import random_sm_problem, random_strict_nodes

LOG_HALF = -0.6931471805599453
CHEB2_NODES = (0.14644660940672624, 0.8535533905932737)
CHEB2_VALUE = -2.0794415416798357  # log(1/8)


def log_problem(n, r=None):
    r = r if r is not None else (1.0,) * n
    return eq.Problem(n, r, eq.Log(), eq.constant_field(0.0))


def test_symmetric_n1():
    report = eq.solve_equioscillation(log_problem(1))
    assert report.converged
    assert report.nodes.nodes[0] == pytest.approx(0.5, abs=1e-9)
    assert report.value == pytest.approx(LOG_HALF, abs=1e-9)
    assert report.residual <= 1e-9
    assert eq.in_regularity_set(log_problem(1), report.nodes)


def test_symmetric_n1_doubled_multiplier():
    report = eq.solve_equioscillation(log_problem(1, (2.0,)))
    assert report.nodes.nodes[0] == pytest.approx(0.5, abs=1e-9)
    assert report.value == pytest.approx(2.0 * LOG_HALF, abs=1e-9)


def test_chebyshev_n2():
    report = eq.solve_equioscillation(log_problem(2), tol=1e-10)
    for got, want in zip(report.nodes.nodes, CHEB2_NODES):
        assert got == pytest.approx(want, abs=1e-9)
    assert report.value == pytest.approx(CHEB2_VALUE, abs=1e-9)


def test_strictness_equioscillation_point():
    problem = build_problem("strictness_5_3")
    report = eq.solve_equioscillation(problem, tol=1e-10)
    assert report.converged
    assert report.nodes.nodes[0] == pytest.approx(1.0 - 0.25 / math.e, abs=1e-8)
    assert report.value == pytest.approx(0.0, abs=1e-8)
    assert report.nonuniqueness_risk
    assert len(report.eta_trend) == 3
    etas = [eta for eta, _, _ in report.eta_trend]
    assert etas == [1e-2, 1e-3, 1e-4]


def test_solve_difference_target_roundtrip_strictness():
    problem = build_problem("strictness_5_3")
    report = eq.solve_difference(problem, (0.8946394843421737,), tol=1e-10)
    assert report.nodes.nodes[0] == pytest.approx(0.775, abs=1e-8)


def test_solve_difference_roundtrip_random(rng):
    for n in (1, 2, 3):
        for _ in range(8):
            problem = random_sm_problem(rng, n)
            target = tuple(float(v) for v in rng.uniform(-3.0, 3.0, size=n))
            report = eq.solve_difference(problem, target)
            assert report.converged
            phi = eq.difference(problem, report.nodes)
            assert max(abs(a - b) for a, b in zip(phi.phi, target)) <= 1e-6


def test_uniqueness_under_random_initializations(rng):
    problem = log_problem(2, (1.0, 1.7))
    solutions = []
    for _ in range(10):
        init = random_strict_nodes(rng, 2)
        report = eq.solve_equioscillation(problem, initial=init)
        solutions.append(report.nodes.nodes)
    base = solutions[0]
    for other in solutions[1:]:
        assert max(abs(a - b) for a, b in zip(base, other)) <= 1e-7


def test_solver_keeps_nodes_out_of_field_gaps():
    from test_fields import log_chi_union

    problem = eq.Problem(2, (1.0, 1.0), eq.Log(), log_chi_union())
    report = eq.solve_equioscillation(problem)
    assert report.converged
    assert eq.in_regularity_set(problem, report.nodes)


def test_hypothesis_errors():
    tent = build_problem("nonmonotone_5_4")
    with pytest.raises(eq.HypothesisError):
        eq.solve_equioscillation(tent)
    nonsingular = build_problem("singularity_5_1")
    with pytest.raises(eq.HypothesisError):
        eq.solve_equioscillation(nonsingular)


def test_convergence_error_on_tiny_budget():
    with pytest.raises(eq.ConvergenceError):
        eq.solve_equioscillation(log_problem(3), tol=1e-12, max_iterations=1)


def test_invalid_target():
    with pytest.raises(eq.PreconditionError):
        eq.solve_difference(log_problem(2), (0.0,))
    with pytest.raises(eq.PreconditionError):
        eq.solve_difference(log_problem(1), (float("inf"),))


def test_sandwich_examples():
    problem = log_problem(1)
    report = eq.solve_equioscillation(problem)
    checks = eq.sandwich_check(problem, report.nodes, report.value)
    assert checks == {"lower_ok": True, "upper_ok": True}

    checks = eq.sandwich_check(problem, (0.25,), LOG_HALF)
    assert checks == {"lower_ok": True, "upper_ok": True}

    strictness = build_problem("strictness_5_3")
    checks = eq.sandwich_check(strictness, (0.5,), 0.0)
    assert checks == {"lower_ok": True, "upper_ok": True}


def test_sandwich_detects_violations():
    problem = log_problem(1)
    # M far above m̄(x) violates the upper half; far below violates the lower half
    assert not eq.sandwich_check(problem, (0.5,), 5.0)["upper_ok"]
    assert not eq.sandwich_check(problem, (0.5,), -5.0)["lower_ok"]


def test_argmax_interlaces_nodes_for_concave_fields(rng):
    for field in (eq.constant_field(0.0), eq.sqrt_affine_field(1.0, 1.0, 0.0)):
        problem = eq.Problem(2, (1.0, 1.3), eq.Log(), field)
        report = eq.solve_equioscillation(problem)
        w1, w2 = report.nodes.nodes
        t0, t1, t2 = report.maxima.argmax
        assert t0 < w1 < t1 < w2 < t2


def test_report_phi_matches_difference():
    problem = log_problem(2)
    report = eq.solve_difference(problem, (0.5, -0.25))
    phi = eq.difference(problem, report.nodes)
    for a, b in zip(report.phi(), phi.phi):
        assert a == pytest.approx(b, abs=1e-12)
