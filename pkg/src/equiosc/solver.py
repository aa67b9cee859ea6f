"""Solving Φ(w) = c and the equioscillation point.

Under a singular, strictly monotone kernel the difference map Φ restricted to
the regularity set is a homeomorphism onto R^n, so the target equation has a
unique solution. The solve itself is a Gauss–Seidel sweep — node w_j moves by
bisection to zero the local residual m_j − m_{j−1} − c_j, which is strictly
decreasing in w_j — followed by damped Newton with a forward-difference
Jacobian once the residual is small.

Kernels that are monotone but not strictly so are handled through a small
regularization homotopy K + η√|t| (η = 1e−2, 1e−3, 1e−4): each regularized
problem is strictly monotone, the trend is extrapolated to η → 0, and the
result is polished on the original kernel. Such solves are flagged, since
without strict monotonicity the equioscillation point need not be unique.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field as dc_field

import numpy as np

from .errors import ConvergenceError, HypothesisError, PreconditionError
from .extreal import NEG_INFINITY, is_neg_infinity
from .kernels import Regularized
from .problem import NodeSystem, Problem
from .translates import MaximaVector, _interval_max, interval_maxima

__all__ = ["SolveReport", "sandwich_check", "solve_difference", "solve_equioscillation"]

_NEG_INF = float("-inf")
_BRACKET_EPS = 1e-12
_BIG = 1e18
_FD_STEP = 1e-7
_SWEEP_SWITCH = 1e-3
_ETAS = (1e-2, 1e-3, 1e-4)


@dataclass(frozen=True)
class SolveReport:
    nodes: NodeSystem
    maxima: MaximaVector
    target: tuple[float, ...]
    residual: float
    value: float
    iterations: int
    converged: bool
    nonuniqueness_risk: bool = False
    eta_trend: tuple[tuple[float, tuple[float, ...], float], ...] = ()

    def phi(self) -> tuple[float, ...]:
        m = self.maxima.as_floats()
        return tuple(m[j] - m[j - 1] for j in range(1, len(m)))


# -- initialization -------------------------------------------------------------

def _finite_field_pieces(problem: Problem) -> list[tuple[float, float]]:
    """Complement components of the field's −∞ set (positive length only)."""
    segments = problem.field.singular_segments()
    out = []
    cursor = 0.0
    for seg in segments:
        if seg.lo > cursor:
            out.append((cursor, seg.lo))
        cursor = max(cursor, seg.hi)
    if cursor < 1.0:
        out.append((cursor, 1.0))
    if not out:
        out.append((0.0, 1.0))
    return out


def _initial_nodes(problem: Problem) -> list[float]:
    n = problem.n
    ws = [(j + 1.0) / (n + 1.0) for j in range(n)]
    segments = problem.field.singular_segments()
    if not segments:
        return ws
    finite = _finite_field_pieces(problem)

    def offending(ws_now: list[float]) -> int | None:
        ys = (0.0, *ws_now, 1.0)
        from .translates import _rint_inside_segment

        for j in range(n + 1):
            lo, hi = ys[j], ys[j + 1]
            if any(_rint_inside_segment(lo, hi, j, n, seg) for seg in segments):
                return j
        return None

    for _ in range(4 * n + 4):
        j = offending(ws)
        if j is None:
            return ws
        move = j if 1 <= j <= n else 1
        node = ws[move - 1]
        lo, hi = min(finite, key=lambda seg: min(abs(node - seg[0]), abs(node - seg[1])))
        ws[move - 1] = 0.5 * (lo + hi)
        ws.sort()
    # fall back to spreading nodes over the finite pieces by length quantiles
    total = sum(hi - lo for lo, hi in finite)
    targets = [(j + 1.0) / (n + 1.0) * total for j in range(n)]
    ws = []
    for target in targets:
        acc = 0.0
        for lo, hi in finite:
            if acc + (hi - lo) >= target:
                ws.append(lo + (target - acc))
                break
            acc += hi - lo
        else:
            ws.append(finite[-1][1])
    ws = sorted(min(max(w, 1e-6), 1.0 - 1e-6) for w in ws)
    for i in range(1, n):
        if ws[i] <= ws[i - 1]:
            ws[i] = min(ws[i - 1] + 1e-6, 1.0 - 1e-6)
    return ws


# -- residual machinery ----------------------------------------------------------

def _local_residual(problem: Problem, ys: list[float], j: int, c_j: float, xtol: float) -> float:
    _, m_left = _interval_max(problem, tuple(ys), j - 1, xtol)
    _, m_right = _interval_max(problem, tuple(ys), j, xtol)
    if m_left == _NEG_INF and m_right == _NEG_INF:
        return 0.0
    if m_left == _NEG_INF:
        return _BIG
    if m_right == _NEG_INF:
        return -_BIG
    return m_right - m_left - c_j


def _bisect_node(problem, ys: list[float], j: int, c_j: float, width_tol: float, xtol: float):
    lo = ys[j - 1] + _BRACKET_EPS
    hi = ys[j + 1] - _BRACKET_EPS
    if hi <= lo:
        return
    while hi - lo > width_tol:
        mid = 0.5 * (lo + hi)
        ys[j] = mid
        if _local_residual(problem, ys, j, c_j, xtol) > 0.0:
            lo = mid
        else:
            hi = mid
    ys[j] = 0.5 * (lo + hi)


def _phi_floats(vals: list[float]) -> list[float]:
    return [vals[j] - vals[j - 1] for j in range(1, len(vals))]


def _residual_norm(problem: Problem, ys: list[float], c, xtol: float):
    from .translates import _maxima_floats

    vals, args = _maxima_floats(problem, tuple(ys), xtol)
    if any(v == _NEG_INF for v in vals):
        return math.inf, vals, args
    phi = _phi_floats(vals)
    return max(abs(p - cj) for p, cj in zip(phi, c)), vals, args


def _newton_polish(problem, ys: list[float], c, tol, xtol, budget: int):
    """Damped Newton on Φ − c; returns (iterations_used, converged)."""
    n = problem.n
    used = 0
    res, vals, _ = _residual_norm(problem, ys, c, xtol)
    while used < budget:
        if res <= tol:
            return used, True
        if not math.isfinite(res):
            return used, False
        # moving one node shifts its translate everywhere, so the Jacobian of
        # Φ is dense: recompute the full maxima vector per perturbed node
        jac = np.zeros((n, n))
        phi_base = np.array(_phi_floats(vals))
        from .translates import _maxima_floats

        for j in range(1, n + 1):
            pert = list(ys)
            pert[j] = min(ys[j] + _FD_STEP, ys[j + 1] - _BRACKET_EPS)
            h = pert[j] - ys[j]
            if h <= 0.0:
                pert[j] = max(ys[j] - _FD_STEP, ys[j - 1] + _BRACKET_EPS)
                h = pert[j] - ys[j]
            vals_p, _ = _maxima_floats(problem, tuple(pert), xtol)
            if any(v == _NEG_INF for v in vals_p):
                return used, False
            jac[:, j - 1] = (np.array(_phi_floats(vals_p)) - phi_base) / h
        rvec = np.array(_phi_floats(vals)) - np.asarray(c, dtype=float)
        try:
            step_vec = np.linalg.solve(jac, -rvec)
        except np.linalg.LinAlgError:
            return used, False
        lam = 1.0
        improved = False
        for _ in range(30):
            trial = list(ys)
            ok = True
            for j in range(1, n + 1):
                trial[j] = ys[j] + lam * step_vec[j - 1]
            for j in range(1, n + 2):
                if trial[j] - trial[j - 1] < _BRACKET_EPS:
                    ok = False
                    break
            if ok:
                new_res, new_vals, _ = _residual_norm(problem, trial, c, xtol)
                if new_res < res:
                    ys[:] = trial
                    res, vals = new_res, new_vals
                    improved = True
                    break
            lam *= 0.5
        used += 1
        if not improved:
            return used, res <= tol
    return used, res <= tol


def _solve_direct(problem: Problem, c, tol, xtol, max_iterations, initial):
    n = problem.n
    if initial is not None:
        init = problem.node_system(initial)
        if not init.strict():
            raise PreconditionError("initial node system must be strict")
        ys = [0.0, *init.nodes, 1.0]
    else:
        ys = [0.0, *_initial_nodes(problem), 1.0]

    iterations = 0
    converged = False
    res = math.inf
    width = 1e-2
    while iterations < max_iterations:
        width = max(width * 0.25, 1e-13)
        sweep_xtol = max(min(width * 1e-2, 1e-10), 1e-13)
        for j in range(1, n + 1):
            _bisect_node(problem, ys, j, c[j - 1], width, sweep_xtol)
        iterations += 1
        res, _, _ = _residual_norm(problem, ys, c, xtol)
        if res <= tol:
            converged = True
            break
        if res <= _SWEEP_SWITCH:
            used, ok = _newton_polish(problem, ys, c, tol, xtol, budget=max_iterations - iterations)
            iterations += used
            if ok:
                converged = True
                break
            width = max(width, 1e-6)  # Newton stalled: keep sweeping tighter
    res, vals, args = _residual_norm(problem, ys, c, xtol)
    converged = res <= tol
    return ys, res, vals, args, iterations, converged


def _as_report(problem, ys, res, vals, args, iterations, converged, c, risk=False, trend=()):
    nodes = NodeSystem(tuple(ys[1:-1]))
    maxima = MaximaVector(
        tuple(NEG_INFINITY if v == _NEG_INF else v for v in vals),
        tuple(args),
    )
    value = maxima.m_bar
    return SolveReport(
        nodes=nodes,
        maxima=maxima,
        target=tuple(float(v) for v in c),
        residual=res,
        value=value,
        iterations=iterations,
        converged=converged,
        nonuniqueness_risk=risk,
        eta_trend=trend,
    )


def solve_difference(
    problem: Problem,
    c,
    tol: float = 1e-9,
    *,
    max_iterations: int = 500,
    initial=None,
    xtol: float = 1e-12,
) -> SolveReport:
    """Find w in the regularity set with Φ(w) = c (componentwise within tol)."""
    c = tuple(float(v) for v in c)
    if len(c) != problem.n:
        raise PreconditionError(f"target must have length n={problem.n}")
    if any(not math.isfinite(v) for v in c):
        raise PreconditionError("target components must be finite")
    flags = problem.kernel.flags()
    if not flags.singular:
        raise HypothesisError("solver requires a singular kernel (K(0) = −∞)")
    if not flags.monotone_M:
        raise HypothesisError("solver requires a monotone kernel")

    if flags.strictly_monotone_SM:
        ys, res, vals, args, iterations, converged = _solve_direct(
            problem, c, tol, xtol, max_iterations, initial
        )
        if not converged:
            raise ConvergenceError(
                f"no convergence after {iterations} iterations (residual {res:.3e})"
            )
        return _as_report(problem, ys, res, vals, args, iterations, converged, c)

    # Monotone but not strictly monotone: regularization homotopy, then polish.
    trend = []
    warm = initial
    iterations_total = 0
    for eta in _ETAS:
        reg_problem = Problem(
            n=problem.n,
            r=problem.r,
            kernel=Regularized(problem.kernel, eta),
            field=problem.field,
        )
        ys, res, vals, args, iterations, converged = _solve_direct(
            reg_problem, c, max(tol, 1e-10), xtol, max_iterations, warm
        )
        iterations_total += iterations
        if not converged:
            raise ConvergenceError(
                f"regularized solve (eta={eta}) stalled at residual {res:.3e}"
            )
        nodes = tuple(ys[1:-1])
        value = max(v for v in vals if v != _NEG_INF)
        trend.append((eta, nodes, value))
        warm = NodeSystem(nodes)

    # η → 0 extrapolation (linear in η from the two smallest levels)
    last = np.asarray(trend[-1][1])
    prev = np.asarray(trend[-2][1])
    ratio = _ETAS[-2] / _ETAS[-1]
    guess = (ratio * last - prev) / (ratio - 1.0)
    guess = np.clip(guess, _BRACKET_EPS, 1.0 - _BRACKET_EPS)
    for i in range(1, len(guess)):
        if guess[i] <= guess[i - 1]:
            guess[i] = guess[i - 1] + _BRACKET_EPS
    ys, res, vals, args, iterations, converged = _solve_direct(
        problem, c, tol, xtol, max_iterations, NodeSystem(tuple(float(v) for v in guess))
    )
    iterations_total += iterations
    if not converged:
        raise ConvergenceError(
            f"polish on the original kernel stalled at residual {res:.3e}"
        )
    return _as_report(
        problem, ys, res, vals, args, iterations_total, converged, c,
        risk=True, trend=tuple(trend),
    )


def solve_equioscillation(
    problem: Problem,
    tol: float = 1e-9,
    *,
    max_iterations: int = 500,
    initial=None,
    xtol: float = 1e-12,
) -> SolveReport:
    """The unique node system with m_0 = … = m_n; also the minimax/maximin point."""
    return solve_difference(
        problem,
        (0.0,) * problem.n,
        tol,
        max_iterations=max_iterations,
        initial=initial,
        xtol=xtol,
    )


def sandwich_check(problem: Problem, x, M: float, slack: float = 1e-9) -> dict:
    """Verify m̲(x) ≤ M ≤ m̄(x) up to slack for a node system x in the open simplex."""
    ns = problem.node_system(x)
    if not ns.strict():
        raise PreconditionError("sandwich check expects a strict node system")
    maxima = interval_maxima(problem, ns)
    m_under = maxima.m_under
    lower_ok = True if is_neg_infinity(m_under) else float(m_under) <= M + slack
    upper_ok = M <= maxima.m_bar + slack
    return {"lower_ok": lower_ok, "upper_ok": upper_ok}
