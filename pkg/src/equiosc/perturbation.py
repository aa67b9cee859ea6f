"""Numerical checkers for the perturbation and intertwining structure.

Three groups of tools live here:

* a sampler for the two-translate widening inequality
  p·K(t−α) + q·K(t−β) ≤ p·K(t−a) + q·K(t−b) in its five case regimes,
  driven by the chord-slope ratio μ = p(a−α) / (q(β−b));
* the constructive node move for a non-trivial partition of the interval
  indices into a shrinking class and a growing class, node ℓ moving by
  ±h/r_ℓ exactly when its two neighboring intervals carry different labels;
* coordinatewise comparison of interval-maxima vectors: for distinct regular
  node systems under a singular strictly monotone kernel neither vector can
  weakly dominate the other, so any genuine difference must produce witnesses
  in both directions ("intertwining").
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import PreconditionError, RegularityError
from .kernels import KernelSpec, scalar_fn
from .problem import NodeSystem, Problem
from .translates import _maxima_floats, in_regularity_set

__all__ = [
    "CaseReport",
    "IntertwiningVerdict",
    "PartitionSpec",
    "PerturbationReport",
    "check_interval_perturbation",
    "check_intertwining",
    "check_strict_majorization_excluded",
    "perturb_partition",
    "sample_regular_nodes",
]

_NEG_INF = float("-inf")
_TIE_TOL = 1e-9
_PASS_TOL = 1e-12


# -- interval perturbation inequality -----------------------------------------

@dataclass(frozen=True)
class CaseReport:
    applicable: bool
    passed: bool | None
    worst_violation: float
    worst_t: float | None


@dataclass(frozen=True)
class PerturbationReport:
    mu: float
    cases: dict


def _pair_values(kf, p, q, outer: tuple[float, float], inner: tuple[float, float], t: float):
    alpha, beta = outer
    a, b = inner
    lhs_1 = kf(t - alpha)
    lhs_2 = kf(t - beta)
    rhs_1 = kf(t - a)
    rhs_2 = kf(t - b)
    lhs = _NEG_INF if _NEG_INF in (lhs_1, lhs_2) else p * lhs_1 + q * lhs_2
    rhs = _NEG_INF if _NEG_INF in (rhs_1, rhs_2) else p * rhs_1 + q * rhs_2
    return lhs, rhs


def _sample_le(kf, p, q, outer, inner, ts, strict: bool):
    """Check lhs ≤ rhs (strictly, if asked) on the sample; return (ok, worst, where)."""
    worst = -math.inf
    worst_t = None
    ok = True
    for t in ts:
        lhs, rhs = _pair_values(kf, p, q, outer, inner, float(t))
        if lhs == _NEG_INF:
            continue  # −∞ ≤ anything, strictly below any finite value
        if rhs == _NEG_INF:
            violation = math.inf
        else:
            violation = lhs - rhs
        if violation > worst:
            worst, worst_t = violation, float(t)
        if strict:
            if violation >= 0.0:
                ok = False
        elif violation > _PASS_TOL:
            ok = False
    if worst == -math.inf:
        worst = 0.0  # lhs was −∞ throughout: inequality holds with slack everywhere
    return ok, worst, worst_t


def check_interval_perturbation(
    kernel: KernelSpec,
    alpha: float,
    a: float,
    b: float,
    beta: float,
    p: float,
    q: float,
    grid_points: int = 1000,
) -> PerturbationReport:
    """Sample the widening inequality for the pair move (a, b) → (α, β).

    Cases: (a) outside-left under monotonicity and μ ≥ 1; (b) outside-right
    under monotonicity and μ ≤ 1; (c) both sides when μ = 1, no monotonicity
    needed; (d) strictness under strict concavity; (e) the reversed inequality
    between a and b under monotonicity, strict under strict monotonicity.
    """
    if not (0.0 < alpha < a < b < beta < 1.0):
        raise PreconditionError("need 0 < α < a < b < β < 1")
    if p <= 0.0 or q <= 0.0:
        raise PreconditionError("weights p, q must be positive")
    flags = kernel.flags()
    kf = scalar_fn(kernel)
    mu = (p * (a - alpha)) / (q * (beta - b))
    outer = (alpha, beta)
    inner = (a, b)
    left = np.linspace(0.0, alpha, grid_points)
    right = np.linspace(beta, 1.0, grid_points)
    inside = np.linspace(a, b, grid_points)
    mu_is_one = abs(mu - 1.0) <= 1e-9

    cases: dict[str, CaseReport] = {}

    def report(key, applicable, ts, strict=False, reverse=False):
        if not applicable:
            cases[key] = CaseReport(False, None, 0.0, None)
            return
        if reverse:
            ok, worst, where = _sample_le(kf, p, q, inner, outer, ts, strict)
        else:
            ok, worst, where = _sample_le(kf, p, q, outer, inner, ts, strict)
        cases[key] = CaseReport(True, ok, worst, where)

    report("a", flags.monotone_M and mu >= 1.0 - 1e-12, left)
    report("b", flags.monotone_M and mu <= 1.0 + 1e-12, right)
    report("c", mu_is_one, np.concatenate([left, right]))
    strict_ranges = []
    if flags.monotone_M and mu >= 1.0 - 1e-12:
        strict_ranges.append(left)
    if flags.monotone_M and mu <= 1.0 + 1e-12:
        strict_ranges.append(right)
    if mu_is_one and not strict_ranges:
        strict_ranges = [left, right]
    report(
        "d",
        flags.strictly_concave and bool(strict_ranges),
        np.concatenate(strict_ranges) if strict_ranges else [],
        strict=True,
    )
    # case e: reversed inequality on [a, b]; swap lhs/rhs roles
    report("e", flags.monotone_M, inside, strict=flags.strictly_monotone_SM, reverse=True)
    return PerturbationReport(mu=mu, cases=cases)


# -- constructive partition move -----------------------------------------------

@dataclass(frozen=True)
class PartitionSpec:
    """Labels 'I' (shrink) or 'J' (grow) for the n+1 intervals, both present."""

    class_of: tuple[str, ...]

    def __post_init__(self):
        labels = tuple(str(v) for v in self.class_of)
        if any(v not in ("I", "J") for v in labels):
            raise PreconditionError("labels must be 'I' or 'J'")
        if "I" not in labels or "J" not in labels:
            raise PreconditionError("partition must be non-trivial (both classes present)")
        object.__setattr__(self, "class_of", labels)

    @property
    def shrink(self) -> tuple[int, ...]:
        return tuple(i for i, v in enumerate(self.class_of) if v == "I")

    @property
    def grow(self) -> tuple[int, ...]:
        return tuple(i for i, v in enumerate(self.class_of) if v == "J")


def perturb_partition(problem: Problem, w, partition: PartitionSpec, h: float) -> NodeSystem:
    """Move nodes by ±h/r_ℓ so intervals labelled 'I' shrink and 'J' grow.

    Node ℓ sits between intervals ℓ−1 and ℓ: it moves right when the left
    neighbour grows and the right one shrinks, left in the mirrored case, and
    stays put when both neighbours share a label. The produced inclusions
    I_i(w') ⊆ I_i(w) for the shrink class and ⊇ for the grow class are exact.
    """
    ns = problem.node_system(w)
    if len(partition.class_of) != problem.n + 1:
        raise PreconditionError(f"partition must label {problem.n + 1} intervals")
    if not ns.strict():
        raise PreconditionError("node system must be strictly inside the simplex")
    if not (h > 0.0 and math.isfinite(h)):
        raise PreconditionError("step h must be a positive real")
    labels = partition.class_of
    moved = list(ns.nodes)
    for ell in range(1, problem.n + 1):
        left, right = labels[ell - 1], labels[ell]
        if left == right:
            continue
        delta = h / problem.r[ell - 1]
        moved[ell - 1] += delta if (left, right) == ("J", "I") else -delta
    ys = (0.0, *moved, 1.0)
    if any(b <= a for a, b in zip(ys, ys[1:])):
        raise PreconditionError("step h too large: ordering would break")
    return NodeSystem(tuple(moved))


# -- intertwining / majorization ------------------------------------------------

@dataclass(frozen=True)
class IntertwiningVerdict:
    kind: str  # "equal" | "witness" | "majorization_violation"
    below: int | None = None  # index where m(x) < m(y) − τ
    above: int | None = None  # index where m(x) > m(y) + τ
    direction: str | None = None  # for violations: which vector dominates

    @property
    def is_witness(self) -> bool:
        return self.kind == "witness"


def _regular_maxima(problem: Problem, ns: NodeSystem, xtol: float):
    if not in_regularity_set(problem, ns):
        raise RegularityError("node system outside the regularity set")
    vals, _ = _maxima_floats(problem, ns.with_sentinels(), xtol)
    if any(v == _NEG_INF for v in vals):
        raise RegularityError("interval maximum −∞ despite regularity check")
    return vals


def check_intertwining(
    problem: Problem, x, y, tau: float = _TIE_TOL, xtol: float = 1e-12
) -> IntertwiningVerdict:
    """Compare the interval-maxima vectors of two regular node systems."""
    nx = problem.node_system(x)
    ny = problem.node_system(y)
    if max(abs(a - b) for a, b in zip(nx.nodes, ny.nodes)) <= 1e-12:
        return IntertwiningVerdict("equal")
    mx = _regular_maxima(problem, nx, xtol)
    my = _regular_maxima(problem, ny, xtol)
    diffs = [a - b for a, b in zip(mx, my)]
    below = next((i for i, d in enumerate(diffs) if d < -tau), None)
    above = next((i for i, d in enumerate(diffs) if d > tau), None)
    if below is not None and above is not None:
        return IntertwiningVerdict("witness", below=below, above=above)
    if below is None and above is None:
        return IntertwiningVerdict("equal")
    direction = "x_dominates_y" if above is not None else "y_dominates_x"
    return IntertwiningVerdict(
        "majorization_violation", below=below, above=above, direction=direction
    )


def sample_regular_nodes(
    problem: Problem, rng: np.random.Generator, min_gap: float = 1e-3, max_tries: int = 1000
) -> NodeSystem:
    """A random node system in the regularity set with a minimum node gap."""
    n = problem.n
    for _ in range(max_tries):
        draw = np.sort(rng.uniform(min_gap, 1.0 - min_gap, size=n))
        if n > 1 and np.min(np.diff(draw)) < min_gap:
            continue
        ns = NodeSystem(tuple(float(v) for v in draw))
        if in_regularity_set(problem, ns):
            return ns
    raise RegularityError("could not sample a regular node system")


@dataclass(frozen=True)
class MajorizationScanReport:
    checked: int
    strict_violations: int
    weak_dominations: int
    hypotheses_met: bool
    examples: tuple[tuple[tuple[float, ...], tuple[float, ...]], ...]


def check_strict_majorization_excluded(
    problem: Problem,
    samples: int = 500,
    *,
    seed: int = 0,
    tau: float = _TIE_TOL,
    pairs=None,
    xtol: float = 1e-12,
) -> MajorizationScanReport:
    """Scan node-system pairs for strict coordinatewise domination of the maxima.

    Under a singular monotone kernel strict domination can never occur; the
    scan reports how many pairs were checked, any strict violations found,
    and one-sided weak dominations (ties allowed) separately. Pairs may be
    supplied explicitly, e.g. to validate the checker on kernels outside the
    hypotheses, where strict domination genuinely happens.
    """
    flags = problem.kernel.flags()
    hypotheses = flags.singular and flags.monotone_M
    rng = np.random.default_rng(seed)
    if pairs is None:
        pairs = [
            (sample_regular_nodes(problem, rng), sample_regular_nodes(problem, rng))
            for _ in range(samples)
        ]
    strict = 0
    weak = 0
    examples = []
    checked = 0
    for x, y in pairs:
        nx = problem.node_system(x)
        ny = problem.node_system(y)
        try:
            mx = _regular_maxima(problem, nx, xtol)
            my = _regular_maxima(problem, ny, xtol)
        except RegularityError:
            continue
        checked += 1
        diffs = [a - b for a, b in zip(mx, my)]
        for d in (diffs, [-v for v in diffs]):
            if all(v > tau for v in d):
                strict += 1
                if len(examples) < 8:
                    examples.append((nx.nodes, ny.nodes))
                break
            if all(v >= -tau for v in d) and any(v > tau for v in d):
                weak += 1
                break
    return MajorizationScanReport(
        checked=checked,
        strict_violations=strict,
        weak_dominations=weak,
        hypotheses_met=hypotheses,
        examples=tuple(examples),
    )
