"""Equioscillation on [0, 1]: the minimal monic node product.

For the log kernel with zero external field, F(y, t) = sum_j log|t - y_j| is
the log of |prod (t - y_j)|. The solver finds the unique node system whose
n+1 interval maxima are all equal; that node system simultaneously minimizes
the largest interval maximum and maximizes the smallest one.
"""

import math

import equiosc as eq

n = 4
problem = eq.Problem(n, (1.0,) * n, eq.Log(), eq.constant_field(0.0))

report = eq.solve_equioscillation(problem)
print(f"equioscillation nodes (n={n}):")
for j, node in enumerate(report.nodes.nodes, start=1):
    analytic = 0.5 * (1.0 + math.cos((2 * (n - j + 1) - 1) * math.pi / (2 * n)))
    print(f"  w_{j} = {node:.12f}   (analytic {analytic:.12f})")
print(f"common interval maximum: {report.value:.12f}")
print(f"analytic value log(2*4^-n): {math.log(2.0 * 4.0 ** (-n)):.12f}")
print(f"residual {report.residual:.2e} after {report.iterations} iterations")

# every other node system is "sandwiched": its smallest interval maximum sits
# below the equioscillation value and its largest sits above
for x in ((0.1, 0.3, 0.5, 0.7), (0.2, 0.4, 0.6, 0.9)):
    maxima = eq.interval_maxima(problem, x)
    print(
        f"x = {x}: m_under = {float(maxima.m_under):+.6f} "
        f"<= {report.value:+.6f} <= m_bar = {maxima.m_bar:+.6f}   "
        f"{eq.sandwich_check(problem, x, report.value)}"
    )
