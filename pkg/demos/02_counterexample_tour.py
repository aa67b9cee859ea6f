"""Why the solver's hypotheses matter: a tour of the built-in stress cases.

Each built-in reference instance drops exactly one hypothesis (singularity,
monotonicity, strict monotonicity, ...) and shows which conclusion breaks:
extrema migrate to the simplex boundary, equioscillation fails, or uniqueness
of the maximin point is lost. The checks recompute everything numerically and
compare against the instances' closed forms.
"""

from equiosc.catalog import EXAMPLE_IDS, run_reference_check

for key in EXAMPLE_IDS:
    report = run_reference_check(key, fast=True)
    status = "ok" if report.ok(1e-6) else "DEVIATES"
    print(f"\n=== {key} [{status}, max dev {report.max_deviation:.2e}, {report.elapsed:.1f}s]")
    for label, computed, reference in report.rows:
        print(f"  {label:45s} computed {computed:+.9g}   reference {reference:+.9g}")
    for note in report.notes:
        print(f"  note: {note}")
