import math

import pytest

import equiosc as eq
from equiosc.catalog import EXAMPLE_IDS, build_problem, closed_forms, run_reference_check


@pytest.mark.parametrize("key", EXAMPLE_IDS)
def test_reference_checks_pass(key):
    report = run_reference_check(key, fast=True)
    assert report.ok(1e-6), report.rows


def test_build_problem_flags():
    assert not build_problem("singularity_5_1").kernel.flags().singular
    assert not build_problem("monotonicity_5_2").kernel.flags().monotone_M
    strictness = build_problem("strictness_5_3").kernel.flags()
    assert strictness.monotone_M and not strictness.strictly_monotone_SM
    tent = build_problem("nonmonotone_5_4").kernel.flags()
    assert tent.singular and not tent.monotone_M and tent.strictly_concave


def test_closed_forms_strictness():
    forms = closed_forms("strictness_5_3")
    assert forms["equioscillation"] == pytest.approx(1.0 - 0.25 / math.e)
    assert forms["m0"](0.5) == 0.0
    assert forms["m1"](0.5) == 1.0
    assert forms["m1"](1.0 - 0.25 / math.e) == pytest.approx(0.0, abs=1e-15)


def test_closed_forms_tent_branch_equality():
    forms = closed_forms("nonmonotone_5_4")
    d0 = forms["delta0"]
    assert abs(forms["m_mid"](d0) - forms["m_side"](d0, 0.55)) <= 1e-12


def test_closed_forms_chebyshev():
    forms = closed_forms("classical_chebyshev", n=2)
    assert forms["nodes"][0] == pytest.approx(0.14644660940672624)
    assert forms["value"] == pytest.approx(math.log(0.125))


def test_unknown_key():
    with pytest.raises(eq.SchemaError):
        build_problem("nope")
    with pytest.raises(eq.SchemaError):
        run_reference_check("nope")


def test_strictness_parameter_validation():
    with pytest.raises(eq.SchemaError):
        build_problem("strictness_5_3", a=0.9)
    with pytest.raises(eq.SchemaError):
        build_problem("strictness_5_3", b=0.5)
