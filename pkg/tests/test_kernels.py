import math

import numpy as np
import pytest

import equiosc as eq
from equiosc.extreal import NEG_INFINITY, is_neg_infinity
from equiosc.kernels import scalar_fn

ALL_KERNELS = [
    eq.Log(),
    eq.CappedLog(0.25),
    eq.SqrtShift(),
    eq.TentLog(),
    eq.CappedLogPlusQuadratic(0.1),
    eq.Regularized(eq.CappedLog(0.25), 0.5),
    eq.Regularized(eq.Log(), 0.1),
]


def test_eval_examples():
    assert eq.kernel_eval(eq.Log(), 1.0) == 0.0
    assert eq.kernel_eval(eq.CappedLog(0.25), 0.25) == 0.0
    assert eq.kernel_eval(eq.TentLog(), 0.1) == 0.0
    assert is_neg_infinity(eq.kernel_eval(eq.Log(), 0.0))


def test_eval_limit_values_at_endpoints():
    assert eq.kernel_eval(eq.Log(), -1.0) == 0.0
    assert eq.kernel_eval(eq.SqrtShift(), 1.0) == pytest.approx(math.sqrt(5.0))
    assert is_neg_infinity(eq.kernel_eval(eq.TentLog(), 1.0))
    assert eq.kernel_eval(eq.CappedLogPlusQuadratic(0.1), 1.0) == pytest.approx(-1.0)


def test_domain_error():
    with pytest.raises(eq.DomainError):
        eq.kernel_eval(eq.Log(), 1.0000001)
    with pytest.raises(eq.DomainError):
        eq.kernel_values(eq.Log(), np.array([0.5, -1.5]))


@pytest.mark.parametrize(
    "kernel, singular, monotone, strictly_monotone, strictly_concave",
    [
        (eq.Log(), True, True, True, True),
        (eq.CappedLog(0.25), True, True, False, False),
        (eq.SqrtShift(), False, True, True, True),
        (eq.TentLog(), True, False, False, True),
        (eq.CappedLogPlusQuadratic(0.1), True, False, False, True),
        (eq.Regularized(eq.CappedLog(0.25), 0.5), True, True, True, True),
        (eq.Regularized(eq.TentLog(), 0.5), True, False, False, True),
    ],
)
def test_classify(kernel, singular, monotone, strictly_monotone, strictly_concave):
    flags = eq.kernel_classify(kernel)
    assert flags.singular == singular
    assert flags.monotone_M == monotone
    assert flags.strictly_monotone_SM == strictly_monotone
    assert flags.strictly_concave == strictly_concave
    if flags.strictly_monotone_SM:
        assert flags.monotone_M


@pytest.mark.parametrize("kernel", ALL_KERNELS, ids=lambda k: k.variant + str(k.params()))
def test_concavity_on_both_halves(kernel, rng):
    k = scalar_fn(kernel)
    for lo, hi in ((-1.0, 0.0), (0.0, 1.0)):
        for _ in range(1000):
            t1, t2, t3 = np.sort(rng.uniform(lo + 1e-9, hi - 1e-9, size=3))
            if t3 - t1 < 1e-12:
                continue
            lam = (t3 - t2) / (t3 - t1)
            v1, v2, v3 = k(float(t1)), k(float(t2)), k(float(t3))
            if -math.inf in (v1, v3):
                continue
            assert v2 >= lam * v1 + (1 - lam) * v3 - 1e-12


def test_matching_limits_at_zero():
    for kernel in ALL_KERNELS:
        k = scalar_fn(kernel)
        left = k(-1e-12)
        right = k(1e-12)
        if left == -math.inf or right == -math.inf:
            assert left == right == -math.inf or abs(left - right) < 1e-6
        else:
            assert left == pytest.approx(right, abs=1e-9)


def test_regularized_is_exact_shift(rng):
    base = eq.CappedLog(0.3)
    eta = 0.37
    reg = eq.Regularized(base, eta)
    kb, kr = scalar_fn(base), scalar_fn(reg)
    for t in rng.uniform(-1.0, 1.0, size=100):
        t = float(t)
        vb = kb(t)
        vr = kr(t)
        if vb == -math.inf:
            assert vr == -math.inf
        else:
            assert abs(vr - (vb + eta * math.sqrt(abs(t)))) <= 1e-15


def test_vectorized_matches_scalar(rng):
    ts = rng.uniform(-1.0, 1.0, size=64)
    for kernel in ALL_KERNELS:
        k = scalar_fn(kernel)
        vec = eq.kernel_values(kernel, ts)
        for t, v in zip(ts, vec):
            assert v == pytest.approx(k(float(t)), abs=1e-14) or (
                v == -math.inf and k(float(t)) == -math.inf
            )


def test_json_roundtrip():
    from equiosc.kernels import kernel_from_json, kernel_to_json

    for kernel in ALL_KERNELS:
        assert kernel_from_json(kernel_to_json(kernel)) == kernel
    with pytest.raises(eq.SchemaError):
        kernel_from_json({"variant": "Cubic", "params": {}})


def test_invalid_params():
    with pytest.raises(eq.SchemaError):
        eq.CappedLog(1.5)
    with pytest.raises(eq.SchemaError):
        eq.Regularized(eq.Log(), -1.0)
