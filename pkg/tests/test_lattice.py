import math

import numpy as np
import pytest

from zharm.lattice import (
    Constant,
    Exponents,
    FiniteSequence,
    IntegerInterval,
    Power,
    ShiftedPower,
    SymmetricInterval,
    Tabulated,
    conjugate_exponent,
    csum,
    dilate,
    weight_eval,
    weight_sum,
)


def test_weight_eval_examples():
    assert weight_eval(Constant(1.0), 7) == 1.0
    assert weight_eval(Power(-0.5), 3) == 4.0**-0.5 == 0.5
    # constant extension by the nearer boundary value
    tab = Tabulated(IntegerInterval(0, 2), [2.0, 3.0, 5.0])
    assert weight_eval(tab, 9) == 5.0
    assert weight_eval(tab, -4) == 2.0
    assert weight_eval(tab, 1) == 3.0


def test_weight_sum_examples():
    assert weight_sum(Constant(1.0), IntegerInterval(-2, 2), 1.0) == 5.0
    assert weight_sum(Power(1.0), IntegerInterval(0, 2), 1.0) == 6.0
    # hand sum of (1+|k|)^{-1} over {-1,0,1}
    assert weight_sum(Power(-0.5), IntegerInterval(-1, 1), 2.0) == pytest.approx(2.0, rel=1e-15)


def test_weight_sum_matches_naive_loop():
    weights = [
        Constant(2.5),
        Power(-0.7),
        Power(0.3),
        ShiftedPower(-0.4, 11),
        Tabulated(IntegerInterval(-3, 4), [0.5, 1, 2, 4, 8, 1, 0.25, 3]),
    ]
    intervals = [IntegerInterval(-9, -1), IntegerInterval(-5, 12), IntegerInterval(3, 40)]
    exponents = [1.0, 2.0, -1.5, 0.5, -3.0]
    for w in weights:
        for J in intervals:
            for e in exponents:
                naive = math.fsum(w.eval_one(k) ** e for k in range(J.lo, J.hi + 1))
                assert weight_sum(w, J, e) == pytest.approx(naive, rel=1e-10)


def test_weight_sum_overflow_reported():
    with pytest.raises(OverflowError):
        weight_sum(Constant(1e300), IntegerInterval(0, 10), 2.0)


def test_weight_positivity_scan():
    weights = [
        Constant(0.1),
        Power(-0.9),
        Power(0.9),
        ShiftedPower(-0.5, 123),
        Tabulated(IntegerInterval(-2, 2), [3, 2, 1, 2, 3]),
    ]
    for w in weights:
        for lo in range(-1_000_000, 1_000_001, 250_000):
            ks = np.arange(lo, min(lo + 250_000, 1_000_001))
            vals = w.eval_many(ks)
            assert np.all(vals > 0), w.describe()


def test_dilate_examples():
    s = dilate(SymmetricInterval(2, 4), 3)
    assert (s.m, s.N) == (2, 12) and s.cardinality == 25
    s = dilate(SymmetricInterval(0, 0), 5)
    assert (s.m, s.N) == (0, 0)
    s = dilate(SymmetricInterval(-1, 2), 2)
    assert (s.m, s.N) == (-1, 4)
    with pytest.raises(ValueError):
        dilate(SymmetricInterval(0, 1), 0)


def test_dilate_cardinality_formula():
    for lam in range(1, 8):
        for N in range(0, 12):
            assert dilate(SymmetricInterval(3, N), lam).cardinality == 2 * lam * N + 1


def test_symmetric_interval_membership():
    s = SymmetricInterval(5, 3)
    assert all((k in s) == (abs(k - 5) <= 3) for k in range(-5, 15))
    assert s.cardinality == 7


def test_integer_interval_invariants():
    J = IntegerInterval(-3, 5)
    assert J.cardinality == 9
    with pytest.raises(ValueError):
        IntegerInterval(2, 1)


def test_finite_sequence_storage():
    x = FiniteSequence(-2, [0.0, 1.0, 0.0, 2.0])
    assert x.at(-1) == 1.0 and x.at(1) == 2.0
    assert x.at(-3) == 0.0 and x.at(2) == 0.0  # outside stored window
    hull = x.support_hull()
    assert (hull.lo, hull.hi) == (-1, 1)
    assert x.support().tolist() == [-1, 1]
    z = FiniteSequence.zero()
    assert z.is_zero() and z.support_hull() is None and z.l1() == 0.0


def test_finite_sequence_immutable():
    x = FiniteSequence.delta(0)
    with pytest.raises(AttributeError):
        x.offset = 3
    with pytest.raises(ValueError):
        x.values[0] = 2.0


def test_conjugate_exponents():
    assert conjugate_exponent(1.0) == math.inf
    assert conjugate_exponent(math.inf) == 1.0
    assert conjugate_exponent(2.0) == 2.0
    p = 1.7
    pp = conjugate_exponent(p)
    assert abs(1.0 / p + 1.0 / pp - 1.0) <= 1e-12


def test_exponents_sobolev():
    e = Exponents.sobolev(0.25, 2.0)
    assert e.q == pytest.approx(4.0, abs=1e-12)
    e.check_sobolev()
    with pytest.raises(ValueError):
        Exponents.sobolev(0.5, 3.0)  # p >= 1/alpha
    bad = Exponents(0.25, 2.0, 4.1)
    with pytest.raises(ValueError):
        bad.check_sobolev()


def test_csum_compensation():
    # adversarial cancellation: fsum handles what naive accumulation loses
    vals = np.array([1e16, 1.0, -1e16, 1.0])
    assert csum(vals) == 2.0
