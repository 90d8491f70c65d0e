import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from zharm.lattice import FiniteSequence, IntegerInterval
from zharm.operators import (
    OperatorKind,
    calpha_constant,
    maximal_centered,
    maximal_centered_witness,
    maximal_noncentral,
    maximal_oracle,
    noncentral_oracle,
    operator_profile,
    pointwise_bound_check,
    pointwise_bound_general,
    riesz,
    riesz_oracle,
    riesz_profile,
    maximal_profile,
    noncentral_profile,
    n_cover,
)

DELTA = FiniteSequence.delta(0)
ZERO = FiniteSequence.zero()


# small dyadic values make every window sum exact, so symmetry assertions
# can demand bitwise equality
dyadic_seqs = st.builds(
    FiniteSequence,
    st.integers(-20, 20),
    st.lists(st.integers(-64, 64).map(lambda n: n / 8.0), min_size=1, max_size=24),
)
alphas = st.floats(0.0, 0.96875, allow_nan=False)


def test_maximal_centered_examples():
    assert maximal_centered(DELTA, 0.5, 0) == 1.0
    # brute force over N <= N_cover picks the same value
    assert maximal_centered(DELTA, 0.5, 1) == pytest.approx(3.0**-0.5, abs=1e-15)
    assert maximal_oracle(DELTA, 0.5, 1, 50) == pytest.approx(3.0**-0.5, abs=1e-15)
    assert maximal_centered(ZERO, 0.3, 5) == 0.0


def test_maximal_witness_smallest_radius():
    value, N = maximal_centered_witness(DELTA, 0.5, 1)
    assert value == pytest.approx(3.0**-0.5) and N == 1
    # all-ones sequence ties at every covering radius under alpha = 0
    x = FiniteSequence(0, np.ones(9))
    value, N = maximal_centered_witness(x, 0.0, 4)
    assert value == 1.0 and N == 0


def test_maximal_noncentral_examples():
    got = maximal_noncentral(DELTA, 0.5, 1)
    assert got == pytest.approx(2.0**-0.5, abs=1e-15)
    assert got > maximal_centered(DELTA, 0.5, 1)
    assert noncentral_oracle(DELTA, 0.5, 1) == got
    assert maximal_noncentral(DELTA, 0.0, 0) == 1.0
    assert maximal_noncentral(ZERO, 0.5, 2) == 0.0


def test_riesz_examples():
    assert riesz(DELTA, 0.5, 4) == 0.5  # 4**(-1/2)
    assert riesz(DELTA, 0.5, 0) == 0.0  # diagonal excluded
    x = FiniteSequence.indicator(1, 2)
    assert riesz(x, 0.5, 0) == pytest.approx(1.0 + 2.0**-0.5, abs=1e-15)
    with pytest.raises(ValueError):
        riesz(DELTA, 0.0, 1)
    with pytest.raises(ValueError):
        riesz(DELTA, 1.0, 1)


def test_alpha_domain():
    with pytest.raises(ValueError):
        maximal_centered(DELTA, -0.1, 0)
    with pytest.raises(ValueError):
        maximal_centered(DELTA, 1.0, 0)
    assert maximal_centered(DELTA, 0.0, 3) == pytest.approx(1.0 / 7.0)


def test_operator_profile_examples():
    prof = operator_profile(DELTA, 0.5, IntegerInterval(-1, 1), OperatorKind.RIESZ)
    assert prof.values.tolist() == [1.0, 0.0, 1.0]
    prof = operator_profile(DELTA, 0.5, IntegerInterval(0, 1), OperatorKind.CENTERED_MAXIMAL)
    assert prof.values == pytest.approx([1.0, 3.0**-0.5])
    prof = operator_profile(ZERO, 0.5, IntegerInterval(0, 3), OperatorKind.NONCENTRAL_MAXIMAL)
    assert prof.values.tolist() == [0.0, 0.0, 0.0, 0.0]
    assert prof.at(2) == 0.0
    with pytest.raises(KeyError):
        prof.at(9)


def test_maximal_oracle_precondition():
    with pytest.raises(ValueError):
        maximal_oracle(DELTA, 0.5, 10, n_cover(DELTA, 10) - 1)
    assert maximal_oracle(DELTA, 0.0, 0, 10) == 1.0


def test_oracle_agreement_random():
    rng = np.random.default_rng(42)
    for _ in range(200):
        length = int(rng.integers(1, 24))
        off = int(rng.integers(-20, 20))
        x = FiniteSequence(off, rng.uniform(-4, 4, size=length))
        alpha = float(rng.uniform(0, 1))
        m = int(rng.integers(off - 10, off + length + 10))
        exact = maximal_centered(x, alpha, m)
        naive = maximal_oracle(x, alpha, m, 2 * n_cover(x, m))
        assert exact == pytest.approx(naive, rel=1e-12)
        assert maximal_noncentral(x, alpha, m) == pytest.approx(
            noncentral_oracle(x, alpha, m), rel=1e-12
        )
        if 0 < alpha < 1:
            assert riesz(x, alpha, m) == pytest.approx(
                riesz_oracle(x, alpha, m), rel=1e-12, abs=1e-15
            )


def test_calpha_examples():
    got = calpha_constant(0.5, 0.25)
    near = 12.0 ** (1 - 0.5 + 0.25) / (2.0**0.25 - 1.0)
    far = 12.0 ** (1 - 0.5 - 0.25) / (1.0 - 2.0**-0.25)
    assert got == max(near, far) == pytest.approx(34.0759891, abs=1e-6)
    assert near == pytest.approx(34.076, abs=1e-3)
    assert far == pytest.approx(11.698, abs=1e-3)
    with pytest.raises(ValueError):
        calpha_constant(0.5, 0.6)
    with pytest.raises(ValueError):
        calpha_constant(0.5, 0.0)


def test_pointwise_bound_example():
    rep = pointwise_bound_check(DELTA, 0.5, 0.25, 4)
    assert rep.lhs == 0.5
    assert rep.rhs == pytest.approx(calpha_constant(0.5, 0.25) / 3.0, rel=1e-12)
    assert rep.holds
    rep = pointwise_bound_check(ZERO, 0.5, 0.25, 4)
    assert rep.lhs == rep.rhs == 0.0 and rep.holds


def test_pointwise_bound_property():
    rng = np.random.default_rng(3)
    for _ in range(500):
        length = int(rng.integers(1, 16))
        x = FiniteSequence(int(rng.integers(-8, 8)), rng.uniform(0, 8, size=length))
        alpha = float(rng.uniform(0.1, 0.9))
        eps = float(rng.uniform(0.05, 0.95)) * min(alpha, 1 - alpha)
        k = int(rng.integers(-20, 20))
        assert pointwise_bound_check(x, alpha, eps, k).holds


def test_pointwise_bound_general():
    rep = pointwise_bound_general(DELTA, 0.5, 0.25, 0.75, 0)
    assert rep.lhs == 0.0 and rep.bracket >= 0.0
    # hand arithmetic: bracket at k=4 is (9**-(3/4))**(1/2) * (9**-(1/4))**(1/2) = 1/3
    rep = pointwise_bound_general(DELTA, 0.5, 0.25, 0.75, 4)
    assert rep.bracket == pytest.approx(1.0 / 3.0, rel=1e-12)
    # symmetric exponents reproduce the geometric-mean bracket
    x = FiniteSequence(-2, [1.0, 3.0, 0.5, 2.0])
    alpha, eps = 0.4, 0.2
    rep = pointwise_bound_general(x, alpha, alpha - eps, alpha + eps, 7)
    gm = math.sqrt(
        maximal_centered(x, alpha - eps, 7) * maximal_centered(x, alpha + eps, 7)
    )
    assert rep.bracket == pytest.approx(gm, rel=1e-12)
    with pytest.raises(ValueError):
        pointwise_bound_general(DELTA, 0.5, 0.5, 0.75, 0)


@settings(max_examples=60, deadline=None)
@given(dyadic_seqs, alphas)
def test_centered_vs_noncentral_comparison(x, alpha):
    hull = x.support_hull()
    if hull is None:
        return
    for m in range(hull.lo - 3, hull.hi + 4):
        cen = maximal_centered(x, alpha, m)
        non = maximal_noncentral(x, alpha, m)
        assert cen <= non * (1 + 1e-12)
        assert non <= 2.0 ** (1 - alpha) * cen * (1 + 1e-12)


@settings(max_examples=60, deadline=None)
@given(dyadic_seqs, st.integers(-15, 15))
def test_translation_equivariance_exact(x, s):
    window = IntegerInterval(-40, 40)
    shifted_window = IntegerInterval(-40 + s, 40 + s)
    y = x.shifted(s)
    for fn, lo_alpha in ((maximal_profile, 0.0), (noncentral_profile, 0.0), (riesz_profile, 0.5)):
        a = fn(x, max(lo_alpha, 0.5), window.indices())
        b = fn(y, max(lo_alpha, 0.5), shifted_window.indices())
        assert a.tolist() == b.tolist()


@settings(max_examples=60, deadline=None)
@given(dyadic_seqs)
def test_reflection_symmetry_exact(x):
    window = np.arange(-40, 41)
    y = x.reflected()
    for fn, alpha in ((maximal_profile, 0.25), (noncentral_profile, 0.25), (riesz_profile, 0.5)):
        a = fn(x, alpha, window)
        b = fn(y, alpha, window)
        assert a.tolist() == b[::-1].tolist()


@settings(max_examples=60, deadline=None)
@given(dyadic_seqs, dyadic_seqs, st.floats(0.05, 0.95), st.integers(-30, 30))
def test_riesz_linearity(x, y, alpha, k):
    a, b = 1.5, -2.25
    lhs = riesz(x.scaled(a) + y.scaled(b), alpha, k)
    rhs = a * riesz(x, alpha, k) + b * riesz(y, alpha, k)
    assert lhs == pytest.approx(rhs, rel=1e-10, abs=1e-12)


def test_maximal_nonnegative_and_zero_iff_zero():
    rng = np.random.default_rng(11)
    for _ in range(50):
        x = FiniteSequence(int(rng.integers(-5, 5)), rng.uniform(0, 3, size=int(rng.integers(1, 9))))
        m = int(rng.integers(-10, 10))
        v = maximal_centered(x, 0.5, m)
        assert v >= 0.0
        assert (v == 0.0) == x.is_zero()
