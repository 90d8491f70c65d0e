import math

import numpy as np
import pytest

from zharm.lattice import (
    Constant,
    IntegerInterval,
    Power,
    SymmetricInterval,
    Tabulated,
)
from zharm.weights import (
    BracketSpec,
    ScanRange,
    ap_bracket,
    apq_bracket,
    duality_identity_check,
    exponent_segment,
    reverse_holder_exponent,
    rh_bracket,
    scan_constant,
)


def test_ap_bracket_examples():
    S = SymmetricInterval(0, 1)
    for p in (1.0, 1.5, 2.0, 7.0):
        assert ap_bracket(Constant(3.7), p, S) == pytest.approx(1.0, rel=1e-14)
    # hand arithmetic over {-1, 0, 1}
    expect = ((1 + 2 * 2**-0.5) / 3) / 2**-0.5
    assert ap_bracket(Power(-0.5), 1.0, S) == pytest.approx(expect, rel=1e-12)
    assert ap_bracket(Power(-0.5), 1.0, S) == pytest.approx(1.1380712, abs=1e-7)
    tab = Tabulated(IntegerInterval(0, 1), [1.0, 2.0])
    assert ap_bracket(tab, 2.0, SymmetricInterval(0, 0)) == pytest.approx(1.0, rel=1e-14)


def test_apq_bracket_examples():
    S = SymmetricInterval(0, 1)
    assert apq_bracket(Constant(2.0), 2.0, 4.0, S) == pytest.approx(1.0, rel=1e-14)
    assert apq_bracket(Constant(2.0), 1.0, 4.0, S) == pytest.approx(1.0, rel=1e-14)
    assert apq_bracket(Constant(2.0), 2.0, math.inf, S) == pytest.approx(1.0, rel=1e-14)
    # hand arithmetic: sup of 1/w attained at k = +-1
    expect = (2.0 / 3.0) ** 0.5 * 2.0**0.5
    assert apq_bracket(Power(-0.5), 1.0, 2.0, S) == pytest.approx(expect, rel=1e-12)
    assert apq_bracket(Power(-0.5), 1.0, 2.0, S) == pytest.approx(1.1547005, abs=1e-7)
    with pytest.raises(ValueError):
        apq_bracket(Power(-0.5), 1.0, math.inf, S)


def test_rh_bracket_examples():
    S = SymmetricInterval(0, 1)
    assert rh_bracket(Constant(0.3), 2.0, S) == pytest.approx(1.0, rel=1e-14)
    assert rh_bracket(Power(2.0), 3.0, SymmetricInterval(5, 0)) == pytest.approx(1.0, rel=1e-14)
    expect = 3.0**0.5 / (5.0 / 3.0)
    assert rh_bracket(Power(1.0), 2.0, S) == pytest.approx(expect, rel=1e-12)
    assert rh_bracket(Power(1.0), 2.0, S) == pytest.approx(1.0392305, abs=1e-7)


def test_scan_constant_trivial_and_witness():
    est = scan_constant(BracketSpec("ap", p=1.0), Constant(1.0), ScanRange(IntegerInterval(-5, 5), 20))
    assert est.value == pytest.approx(1.0, rel=1e-14)
    # deterministic tie-break: smallest center, then smallest radius
    assert est.witness == (-5, 0)
    # witness reproduces the scanned value
    w = Power(-0.5)
    est = scan_constant(BracketSpec("ap", p=1.0), w, ScanRange(IntegerInterval(-30, 30), 100))
    m, N = est.witness
    assert ap_bracket(w, 1.0, SymmetricInterval(m, N)) == pytest.approx(est.value, rel=1e-12)


def test_scan_saturation_vs_divergence():
    scan = ScanRange(IntegerInterval(-50, 50), 1000)
    sat = scan_constant(BracketSpec("ap", p=1.0), Power(-0.5), scan)
    assert sat.saturated()
    div = scan_constant(BracketSpec("ap", p=1.0), Power(0.5), scan)
    assert not div.saturated()
    # divergent trend grows monotonically and substantially
    assert div.trend[-1] > 2.0 * div.trend[-3]


def test_scan_monotone_under_enlargement():
    w = Power(-0.3)
    prev = -math.inf
    for n_max in (10, 100, 1000):
        est = scan_constant(BracketSpec("ap", p=2.0), w, ScanRange(IntegerInterval(-20, 20), n_max))
        assert est.value >= prev
        prev = est.value
    wider = scan_constant(BracketSpec("ap", p=2.0), w, ScanRange(IntegerInterval(-40, 40), 1000))
    assert wider.value >= prev


def test_duality_identity_examples():
    rep = duality_identity_check(Constant(2.0), 2.0, 4.0, SymmetricInterval(1, 3))
    assert rep.lhs_q == pytest.approx(1.0, rel=1e-14)
    assert rep.relerr <= 1e-14
    rep = duality_identity_check(Power(-0.2), 2.0, 2.0, SymmetricInterval(0, 2))
    assert rep.relerr <= 1e-9
    rng = np.random.default_rng(5)
    for _ in range(200):
        w = Tabulated(IntegerInterval(-8, 8), rng.uniform(0.5, 2.0, size=17))
        p = float(rng.uniform(1.1, 6.0))
        q = float(rng.uniform(1.1, 6.0))
        S = SymmetricInterval(int(rng.integers(-5, 5)), int(rng.integers(0, 8)))
        assert duality_identity_check(w, p, q, S).relerr <= 1e-9


def test_reverse_holder_exponent():
    scan = ScanRange(IntegerInterval(-32, 32), 512)
    # constants satisfy every reverse-Hoelder bracket with constant 1
    assert reverse_holder_exponent(Constant(2.0), scan) == pytest.approx(4.0)
    r = reverse_holder_exponent(Power(-0.5), scan)
    assert 1.0 < r <= 4.0
    # the integrability ceiling for (1+|k|)^-0.5 is r = 2; the certified
    # exponent must respect it
    assert r < 2.2


def test_exponent_segment_endpoints():
    alpha = 0.5
    w = Power(-0.3)
    scan = ScanRange(IntegerInterval(-20, 20), 256)
    pts = exponent_segment(w, "from_1q0", alpha, [1.0, 0.0, 0.5], scan)
    q0 = 1.0 / (1.0 - alpha)
    # t = 1 lands exactly on the endpoint class
    assert pts[0].p == pytest.approx(1.0, abs=1e-12)
    assert pts[0].q == pytest.approx(q0, abs=1e-12)
    direct = scan_constant(BracketSpec("apq", p=1.0, q=q0), w, scan)
    assert pts[0].estimate.value == pytest.approx(direct.value, rel=1e-12)
    # every point satisfies the scaling relation 1/q = 1/p - alpha
    for pt in pts:
        assert abs(1.0 / pt.q - (1.0 / pt.p - alpha)) <= 1e-12
        assert math.isfinite(pt.estimate.value)
    # interior constants saturate for this weight
    assert pts[2].estimate.saturated()


def test_exponent_segment_osc_endpoint():
    alpha = 0.5
    w = Power(0.2)
    scan = ScanRange(IntegerInterval(-20, 20), 256)
    pts = exponent_segment(w, "from_p0inf", alpha, [1.0, 0.0], scan)
    assert pts[0].p == pytest.approx(1.0 / alpha, abs=1e-12)
    assert math.isinf(pts[0].q)
    assert math.isfinite(pts[0].estimate.value)
    assert abs(1.0 / pts[1].q - (1.0 / pts[1].p - alpha)) <= 1e-12
    with pytest.raises(ValueError):
        exponent_segment(w, "sideways", alpha, [0.5], scan)
