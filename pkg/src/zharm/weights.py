"""Muckenhoupt-type weight brackets and scanned class constants.

The weight classes are defined through suprema of per-interval brackets
over every center and radius.  A finite artifact cannot take that
supremum, so a scan over a center/radius grid reports a certified lower
bound together with its trend at geometrically growing radii; "membership"
is operationalized as trend saturation (last two partial maxima within 1%
relative).  Witnesses are deterministic: ties are broken by smallest
center, then smallest radius.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .lattice import (
    IntegerInterval,
    SymmetricInterval,
    Weight,
    conjugate_exponent,
    prefix_sums,
    weight_sum,
)

__all__ = [
    "ScanRange",
    "ConstantEstimate",
    "BracketSpec",
    "ap_bracket",
    "apq_bracket",
    "rh_bracket",
    "scan_constant",
    "trend_saturated",
    "DualityReport",
    "duality_identity_check",
    "reverse_holder_exponent",
    "SegmentPoint",
    "exponent_segment",
]

SATURATION_RTOL = 0.01


@dataclass(frozen=True)
class ScanRange:
    """All pairs (m, N) with m in centers and 0 <= N <= n_max."""

    centers: IntegerInterval
    n_max: int

    def __post_init__(self) -> None:
        if self.n_max < 0:
            raise ValueError("n_max must be nonnegative")

    def covering_interval(self) -> IntegerInterval:
        return IntegerInterval(self.centers.lo - self.n_max, self.centers.hi + self.n_max)


@dataclass(frozen=True)
class ConstantEstimate:
    """Scanned maximum of a bracket: a lower bound for the class constant.

    trend[j] is the partial maximum over radii up to checkpoints[j]; a flat
    tail is the saturation evidence callers screen on, a growing tail is
    evidence the supremum is infinite.
    """

    value: float
    witness: tuple[int, int]
    scan: ScanRange
    checkpoints: tuple[int, ...]
    trend: tuple[float, ...]

    def saturated(self, rtol: float = SATURATION_RTOL) -> bool:
        return trend_saturated(self.trend, rtol)


def trend_saturated(trend, rtol: float = SATURATION_RTOL) -> bool:
    if len(trend) < 2:
        return True
    a, b = trend[-2], trend[-1]
    return b <= a * (1.0 + rtol)


# ---------------------------------------------------------------------------
# per-interval brackets
# ---------------------------------------------------------------------------


def _avg(w: Weight, J: IntegerInterval, e: float) -> float:
    return weight_sum(w, J, e) / J.cardinality


def ap_bracket(w: Weight, p: float, S: SymmetricInterval) -> float:
    """Diagonal-class bracket on S: p=1 uses the infimum, p>1 the dual average."""
    if p < 1:
        raise ValueError("p must be >= 1")
    J = S.to_interval()
    if p == 1:
        vals = w.eval_many(J.indices())
        return _avg(w, J, 1.0) / float(vals.min())
    return _avg(w, J, 1.0) * _avg(w, J, -1.0 / (p - 1.0)) ** (p - 1.0)


def apq_bracket(w: Weight, p: float, q: float, S: SymmetricInterval) -> float:
    """Off-diagonal bracket on S; the p = 1 and q = inf limit forms swap an
    average for an interval extremum.  p = 1 with q = inf has no defined
    form and is rejected."""
    J = S.to_interval()
    if math.isinf(q):
        if p == 1:
            raise ValueError("no bracket form for p = 1 with q = inf")
        pp = conjugate_exponent(p)
        sup_w = float(w.eval_many(J.indices()).max())
        return sup_w * _avg(w, J, -pp) ** (1.0 / pp)
    if q <= 1:
        raise ValueError("q must be > 1 (or inf)")
    if p == 1:
        inf_w = float(w.eval_many(J.indices()).min())
        return _avg(w, J, q) ** (1.0 / q) / inf_w
    pp = conjugate_exponent(p)
    return _avg(w, J, q) ** (1.0 / q) * _avg(w, J, -pp) ** (1.0 / pp)


def rh_bracket(w: Weight, r: float, S: SymmetricInterval) -> float:
    """Reverse-Hoelder bracket on S: (avg w**r)**(1/r) / avg w, r > 1."""
    if r <= 1:
        raise ValueError("r must be > 1")
    J = S.to_interval()
    return _avg(w, J, r) ** (1.0 / r) / _avg(w, J, 1.0)


@dataclass(frozen=True)
class BracketSpec:
    """Which bracket a scan maximizes: kind in {'ap', 'apq', 'rh'}."""

    kind: str
    p: float = math.nan
    q: float = math.nan
    r: float = math.nan

    def __post_init__(self) -> None:
        if self.kind not in ("ap", "apq", "rh"):
            raise ValueError(f"unknown bracket kind {self.kind!r}")
        if self.kind == "apq" and self.p == 1 and math.isinf(self.q):
            raise ValueError("no bracket form for p = 1 with q = inf")

    def evaluate(self, w: Weight, S: SymmetricInterval) -> float:
        if self.kind == "ap":
            return ap_bracket(w, self.p, S)
        if self.kind == "apq":
            return apq_bracket(w, self.p, self.q, S)
        return rh_bracket(w, self.r, S)

    def describe(self) -> str:
        if self.kind == "ap":
            return f"ap(p={self.p:g})"
        if self.kind == "apq":
            return f"apq(p={self.p:g},q={self.q:g})"
        return f"rh(r={self.r:g})"


# ---------------------------------------------------------------------------
# scanning
# ---------------------------------------------------------------------------


def _geometric_checkpoints(n_max: int) -> tuple[int, ...]:
    cps = []
    c = 1
    while c < n_max:
        cps.append(c)
        c *= 2
    cps.append(n_max)
    return tuple(cps)


def _running_extreme(vals: np.ndarray, idx: int, n_max: int, kind: str) -> np.ndarray:
    """min or max of vals over [idx-N, idx+N] for N = 0..n_max (vals dense)."""
    left = vals[idx - n_max : idx + 1][::-1]
    right = vals[idx : idx + n_max + 1]
    acc = np.minimum if kind == "min" else np.maximum
    return acc(acc.accumulate(left), acc.accumulate(right))


def _bracket_rows(
    bracket: BracketSpec, w: Weight, m: int, scan: ScanRange, tables: dict
) -> np.ndarray:
    """Bracket values on S_{m,N} for every N = 0..n_max."""
    n_max = scan.n_max
    lo = scan.covering_interval().lo
    idx = m - lo
    N = np.arange(n_max + 1, dtype=np.float64)
    card = 2.0 * N + 1.0

    def interval_sums(e: float) -> np.ndarray:
        P = tables["prefix"][e]
        return np.asarray(
            P[idx + 1 : idx + n_max + 2] - P[idx - n_max : idx + 1][::-1],
            dtype=np.float64,
        )

    if bracket.kind == "ap":
        p = bracket.p
        if p == 1:
            mins = _running_extreme(tables["values"], idx, n_max, "min")
            return interval_sums(1.0) / card / mins
        return (
            interval_sums(1.0)
            / card
            * (interval_sums(-1.0 / (p - 1.0)) / card) ** (p - 1.0)
        )
    if bracket.kind == "apq":
        p, q = bracket.p, bracket.q
        if math.isinf(q):
            pp = conjugate_exponent(p)
            sups = _running_extreme(tables["values"], idx, n_max, "max")
            return sups * (interval_sums(-pp) / card) ** (1.0 / pp)
        if p == 1:
            mins = _running_extreme(tables["values"], idx, n_max, "min")
            return (interval_sums(q) / card) ** (1.0 / q) / mins
        pp = conjugate_exponent(p)
        return (interval_sums(q) / card) ** (1.0 / q) * (
            interval_sums(-pp) / card
        ) ** (1.0 / pp)
    r = bracket.r
    return (interval_sums(r) / card) ** (1.0 / r) / (interval_sums(1.0) / card)


def _scan_tables(bracket: BracketSpec, w: Weight, scan: ScanRange) -> dict:
    cover = scan.covering_interval()
    vals = w.eval_many(cover.indices())
    exps: list[float] = []
    if bracket.kind == "ap":
        exps = [1.0] if bracket.p == 1 else [1.0, -1.0 / (bracket.p - 1.0)]
    elif bracket.kind == "apq":
        if math.isinf(bracket.q):
            exps = [-conjugate_exponent(bracket.p)]
        elif bracket.p == 1:
            exps = [bracket.q]
        else:
            exps = [bracket.q, -conjugate_exponent(bracket.p)]
    else:
        exps = [bracket.r, 1.0]
    prefix = {}
    for e in exps:
        pw = vals**e
        if not np.all(np.isfinite(pw)):
            raise OverflowError(f"weight power {e} overflows on the scan range")
        prefix[e] = prefix_sums(pw)
    return {"values": vals, "prefix": prefix}


def scan_constant(bracket: BracketSpec, w: Weight, scan: ScanRange) -> ConstantEstimate:
    """Maximum of the bracket over the scan grid, with trend data.

    The reduction is an exact float max with a total tie order (smallest
    center, then smallest radius), so the result is independent of any
    evaluation schedule.
    """
    tables = _scan_tables(bracket, w, scan)
    checkpoints = _geometric_checkpoints(scan.n_max)
    best = -math.inf
    witness = (scan.centers.lo, 0)
    per_radius = np.full(scan.n_max + 1, -math.inf)
    for m in range(scan.centers.lo, scan.centers.hi + 1):
        rows = _bracket_rows(bracket, w, m, scan, tables)
        j = int(np.argmax(rows))
        if rows[j] > best:
            best = float(rows[j])
            witness = (m, j)
        np.maximum(per_radius, rows, out=per_radius)
    cummax = np.maximum.accumulate(per_radius)
    trend = tuple(float(cummax[c]) for c in checkpoints)
    return ConstantEstimate(best, witness, scan, checkpoints, trend)


# ---------------------------------------------------------------------------
# exact per-interval identities between the classes
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class DualityReport:
    lhs_q: float
    rhs: float
    relerr: float


def duality_identity_check(
    w: Weight, p: float, q: float, S: SymmetricInterval
) -> DualityReport:
    """Exact algebra on one interval: the off-diagonal bracket to the q-th
    power equals the diagonal bracket of w**q at exponent 1 + q/p'.

    (Swapping roles gives the same identity for w**(-p') at 1 + p'/q; the
    p = 1 and q = inf limit forms collapse to the p = 1 bracket of w**q
    and w**(-p') respectively.)
    """
    if not (1 < p and 1 < q and math.isfinite(p) and math.isfinite(q)):
        raise ValueError("identity form requires finite p > 1 and q > 1")
    pp = conjugate_exponent(p)
    lhs_q = apq_bracket(w, p, q, S) ** q
    rhs = ap_bracket(w.power(q), 1.0 + q / pp, S)
    relerr = abs(lhs_q - rhs) / rhs
    return DualityReport(lhs_q, rhs, relerr)


# ---------------------------------------------------------------------------
# self-improvement segments
# ---------------------------------------------------------------------------


def reverse_holder_exponent(
    w: Weight,
    scan: ScanRange,
    r_hi: float = 4.0,
    rtol: float = SATURATION_RTOL,
    iters: int = 30,
) -> float:
    """Largest r in (1, r_hi] whose reverse-Hoelder scan trend saturates.

    Found by bisection on r; each probe is a full scan.  Mirrors the proof
    construction: the class improves exactly as far as a reverse-Hoelder
    exponent for the derived weight can be certified.
    """

    def sat(r: float) -> bool:
        return scan_constant(BracketSpec("rh", r=r), w, scan).saturated(rtol)

    if sat(r_hi):
        return r_hi
    lo = 1.0 + 1e-6
    if not sat(lo):
        raise ValueError("no reverse-Hoelder exponent certifiable for this weight")
    hi = r_hi
    for _ in range(iters):
        mid = 0.5 * (lo + hi)
        if sat(mid):
            lo = mid
        else:
            hi = mid
    return lo


@dataclass(frozen=True)
class SegmentPoint:
    t: float
    p: float
    q: float
    estimate: ConstantEstimate


def exponent_segment(
    w: Weight,
    mode: str,
    alpha: float,
    t_grid,
    scan: ScanRange,
    rh_scan: ScanRange | None = None,
) -> list[SegmentPoint]:
    """Scanned class constants along an interpolation segment of exponents.

    mode 'from_1q0': endpoint (1, q0) with 1/q0 = 1 - alpha.  The derived
    weight w**q0 gets a reverse-Hoelder exponent r0; the far endpoint is
    q1 = q0*r0 with 1/q1 = 1/p1 - alpha, and each t in [0, 1] interpolates
    1/p = t + (1-t)/p1, 1/q = t/q0 + (1-t)/q1.

    mode 'from_p0inf': endpoint (p0, inf) with p0 = 1/alpha.  The derived
    weight w**(-p0') gets a reverse-Hoelder exponent r; the far endpoint
    has p2' = p0'*r and 1/q2 = 1/p2 - alpha, and each t interpolates
    1/p = t/p0 + (1-t)/p2, 1/q = (1-t)/q2 (t = 1 lands on q = inf).
    """
    if not (0 < alpha < 1):
        raise ValueError("alpha must lie in (0,1)")
    if rh_scan is None:
        rh_scan = scan
    points: list[SegmentPoint] = []
    if mode == "from_1q0":
        q0 = 1.0 / (1.0 - alpha)
        r0 = reverse_holder_exponent(w.power(q0), rh_scan)
        q1 = q0 * r0
        p1 = 1.0 / (1.0 / q1 + alpha)
        for t in t_grid:
            p = 1.0 / (t + (1.0 - t) / p1)
            q = 1.0 / (t / q0 + (1.0 - t) / q1)
            est = scan_constant(BracketSpec("apq", p=p, q=q), w, scan)
            points.append(SegmentPoint(float(t), p, q, est))
    elif mode == "from_p0inf":
        p0 = 1.0 / alpha
        pp0 = conjugate_exponent(p0)
        r = reverse_holder_exponent(w.power(-pp0), rh_scan)
        pp2 = pp0 * r
        p2 = pp2 / (pp2 - 1.0)
        q2 = 1.0 / (1.0 / p2 - alpha)
        for t in t_grid:
            p = 1.0 / (t / p0 + (1.0 - t) / p2)
            inv_q = (1.0 - t) / q2
            q = math.inf if inv_q == 0 else 1.0 / inv_q
            est = scan_constant(BracketSpec("apq", p=p, q=q), w, scan)
            points.append(SegmentPoint(float(t), p, q, est))
    else:
        raise ValueError(f"unknown segment mode {mode!r}")
    return points
