"""Norms and functionals the inequality checks are stated in.

Weighted sequence norms, weak quasinorms via the distribution function,
interval means and oscillations, a scanned oscillation supremum, and the
log-plus / exponential functionals.  Profiles are finite windows of
operator values; completeness over the whole lattice is the caller's
responsibility (the verification layer certifies windows with closed-form
tail bounds).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .lattice import (
    FiniteSequence,
    IntegerInterval,
    SymmetricInterval,
    Weight,
    csum,
)
from .operators import OperatorResult
from .weights import ConstantEstimate, ScanRange, _geometric_checkpoints

__all__ = [
    "MeasureSpec",
    "lp_norm",
    "superlevel_measure",
    "weak_norm",
    "interval_mean",
    "oscillation",
    "bmo_norm",
    "log_plus",
    "llogl_functional",
    "exp_functional",
    "normalize_for_exp",
]

# exp(710) overflows a double; anything above this is reported as overflow
_EXP_ARG_LIMIT = 700.0


@dataclass(frozen=True)
class MeasureSpec:
    """Discrete measure k -> base(k)**exponent (strictly positive)."""

    base: Weight
    exponent: float = 1.0

    def eval_many(self, ks: np.ndarray) -> np.ndarray:
        if self.exponent == 1.0:
            return self.base.eval_many(ks)
        return self.base.eval_many(ks) ** self.exponent

    def eval_one(self, k: int) -> float:
        return self.base.eval_one(k) ** self.exponent

    def total(self, J: IntegerInterval) -> float:
        return csum(self.eval_many(J.indices()))


def _profile_window_values(y) -> tuple[IntegerInterval, np.ndarray]:
    if isinstance(y, OperatorResult):
        return y.window, y.values
    window, values = y
    values = np.asarray(values, dtype=np.float64)
    if len(values) != window.cardinality:
        raise ValueError("profile length must match its window")
    return window, values


def lp_norm(x: FiniteSequence, v: MeasureSpec, p: float) -> float:
    """(sum over the support of |x(k)|**p v(k)) ** (1/p)."""
    if p < 1:
        raise ValueError("p must be >= 1")
    supp = x.support()
    if len(supp) == 0:
        return 0.0
    xs = np.abs(x.values[supp - x.offset])
    return csum(xs**p * v.eval_many(supp)) ** (1.0 / p)


def _on_window(y, window: IntegerInterval) -> np.ndarray:
    """Profile values laid out over window (zero-padded); error if the
    profile sticks out of window."""
    ywin, vals = _profile_window_values(y)
    if ywin.lo == window.lo and ywin.hi == window.hi:
        return vals
    if ywin.lo < window.lo or ywin.hi > window.hi:
        raise ValueError("window does not contain the profile")
    full = np.zeros(window.cardinality)
    full[ywin.lo - window.lo : ywin.hi - window.lo + 1] = vals
    return full


def superlevel_measure(y, v: MeasureSpec, lam: float, window: IntegerInterval) -> float:
    """v-measure of {k in window : |y(k)| > lam} (strict inequality).

    window must contain every index where |y| is nonzero for this to be
    the full lattice measure.
    """
    if lam <= 0:
        raise ValueError("level must be positive")
    vals = _on_window(y, window)
    mask = np.abs(vals) > lam
    if not np.any(mask):
        return 0.0
    return csum(v.eval_many(window.indices()[mask]))


def weak_norm(y, v: MeasureSpec, p: float, window: IntegerInterval) -> float:
    """sup over lam > 0 of lam * measure(|y| > lam) ** (1/p), exactly.

    The distribution function only jumps at the distinct values of |y|,
    and the supremum is approached as lam increases to a jump; its value
    there is value * measure(|y| >= value) ** (1/p).  Maximizing over the
    distinct values gives the supremum in closed form (no level grid).
    """
    if p < 1:
        raise ValueError("p must be >= 1")
    absy = np.abs(_on_window(y, window))
    mass = v.eval_many(window.indices())
    order = np.argsort(absy, kind="stable")[::-1]  # descending |y|
    sorted_y = absy[order]
    cum = np.cumsum(mass[order].astype(np.longdouble))
    # last index of each run of equal values = where measure(|y| >= v) closes
    run_end = np.nonzero(np.r_[sorted_y[1:] != sorted_y[:-1], True])[0]
    vals_b = sorted_y[run_end]
    keep = vals_b > 0.0
    if not np.any(keep):
        return 0.0
    cum_b = np.asarray(cum[run_end], dtype=np.float64)
    return float(np.max(vals_b[keep] * cum_b[keep] ** (1.0 / p)))


def interval_mean(y, S: SymmetricInterval) -> float:
    """Arithmetic mean of the profile over S."""
    ywin, vals = _profile_window_values(y)
    if S.lo < ywin.lo or S.hi > ywin.hi:
        raise ValueError("profile not defined on all of S")
    seg = vals[S.lo - ywin.lo : S.hi - ywin.lo + 1]
    return csum(seg) / S.cardinality


def oscillation(y, S: SymmetricInterval) -> float:
    """Mean absolute deviation of the profile about its mean over S."""
    ywin, vals = _profile_window_values(y)
    if S.lo < ywin.lo or S.hi > ywin.hi:
        raise ValueError("profile not defined on all of S")
    seg = vals[S.lo - ywin.lo : S.hi - ywin.lo + 1]
    mean = csum(seg) / S.cardinality
    return csum(np.abs(seg - mean)) / S.cardinality


def bmo_norm(y, scan: ScanRange) -> ConstantEstimate:
    """Scanned supremum of the oscillation over every interval in scan."""
    ywin, vals = _profile_window_values(y)
    cover = scan.covering_interval()
    if cover.lo < ywin.lo or cover.hi > ywin.hi:
        raise ValueError("profile window too small for the requested scan")
    checkpoints = _geometric_checkpoints(scan.n_max)
    per_radius = np.full(scan.n_max + 1, -math.inf)
    best = -math.inf
    witness = (scan.centers.lo, 0)
    for m in range(scan.centers.lo, scan.centers.hi + 1):
        row = np.empty(scan.n_max + 1)
        for N in range(scan.n_max + 1):
            seg = vals[m - N - ywin.lo : m + N - ywin.lo + 1]
            mean = csum(seg) / (2 * N + 1)
            row[N] = csum(np.abs(seg - mean)) / (2 * N + 1)
        j = int(np.argmax(row))
        if row[j] > best:
            best = float(row[j])
            witness = (m, j)
        np.maximum(per_radius, row, out=per_radius)
    cummax = np.maximum.accumulate(per_radius)
    trend = tuple(float(cummax[c]) for c in checkpoints)
    return ConstantEstimate(best, witness, scan, checkpoints, trend)


def log_plus(t: float) -> float:
    """log t for t > 1, and 0 for 0 <= t <= 1 (natural logarithm)."""
    if t < 0:
        raise ValueError("log_plus needs t >= 0")
    return math.log(t) if t > 1.0 else 0.0


def llogl_functional(
    x: FiniteSequence, w: Weight, q: float, S: SymmetricInterval
) -> float:
    """v(S) + sum over S of |x(k)| w(k) log_plus(|x(k)| w(k)**(1-q)), v = w**q."""
    hull = x.support_hull()
    if hull is not None and (hull.lo < S.lo or hull.hi > S.hi):
        raise ValueError("x has support outside S")
    J = S.to_interval()
    ks = J.indices()
    wv = w.eval_many(ks)
    v_total = csum(wv**q)
    if hull is None:
        return v_total
    xs = np.array([abs(x.at(int(k))) for k in ks])
    args = xs * wv ** (1.0 - q)
    logs = np.where(args > 1.0, np.log(np.maximum(args, 1e-300)), 0.0)
    return v_total + csum(xs * wv * logs)


def exp_functional(
    y,
    w: Weight,
    q: float,
    p_prime: float,
    delta: float,
    S: SymmetricInterval,
) -> float:
    """sum over S of exp(0.5 * ||y(k)| - delta|**p') * w(k)**q.

    Overflowing terms make the result +inf (a diagnostic marker, never a
    silent wraparound); use overflow_witness to locate the first such k.
    """
    if delta <= 0:
        raise ValueError("delta must be positive")
    args = _exp_arguments(y, delta, p_prime, S)
    if np.any(args > _EXP_ARG_LIMIT):
        return math.inf
    ks = S.to_interval().indices()
    return csum(np.exp(args) * w.eval_many(ks) ** q)


def overflow_witness(y, delta: float, p_prime: float, S: SymmetricInterval) -> int | None:
    """Smallest k in S whose exponential term overflows, or None."""
    args = _exp_arguments(y, delta, p_prime, S)
    idx = np.nonzero(args > _EXP_ARG_LIMIT)[0]
    if len(idx) == 0:
        return None
    return int(S.lo + idx[0])


def _exp_arguments(y, delta: float, p_prime: float, S: SymmetricInterval) -> np.ndarray:
    ywin, vals = _profile_window_values(y)
    if S.lo < ywin.lo or S.hi > ywin.hi:
        raise ValueError("profile not defined on all of S")
    seg = vals[S.lo - ywin.lo : S.hi - ywin.lo + 1]
    return 0.5 * np.abs(np.abs(seg) - delta) ** p_prime


def normalize_for_exp(
    x: FiniteSequence, w: Weight, p: float, S: SymmetricInterval
) -> FiniteSequence:
    """Rescale x so its weighted p-norm equals the minimum of w over S.

    Returns (min over S of w) * x / lp_norm(x, w**p, p); the rescaled
    sequence satisfies the norm-versus-minimum hypothesis of the
    exponential bound by construction.
    """
    hull = x.support_hull()
    if hull is None:
        raise ValueError("cannot normalize the zero sequence")
    if hull.lo < S.lo or hull.hi > S.hi:
        raise ValueError("x has support outside S")
    norm = lp_norm(x, MeasureSpec(w, p), p)
    wmin = float(w.eval_many(S.to_interval().indices()).min())
    return x.scaled(wmin / norm)
