"""Exact pointwise evaluation of the discrete fractional operators.

For a finitely supported sequence x, every supremum here is a finite
search:

* Centered maximal value at m.  Let N_cover(m) be the smallest radius for
  which the symmetric window around m contains all of supp x.  For
  N >= N_cover the window sum is constant while (2N+1)**(alpha-1) strictly
  decreases, so the supremum is attained at some N <= N_cover.  Sharper:
  between two consecutive "jump" radii |m - i| (i in supp x) the window sum
  is constant, so the supremum is attained at N = 0 or at a jump radius.
  We scan exactly that candidate set with prefix sums.

* Noncentral maximal value at m.  An optimal interval J containing m can
  be shrunk endpoint-wise until each endpoint hits a support point or m
  itself: shrinking over zero entries keeps the sum while |J|**(alpha-1)
  does not decrease.  So both endpoints range over supp x union {m}, a
  finite candidate grid evaluated with prefix sums.

* Riesz potential: a finite sum over supp x minus the diagonal term.

Ties in a supremum leave the value well defined; where a witness radius is
reported, the smallest maximizing radius is chosen.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .lattice import FiniteSequence, IntegerInterval, csum, prefix_sums

__all__ = [
    "OperatorKind",
    "OperatorResult",
    "maximal_centered",
    "maximal_centered_witness",
    "maximal_noncentral",
    "riesz",
    "operator_profile",
    "maximal_profile",
    "noncentral_profile",
    "riesz_profile",
    "maximal_oracle",
    "noncentral_oracle",
    "riesz_oracle",
    "calpha_constant",
    "pointwise_bound_check",
    "pointwise_bound_general",
    "PointwiseBound",
    "GeneralPointwiseBound",
]

# Keep candidate matrices (window points x support points) at ~32M floats.
_CHUNK_ENTRIES = 4_000_000


def _check_maximal_alpha(alpha: float) -> None:
    if not (0.0 <= alpha < 1.0):
        raise ValueError(f"maximal operators need 0 <= alpha < 1, got {alpha}")


def _check_riesz_alpha(alpha: float) -> None:
    if not (0.0 < alpha < 1.0):
        raise ValueError(f"the Riesz potential needs 0 < alpha < 1, got {alpha}")


# ---------------------------------------------------------------------------
# centered maximal
# ---------------------------------------------------------------------------


def _abs_prefix(x: FiniteSequence) -> np.ndarray:
    return prefix_sums(np.abs(x.values))


def _window_sums(P: np.ndarray, offset: int, lo: np.ndarray, hi: np.ndarray) -> np.ndarray:
    """sum of |x| over [lo, hi] (arrays), |x| stored with prefix table P."""
    n = len(P) - 1
    a = np.clip(lo - offset, 0, n)
    b = np.clip(hi - offset + 1, 0, n)
    return np.asarray(P[b] - P[a], dtype=np.float64)


def maximal_profile(x: FiniteSequence, alpha: float, ms: np.ndarray) -> np.ndarray:
    """Centered maximal values at every index in ms (vectorized)."""
    _check_maximal_alpha(alpha)
    supp = x.support()
    out = np.zeros(len(ms), dtype=np.float64)
    if len(supp) == 0:
        return out
    P = _abs_prefix(x)
    chunk = max(1, _CHUNK_ENTRIES // max(1, len(supp)))
    for start in range(0, len(ms), chunk):
        m = ms[start : start + chunk, None]
        N = np.abs(m - supp[None, :])  # jump radii; includes N=0 when m in supp
        sums = _window_sums(P, x.offset, m - N, m + N)
        vals = (2.0 * N + 1.0) ** (alpha - 1.0) * sums
        out[start : start + chunk] = vals.max(axis=1)
    return out


def maximal_centered(x: FiniteSequence, alpha: float, m: int) -> float:
    """Centered fractional maximal value at m (exact supremum)."""
    return float(maximal_profile(x, alpha, np.asarray([m], dtype=np.int64))[0])


def maximal_centered_witness(x: FiniteSequence, alpha: float, m: int) -> tuple[float, int]:
    """(value, N) with N the smallest radius attaining the supremum."""
    _check_maximal_alpha(alpha)
    supp = x.support()
    if len(supp) == 0:
        return 0.0, 0
    P = _abs_prefix(x)
    radii = np.unique(np.concatenate(([0], np.abs(supp - m))))
    sums = _window_sums(P, x.offset, m - radii, m + radii)
    vals = (2.0 * radii + 1.0) ** (alpha - 1.0) * sums
    best = int(np.argmax(vals))  # first occurrence = smallest radius on ties
    return float(vals[best]), int(radii[best])


# ---------------------------------------------------------------------------
# noncentral maximal
# ---------------------------------------------------------------------------


def _noncentral_at(
    x: FiniteSequence, alpha: float, m: int, P: np.ndarray, supp: np.ndarray
) -> float:
    left = supp[supp <= m]
    right = supp[supp >= m]
    a_cand = np.concatenate((left, [m]))
    b_cand = np.concatenate((right, [m]))
    sums = _window_sums(
        P, x.offset, a_cand[:, None] * np.ones_like(b_cand)[None, :], b_cand[None, :]
    )
    lens = b_cand[None, :] - a_cand[:, None] + 1.0
    return float((lens ** (alpha - 1.0) * sums).max())


def noncentral_profile(x: FiniteSequence, alpha: float, ms: np.ndarray) -> np.ndarray:
    _check_maximal_alpha(alpha)
    supp = x.support()
    out = np.zeros(len(ms), dtype=np.float64)
    if len(supp) == 0:
        return out
    P = _abs_prefix(x)
    for j, m in enumerate(ms):
        out[j] = _noncentral_at(x, alpha, int(m), P, supp)
    return out


def maximal_noncentral(x: FiniteSequence, alpha: float, m: int) -> float:
    """Noncentral fractional maximal value at m (exact supremum over intervals)."""
    return float(noncentral_profile(x, alpha, np.asarray([m], dtype=np.int64))[0])


# ---------------------------------------------------------------------------
# Riesz potential
# ---------------------------------------------------------------------------


def riesz_profile(x: FiniteSequence, alpha: float, ks: np.ndarray) -> np.ndarray:
    """Riesz potential at every index of ks; the diagonal term i = k is excluded.

    Small evaluations sum each row with order-independent compensated
    summation, so symmetry properties (translation, reflection) hold to
    the last bit; very large windows switch to pairwise summation.
    """
    _check_riesz_alpha(alpha)
    supp = x.support()
    out = np.zeros(len(ks), dtype=np.float64)
    if len(supp) == 0:
        return out
    xv = x.values[supp - x.offset]
    exact_rows = len(ks) * len(supp) <= 1 << 19
    chunk = max(1, _CHUNK_ENTRIES // max(1, len(supp)))
    for start in range(0, len(ks), chunk):
        k = ks[start : start + chunk, None]
        d = np.abs(k - supp[None, :]).astype(np.float64)
        with np.errstate(divide="ignore"):
            kern = np.where(d > 0, d ** (alpha - 1.0), 0.0)
        terms = kern * xv[None, :]
        if exact_rows:
            out[start : start + chunk] = [math.fsum(row) for row in terms.tolist()]
        else:
            out[start : start + chunk] = terms.sum(axis=1)
    return out


def riesz(x: FiniteSequence, alpha: float, k: int) -> float:
    """Riesz potential of x at k: sum over i != k of x(i)/|k-i|**(1-alpha)."""
    _check_riesz_alpha(alpha)
    terms = [
        x.at(int(i)) * abs(int(i) - k) ** (alpha - 1.0)
        for i in x.support()
        if int(i) != k
    ]
    return csum(terms)


# ---------------------------------------------------------------------------
# profiles
# ---------------------------------------------------------------------------


class OperatorKind(Enum):
    CENTERED_MAXIMAL = "centered-maximal"
    NONCENTRAL_MAXIMAL = "noncentral-maximal"
    RIESZ = "riesz"


@dataclass(frozen=True)
class OperatorResult:
    """Pointwise operator values over a window of evaluation indices."""

    window: IntegerInterval
    values: np.ndarray
    alpha: float
    kind: OperatorKind

    def __post_init__(self) -> None:
        if len(self.values) != self.window.cardinality:
            raise ValueError("profile length must match the window cardinality")
        self.values.setflags(write=False)

    def at(self, k: int) -> float:
        if k not in self.window:
            raise KeyError(f"{k} outside profile window [{self.window.lo},{self.window.hi}]")
        return float(self.values[k - self.window.lo])

    def slice(self, J: IntegerInterval) -> np.ndarray:
        if J.lo < self.window.lo or J.hi > self.window.hi:
            raise KeyError("requested interval leaves the profile window")
        return self.values[J.lo - self.window.lo : J.hi - self.window.lo + 1]


_PROFILE_FNS = {
    OperatorKind.CENTERED_MAXIMAL: maximal_profile,
    OperatorKind.NONCENTRAL_MAXIMAL: noncentral_profile,
    OperatorKind.RIESZ: riesz_profile,
}


def operator_profile(
    x: FiniteSequence, alpha: float, window: IntegerInterval, kind: OperatorKind
) -> OperatorResult:
    """Evaluate the chosen operator at every index of window.

    Index evaluations are independent, so the computation is chunked; the
    output is identical to a sequential scan regardless of scheduling.
    """
    vals = _PROFILE_FNS[kind](x, alpha, window.indices())
    return OperatorResult(window, vals, alpha, kind)


# ---------------------------------------------------------------------------
# brute-force oracles (test cross-checks; deliberately naive)
# ---------------------------------------------------------------------------


def n_cover(x: FiniteSequence, m: int) -> int:
    """Smallest N such that the symmetric window around m contains supp x."""
    hull = x.support_hull()
    if hull is None:
        return 0
    return max(abs(m - hull.lo), abs(m - hull.hi))


def maximal_oracle(x: FiniteSequence, alpha: float, m: int, n_max: int) -> float:
    """Naive sup over N <= n_max, resumming the window each time."""
    _check_maximal_alpha(alpha)
    if n_max < n_cover(x, m):
        raise ValueError(f"n_max={n_max} below covering radius {n_cover(x, m)}")
    absx = np.abs(x.values)
    best = 0.0
    for N in range(n_max + 1):
        lo = max(m - N, x.offset) - x.offset
        hi = min(m + N, x.window_hi) - x.offset
        s = float(np.sum(absx[lo : hi + 1])) if hi >= lo else 0.0
        best = max(best, (2.0 * N + 1.0) ** (alpha - 1.0) * s)
    return best


def noncentral_oracle(x: FiniteSequence, alpha: float, m: int) -> float:
    """Exhaustive sup over every interval [a, b] containing m with endpoints
    in the hull of supp x and m (no candidate pruning)."""
    _check_maximal_alpha(alpha)
    hull = x.support_hull()
    if hull is None:
        return 0.0
    lo = min(hull.lo, m)
    hi = max(hull.hi, m)
    P = _abs_prefix(x)
    a = np.arange(lo, m + 1, dtype=np.int64)
    b = np.arange(m, hi + 1, dtype=np.int64)
    sums = _window_sums(
        P, x.offset, np.broadcast_to(a[:, None], (len(a), len(b))), b[None, :]
    )
    lens = b[None, :] - a[:, None] + 1.0
    return float((lens ** (alpha - 1.0) * sums).max())


def riesz_oracle(x: FiniteSequence, alpha: float, k: int) -> float:
    _check_riesz_alpha(alpha)
    total = 0.0
    for i in range(x.offset, x.window_hi + 1):
        if i != k:
            total += x.at(i) * abs(k - i) ** (alpha - 1.0)
    return total


# ---------------------------------------------------------------------------
# explicit pointwise bounds linking the Riesz potential to the maximal values
# ---------------------------------------------------------------------------


def calpha_constant(alpha: float, eps: float) -> float:
    """max{ 12**(1-alpha+eps) / (2**eps - 1), 12**(1-alpha-eps) / (1 - 2**-eps) }."""
    if not (0.0 < eps < min(alpha, 1.0 - alpha)):
        raise ValueError(f"need 0 < eps < min(alpha, 1-alpha); got alpha={alpha}, eps={eps}")
    near = 12.0 ** (1.0 - alpha + eps) / (2.0**eps - 1.0)
    far = 12.0 ** (1.0 - alpha - eps) / (1.0 - 2.0 ** (-eps))
    return max(near, far)


@dataclass(frozen=True)
class PointwiseBound:
    lhs: float
    rhs: float
    holds: bool


def pointwise_bound_check(
    x: FiniteSequence, alpha: float, eps: float, k: int
) -> PointwiseBound:
    """Strict check |Riesz value| <= C_alpha * sqrt(M_{alpha+eps} * M_{alpha-eps}) at k."""
    c = calpha_constant(alpha, eps)
    lhs = abs(riesz(x, alpha, k))
    rhs = c * math.sqrt(
        maximal_centered(x, alpha + eps, k) * maximal_centered(x, alpha - eps, k)
    )
    return PointwiseBound(lhs, rhs, lhs <= rhs + 1e-12 * rhs)


@dataclass(frozen=True)
class GeneralPointwiseBound:
    lhs: float
    bracket: float


def pointwise_bound_general(
    x: FiniteSequence, alpha: float, alpha1: float, alpha2: float, k: int
) -> GeneralPointwiseBound:
    """Two-exponent bracket M_{a1}**((a2-a)/(a2-a1)) * M_{a2}**((a-a1)/(a2-a1)) vs |Riesz|.

    No explicit constant is asserted here; callers record the empirical
    supremum of lhs/bracket over input families.
    """
    if not (0.0 <= alpha1 < alpha < alpha2 < 1.0):
        raise ValueError("need 0 <= alpha1 < alpha < alpha2 < 1")
    lhs = abs(riesz(x, alpha, k))
    t1 = (alpha2 - alpha) / (alpha2 - alpha1)
    t2 = (alpha - alpha1) / (alpha2 - alpha1)
    bracket = maximal_centered(x, alpha1, k) ** t1 * maximal_centered(x, alpha2, k) ** t2
    return GeneralPointwiseBound(lhs, bracket)
