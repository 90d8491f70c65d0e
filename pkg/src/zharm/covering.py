"""Greedy selection of centered intervals with bounded overlap (1-D).

Given finitely many symmetric intervals, one per center, the greedy below
chooses a subfamily that still covers every center while no integer lies
in more than 2 chosen intervals.

Why the overlap bound is 2 for this greedy: process intervals by radius
descending (ties: smaller center first) and select an interval iff its
center is not covered by the union already selected.  Suppose some point z
lay in three selected intervals, selected in the order S_a, S_b, S_c with
radii r_a >= r_b >= r_c.  The centers c_b, c_c are outside S_a (else not
selected) and c_c is outside S_b.  If c_b, c_c sit on the same side of
S_a, both are beyond the same endpoint of S_a while z is inside S_a, so
|c_b - c_c| <= max(r_b, r_c) = r_b, contradicting c_c outside S_b.  If
they sit on opposite sides, |c_b - c_c| > 2 r_a, yet z in S_b and S_c
forces |c_b - c_c| <= r_b + r_c <= 2 r_a.  Either way: contradiction, so
pointwise overlap <= 2.  (Minimality of the selection is not claimed.)
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .lattice import IntegerInterval, SymmetricInterval

__all__ = ["CenteredFamily", "Selection", "select_cover", "overlap_profile"]

OVERLAP_BOUND = 2


@dataclass(frozen=True)
class CenteredFamily:
    """One symmetric interval per center: radius[i] belongs to centers[i]."""

    centers: tuple[int, ...]
    radii: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.centers) != len(self.radii):
            raise ValueError("one radius per center")
        if len(self.centers) == 0:
            raise ValueError("family must be nonempty")
        if len(set(self.centers)) != len(self.centers):
            raise ValueError("centers must be distinct")
        if any(r < 0 for r in self.radii):
            raise ValueError("radii must be nonnegative")

    @staticmethod
    def from_map(radius_by_center: dict[int, int]) -> "CenteredFamily":
        items = sorted(radius_by_center.items())
        return CenteredFamily(tuple(k for k, _ in items), tuple(r for _, r in items))

    def intervals(self) -> list[SymmetricInterval]:
        return [SymmetricInterval(m, r) for m, r in zip(self.centers, self.radii)]


@dataclass(frozen=True)
class Selection:
    """Chosen subfamily, in selection order."""

    chosen: tuple[SymmetricInterval, ...]

    def union_hull(self) -> IntegerInterval:
        return IntegerInterval(
            min(s.lo for s in self.chosen), max(s.hi for s in self.chosen)
        )


def select_cover(fam: CenteredFamily) -> Selection:
    """Greedy bounded-overlap cover of the family's centers.

    Candidates are visited by radius descending, then center ascending; a
    candidate is selected iff its center is not yet covered.  The result
    covers every center, and no integer lies in more than 2 chosen
    intervals (argument in the module docstring).
    """
    order = sorted(range(len(fam.centers)), key=lambda i: (-fam.radii[i], fam.centers[i]))
    centers = np.sort(np.asarray(fam.centers, dtype=np.int64))
    covered = np.zeros(len(centers), dtype=bool)
    chosen: list[SymmetricInterval] = []
    for i in order:
        pos = int(np.searchsorted(centers, fam.centers[i]))
        if covered[pos]:
            continue
        s = SymmetricInterval(fam.centers[i], fam.radii[i])
        chosen.append(s)
        covered |= (centers >= s.lo) & (centers <= s.hi)
    return Selection(tuple(chosen))


def overlap_profile(sel: Selection, window: IntegerInterval) -> np.ndarray:
    """How many chosen intervals cover each integer of window.

    window must contain the union of the chosen intervals, so the counts
    are complete (everything outside is 0 by construction).
    """
    hull = sel.union_hull()
    if hull.lo < window.lo or hull.hi > window.hi:
        raise ValueError(
            f"window [{window.lo},{window.hi}] does not contain the union "
            f"[{hull.lo},{hull.hi}]"
        )
    counts = np.zeros(window.cardinality + 1, dtype=np.int64)
    for s in sel.chosen:
        counts[s.lo - window.lo] += 1
        counts[s.hi - window.lo + 1] -= 1
    return np.cumsum(counts[:-1])
