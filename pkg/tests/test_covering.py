import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from zharm.covering import CenteredFamily, overlap_profile, select_cover
from zharm.lattice import IntegerInterval


def brute_force_overlap_max(sel):
    hull = sel.union_hull()
    counts = np.zeros(hull.cardinality, dtype=int)
    for s in sel.chosen:
        for k in range(s.lo, s.hi + 1):
            counts[k - hull.lo] += 1
    return int(counts.max())


def test_select_cover_example_nested():
    fam = CenteredFamily.from_map({0: 10, 5: 1})
    sel = select_cover(fam)
    assert [(s.m, s.N) for s in sel.chosen] == [(0, 10)]
    assert all(any(c in s for s in sel.chosen) for c in fam.centers)
    window = IntegerInterval(-12, 12)
    assert overlap_profile(sel, window).max() == 1


def test_select_cover_singleton():
    sel = select_cover(CenteredFamily.from_map({0: 0}))
    assert [(s.m, s.N) for s in sel.chosen] == [(0, 0)]


def test_select_cover_example_three_blocks():
    fam = CenteredFamily.from_map({0: 2, 3: 2, 6: 2})
    sel = select_cover(fam)
    assert [(s.m, s.N) for s in sel.chosen] == [(0, 2), (3, 2), (6, 2)]
    window = IntegerInterval(-3, 9)
    prof = overlap_profile(sel, window)
    assert prof.max() == 2
    assert prof.tolist() == brute_overlap_list(sel, window)


def brute_overlap_list(sel, window):
    return [
        sum(1 for s in sel.chosen if window.lo + i in s)
        for i in range(window.cardinality)
    ]


def test_overlap_profile_window_check():
    sel = select_cover(CenteredFamily.from_map({0: 5}))
    with pytest.raises(ValueError):
        overlap_profile(sel, IntegerInterval(-3, 3))
    prof = overlap_profile(sel, IntegerInterval(-6, 6))
    assert prof.tolist() == [0] + [1] * 11 + [0]


@settings(max_examples=120, deadline=None)
@given(
    st.dictionaries(
        st.integers(-300, 300), st.integers(0, 80), min_size=1, max_size=60
    )
)
def test_cover_and_overlap_property(radius_by_center):
    fam = CenteredFamily.from_map(radius_by_center)
    sel = select_cover(fam)
    # every chosen interval is a family member
    members = set(zip(fam.centers, fam.radii))
    assert all((s.m, s.N) in members for s in sel.chosen)
    # the selection covers all centers
    for c in fam.centers:
        assert any(c in s for s in sel.chosen)
    # bounded overlap, counted by brute force
    assert brute_force_overlap_max(sel) <= 2


def test_cover_property_large_seeded():
    rng = np.random.default_rng(123)
    for _ in range(60):
        m = int(rng.integers(1, 1001))
        centers = rng.choice(np.arange(-10_000, 10_001), size=m, replace=False)
        radii = rng.integers(0, 1001, size=m)
        fam = CenteredFamily(tuple(int(c) for c in centers), tuple(int(r) for r in radii))
        sel = select_cover(fam)
        hull = sel.union_hull()
        prof = overlap_profile(sel, IntegerInterval(hull.lo - 1, hull.hi + 1))
        assert int(prof.max()) <= 2
        cs = np.sort(centers)
        covered = np.zeros(len(cs), dtype=bool)
        for s in sel.chosen:
            covered |= (cs >= s.lo) & (cs <= s.hi)
        assert covered.all()
