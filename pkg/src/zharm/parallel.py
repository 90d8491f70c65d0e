"""Deterministic worker-pool helpers.

ZHARM_THREADS caps the worker count (0 or unset = auto).  Work is split
into chunks whose boundaries never depend on the worker count, and chunk
results are combined either positionally or through order-insensitive
reductions (exact max / compensated sum), so outputs are bit-identical
whether a computation ran on one thread or eight.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Sequence, TypeVar

T = TypeVar("T")
R = TypeVar("R")

__all__ = ["thread_count", "map_ordered"]


def thread_count() -> int:
    raw = os.environ.get("ZHARM_THREADS", "0")
    try:
        n = int(raw)
    except ValueError:
        n = 0
    if n <= 0:
        n = os.cpu_count() or 1
    return max(1, n)


def map_ordered(fn: Callable[[T], R], items: Sequence[T]) -> list[R]:
    """map() preserving input order, fanned out over the worker pool.

    fn must be pure; results are collected by position so scheduling can
    never reorder them.
    """
    workers = thread_count()
    if workers == 1 or len(items) <= 1:
        return [fn(it) for it in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))
