"""Deterministic chunked evaluation, optionally across a thread pool.

Work is split into fixed slices before any scheduling decision, each
slice is computed by the same pure function, and results are collected
in slice order: output bytes cannot depend on the worker count.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from typing import Callable, TypeVar

T = TypeVar("T")


def run_ordered(fn: Callable[[slice], T], n_items: int, chunk_size: int, workers: int = 1) -> list[T]:
    """Evaluate ``fn`` over consecutive slices of range(n_items), in order."""
    if n_items < 0 or chunk_size < 1:
        raise ValueError("need n_items >= 0 and chunk_size >= 1")
    slices = [slice(lo, min(lo + chunk_size, n_items)) for lo in range(0, n_items, chunk_size)]
    if workers <= 1 or len(slices) <= 1:
        return [fn(sl) for sl in slices]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, slices))
