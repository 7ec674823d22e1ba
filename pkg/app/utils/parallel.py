"""Ordered thread-pool map for independent grid evaluations."""

import os
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Optional, Sequence, TypeVar

from app.utils.settings import settings

T = TypeVar("T")
R = TypeVar("R")


def worker_count(threads: Optional[int] = None) -> int:
    """Worker cap: THREADS, or the available CPUs when it is 0."""
    threads = settings.THREADS if threads is None else threads
    if threads <= 0:
        threads = os.cpu_count() or 1
    return threads


def ordered_map(fn: Callable[[T], R], items: Sequence[T], threads: Optional[int] = None) -> list[R]:
    """Apply fn to every item, returning results in input order.

    Exceptions raised by fn propagate to the caller.
    """
    items = list(items)
    workers = min(worker_count(threads), len(items))
    if workers <= 1:
        return [fn(item) for item in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))
