from __future__ import annotations
import os
from collections.abc import Callable, Iterable
from concurrent.futures import ThreadPoolExecutor
from typing import TypeVar


T = TypeVar("T")
R = TypeVar("R")

THREADS_ENV = "BEURLAB_THREADS"


def worker_count() -> int:
    """Worker cap from `BEURLAB_THREADS`; 0 or 1 means serial evaluation."""
    raw = os.environ.get(THREADS_ENV)
    if raw is None or not raw.strip():
        return os.cpu_count() or 1
    try:
        return max(0, int(raw))
    except ValueError:
        return 0


def ordered_map(func: Callable[[T], R], items: Iterable[T]) -> list[R]:
    """Map `func` over `items`, possibly concurrently, keeping grid order.

    Results are assembled by input index, so the output never depends on the
    worker count. The first exception raised by any item is re-raised.
    """
    items = list(items)
    workers = min(worker_count(), len(items))
    if workers <= 1:
        return [func(item) for item in items]
    with ThreadPoolExecutor(max_workers=workers, thread_name_prefix="beurlab") as pool:
        return list(pool.map(func, items))
