"""Optional thread fan-out for embarrassingly parallel point evaluation.

COMPAT_THREADS caps the worker count (0 or unset = automatic). Mapped
functions must be pure; results are assembled in input order, so output
never depends on scheduling.
"""

import os
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Iterable, Sequence, TypeVar

T = TypeVar("T")
R = TypeVar("R")


def thread_count() -> int:
    raw = os.environ.get("COMPAT_THREADS", "0")
    try:
        n = int(raw)
    except ValueError:
        n = 0
    if n <= 0:
        n = min(8, os.cpu_count() or 1)
    return n


def parallel_map(fn: Callable[[T], R], items: Iterable[T]) -> list[R]:
    seq: Sequence[T] = list(items)
    workers = thread_count()
    if workers <= 1 or len(seq) < 4:
        return [fn(x) for x in seq]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, seq))
