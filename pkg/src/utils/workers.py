"""
Worker Pool

Thread-pool helpers shared by the norm search and the family sweep.
Results are always returned in input order, so worker count never changes output.
"""

import logging
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Iterable, Optional, TypeVar

import psutil

from config import config

logger = logging.getLogger(__name__)

T = TypeVar('T')
R = TypeVar('R')


def resolve_threads(requested: Optional[int] = None) -> int:
    """
    Pick the worker count

    Order: explicit request, SSE_THREADS, physical cores, then 1.
    """
    if requested and requested > 0:
        return requested
    if config.threads > 0:
        return config.threads
    cores = psutil.cpu_count(logical=False) or psutil.cpu_count(logical=True)
    return max(1, cores or 1)


def map_ordered(
    func: Callable[[T], R],
    items: Iterable[T],
    threads: Optional[int] = None
) -> list[R]:
    """Apply func to every item, possibly in parallel, preserving input order"""
    items = list(items)
    workers = min(resolve_threads(threads), max(1, len(items)))
    if workers == 1:
        return [func(item) for item in items]

    logger.debug(f"Dispatching {len(items)} tasks to {workers} workers")
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(func, items))
