"""Ordered fan-out over worker processes for multi-file commands."""
from concurrent.futures import ProcessPoolExecutor
from typing import Callable, Sequence, TypeVar

from loguru import logger

T = TypeVar("T")
R = TypeVar("R")


def run_ordered(func: Callable[[T], R], items: Sequence[T], jobs: int = 1) -> list[R]:
    """
    Apply `func` to every item and return results in input order.
    `func` and the items must be picklable when jobs > 1.
    """
    workers = min(max(jobs, 1), len(items))
    if workers <= 1:
        return [func(item) for item in items]
    logger.debug(f"Processing {len(items)} inputs with {workers} workers")
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(func, items))
