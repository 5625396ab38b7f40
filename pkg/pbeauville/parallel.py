"""
Parallel map
Order-preserving map over a process pool
"""
import logging
import multiprocessing
from typing import Callable, Iterable, TypeVar

logger = logging.getLogger("pbeauville.parallel")

J = TypeVar("J")
R = TypeVar("R")


def ordered_map(fn: Callable[[J], R], jobs: Iterable[J], workers: int = 1) -> list[R]:
    """
    Apply fn to every job and return the results in job order.

    Args:
        fn: A picklable module-level function
        jobs: Job descriptions, picklable when workers > 1
        workers: Pool size; 1 or less runs in this process
    """
    jobs = list(jobs)
    if workers <= 1 or len(jobs) <= 1:
        return [fn(job) for job in jobs]
    logger.debug(f"Running {len(jobs)} jobs on {workers} workers")
    with multiprocessing.Pool(workers) as pool:
        return pool.map(fn, jobs)
