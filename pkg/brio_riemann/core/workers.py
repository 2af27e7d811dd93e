"""
Worker pool helper
Order-preserving map over independent numerical jobs
"""
import logging
import os
from typing import Callable, Iterable, List, Optional, TypeVar

from joblib import Parallel, delayed

from brio_riemann.core.config import resolve, settings

logger = logging.getLogger(__name__)

T = TypeVar("T")


def worker_count(n_jobs: Optional[int] = None) -> int:
    """Resolve n_jobs; values below 1 mean one worker per CPU"""
    jobs = resolve(n_jobs, settings.n_jobs)
    if jobs < 1:
        jobs = os.cpu_count() or 1
    return jobs


def parallel_map(fn: Callable[..., T], arg_lists: Iterable[tuple],
                 n_jobs: Optional[int] = None) -> List[T]:
    """
    Apply fn to each argument tuple, results in input order

    Runs in-process for a single worker, otherwise through joblib worker
    processes. The first job exception propagates unchanged.
    """
    args = list(arg_lists)
    jobs = min(worker_count(n_jobs), max(len(args), 1))
    if jobs == 1:
        return [fn(*a) for a in args]
    logger.debug(f"dispatching {len(args)} jobs to {jobs} joblib workers")
    return Parallel(n_jobs=jobs)(delayed(fn)(*a) for a in args)
