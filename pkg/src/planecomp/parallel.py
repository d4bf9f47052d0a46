"""Small worker-pool helpers; results never depend on the number of jobs."""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor


def default_jobs() -> int:
    return os.cpu_count() or 1


def pmap(fn, items: list, jobs: int = 1) -> list:
    """[fn(x) for x in items], spread over ``jobs`` processes when jobs > 1."""
    if jobs <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ProcessPoolExecutor(max_workers=min(jobs, len(items))) as ex:
        return list(ex.map(fn, items))


def first_hit(fn, chunks: list, jobs: int = 1):
    """First non-None result in chunk order.

    Serially the scan stops at the first hit; in parallel every chunk runs
    and the earliest chunk with a hit wins, so the answer is the same.
    """
    if jobs <= 1 or len(chunks) <= 1:
        for c in chunks:
            r = fn(c)
            if r is not None:
                return r
        return None
    for r in pmap(fn, chunks, jobs):
        if r is not None:
            return r
    return None
