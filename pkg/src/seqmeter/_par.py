"""Deterministic worker-pool helper.

Results are returned in task order, so any reduction the caller applies is
independent of scheduling; worker_count only changes wall-clock time.
"""

from __future__ import annotations

import multiprocessing
import os


def default_workers() -> int:
    env = os.environ.get("SEQMETER_WORKERS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            pass
    return os.cpu_count() or 1


def run_ordered(func, items, workers: int, initializer=None, initargs=()):
    """Map func over items preserving order; serial when workers <= 1 or
    the task list is tiny."""
    items = list(items)
    if workers <= 1 or len(items) <= 1:
        if initializer is not None:
            initializer(*initargs)
        return [func(x) for x in items]
    ctx = multiprocessing.get_context("fork")
    chunksize = max(1, len(items) // (workers * 4))
    with ctx.Pool(workers, initializer=initializer, initargs=initargs) as pool:
        return pool.map(func, items, chunksize=chunksize)
