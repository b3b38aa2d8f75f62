"""Chunked sweeps over an index range with a deterministic merge.

Workers each own a contiguous block of the range and return a numpy array
of per-index results; blocks are concatenated in index order, so the
output never depends on the worker count.
"""

from __future__ import annotations

import multiprocessing as mp
import os
from typing import Callable

import numpy as np

WORKERS_ENV = "NIHO13_WORKERS"

_TASK: Callable[[int, int], np.ndarray] | None = None


def default_workers() -> int:
    try:
        return max(1, int(os.environ.get(WORKERS_ENV, "1")))
    except ValueError:
        return 1


def _run_block(bounds):
    return _TASK(*bounds)


def _blocks(total: int, block: int):
    return [(a, min(total, a + block)) for a in range(0, total, block)]


def sweep(task: Callable[[int, int], np.ndarray], total: int, *, workers: int | None = None,
          block: int = 256) -> np.ndarray:
    """Evaluate task(start, stop) over [0, total) and stack the results."""
    global _TASK
    workers = default_workers() if workers is None else workers
    bounds = _blocks(total, block)
    if workers <= 1 or len(bounds) <= 1 or "fork" not in mp.get_all_start_methods():
        return np.concatenate([task(a, b) for a, b in bounds])
    _TASK = task
    try:
        with mp.get_context("fork").Pool(workers) as pool:
            parts = pool.map(_run_block, bounds, chunksize=max(1, len(bounds) // (4 * workers)))
    finally:
        _TASK = None
    return np.concatenate(parts)
