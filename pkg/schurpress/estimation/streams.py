"""Deterministic parallel execution over spawned random streams.

Work is cut into chunks whose size never depends on the worker count. Chunk
``i`` always receives the ``i``-th child of the root generator, so results are
identical for any number of threads.
"""

import logging
import os
from collections.abc import Callable, Sequence
from concurrent.futures import ThreadPoolExecutor
from typing import Final

import numpy as np

from schurpress.errors import InvalidArgument

LOGGER: Final[logging.Logger] = logging.getLogger(__name__)

THREADS: Final[int] = int(os.getenv("SCHURPRESS_THREADS", "0") or "0")
CHUNK_SIZE: Final[int] = 1 << 16


def worker_count(threads: int | None = None) -> int:
    threads = THREADS if threads is None else threads
    if threads < 0:
        raise InvalidArgument(f"Thread count must be >= 0. Got: {threads}")
    return threads or os.cpu_count() or 1


def chunk_sizes(total: int, chunk: int = CHUNK_SIZE) -> list[int]:
    """Split ``total`` units into full chunks plus a remainder.

    Examples:
        >>> chunk_sizes(10, 4)
        [4, 4, 2]
    """
    if total < 0 or chunk < 1:
        raise InvalidArgument(f"Cannot split {total} units into chunks of {chunk}")
    full, rest = divmod(total, chunk)
    return [chunk] * full + ([rest] if rest else [])


def parallel_map[T, R](
    fn: Callable[[T, np.random.Generator], R],
    tasks: Sequence[T],
    rng: np.random.Generator,
    threads: int | None = None,
) -> list[R]:
    """``[fn(task, child) for task, child in zip(tasks, rng.spawn(len(tasks)))]``, in parallel."""
    children = rng.spawn(len(tasks)) if tasks else []
    workers = min(worker_count(threads), max(len(tasks), 1))
    LOGGER.debug("Running %d tasks on %d workers", len(tasks), workers)
    if workers == 1:
        return [fn(task, child) for task, child in zip(tasks, children)]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, tasks, children))
