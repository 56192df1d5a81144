"""Process pool for the partitioned counting loops.

Every counting loop in `d4mod.arithmetic.theta` splits its outer shell into row
chunks, maps a module-level task over the chunks and adds the integer results.
Integer addition is exact and order-independent, so the answer does not depend
on the worker count or on the order in which chunks complete.
"""

from __future__ import annotations

import logging
import os
from collections.abc import Callable, Sequence
from multiprocessing import Pool
from typing import TypeVar

import numpy as np

logger = logging.getLogger(__name__)

T = TypeVar("T")

# Upper bound on (alpha rows) x (beta rows) handled by one task
DEFAULT_PAIR_BLOCK = 1 << 18

# Batches handed to each process by one `WorkerPool.sum` call
_BATCHES_PER_PROCESS = 4


def default_worker_count() -> int:
    return os.cpu_count() or 1


def partition_rows(rows: np.ndarray, partner_count: int, pair_block: int = DEFAULT_PAIR_BLOCK) -> list[np.ndarray]:
    """Split rows into chunks of at most pair_block / partner_count rows (at least one)."""
    if len(rows) == 0:
        return []
    step = max(1, pair_block // max(partner_count, 1))
    return [rows[start : start + step] for start in range(0, len(rows), step)]


class WorkerPool:
    """Maps an integer-valued task over chunks and sums the results."""

    # Public attributes
    workers: int

    def __init__(self, workers: int | None = None) -> None:
        """Initialize the pool (processes are started per call).

        Args:
            workers: Number of worker processes; None uses the CPU count
        """
        self.workers = workers if workers is not None else default_worker_count()
        if self.workers < 1:
            raise ValueError(f"worker count must be positive, got {self.workers}")

    def sum(self, task: Callable[[T], int], chunks: Sequence[T]) -> int:
        """Return sum(task(chunk) for chunk in chunks).

        Args:
            task: Picklable callable (a module-level function or a partial of one)
            chunks: Work items

        Returns:
            The exact integer total
        """
        if self.workers == 1 or len(chunks) <= 1:
            total = 0
            for done, chunk in enumerate(chunks, start=1):
                total += task(chunk)
                logger.debug("chunk %d/%d done", done, len(chunks))
            return total

        total = 0
        processes = min(self.workers, len(chunks))
        # The task is pickled once per batch of chunks
        batch = max(1, len(chunks) // (processes * _BATCHES_PER_PROCESS))
        logger.debug("mapping %d chunks over %d processes in batches of %d", len(chunks), processes, batch)
        with Pool(processes) as pool:
            for done, part in enumerate(pool.imap_unordered(task, chunks, chunksize=batch), start=1):
                total += part
                logger.debug("chunk %d/%d done", done, len(chunks))
        return total
