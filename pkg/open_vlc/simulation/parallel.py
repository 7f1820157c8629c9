"""
Random streams and worker pools.

Every batch of channel uses draws from its own counter-based Philox stream
keyed by (master seed, SNR point, batch). The number of worker processes
therefore changes run time only, never the numbers drawn.
"""

import logging
import multiprocessing

import numpy as np

log = logging.getLogger(__name__)


def rng_stream(seed: int, point: int, batch: int) -> np.random.Generator:
    """Independent generator of batch `batch` of SNR point `point`."""
    sequence = np.random.SeedSequence(seed, spawn_key=(point, batch))
    return np.random.Generator(np.random.Philox(sequence))


class WorkerPool:
    """
    Ordered map over a :class:`multiprocessing.Pool`, or in-process.

    Use as a context manager. With ``processes`` None or 1 no pool is
    started and tasks run in the calling process.
    """

    def __init__(self, processes=None):
        if processes is not None and processes < 1:
            raise ValueError("number of processes has to be >= 1")
        self.processes = processes
        self._pool = None

    def __enter__(self):
        if self.processes and self.processes > 1:
            log.debug(f"Starting pool with {self.processes} processes")
            self._pool = multiprocessing.Pool(processes=self.processes)
        return self

    def __exit__(self, exc_type, exc_value, traceback):
        if self._pool is not None:
            if exc_type is None:
                self._pool.close()
            else:
                self._pool.terminate()
            self._pool.join()
            self._pool = None

    def map(self, func, tasks):
        if self._pool is None:
            return [func(task) for task in tasks]
        return self._pool.map(func, tasks)

    def imap(self, func, tasks, chunksize=1):
        """Lazy ordered map, results arrive in task order."""
        if self._pool is None:
            return map(func, tasks)
        return self._pool.imap(func, tasks, chunksize=chunksize)
