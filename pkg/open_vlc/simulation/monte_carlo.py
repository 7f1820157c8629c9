"""
Monte Carlo bit error rate simulation.

Per channel use a uniformly distributed label is sent, the received vector
``y = r H x + n`` with i.i.d. n ~ N(0, σ²) per detector is ML-detected and
the Hamming distance between sent and detected label is counted. σ follows
from the target SNR, see :mod:`open_vlc.simulation.calibration`.
"""

import logging
from dataclasses import dataclass
from typing import List, NamedTuple, Optional, Tuple

import numpy as np
from tqdm import tqdm

from open_vlc.detection.bound import UnionBound
from open_vlc.detection.ml import ml_detect_batch, received_images
from open_vlc.simulation.calibration import calibrate_sigma
from open_vlc.simulation.parallel import WorkerPool, rng_stream
from open_vlc.utils.exceptions import ConfigurationError

log = logging.getLogger(__name__)


class BerPoint(NamedTuple):
    snr_db: float
    bits_simulated: int
    bit_errors: int
    ber_sim: float
    ber_bound: float
    low_confidence: bool = False


@dataclass(frozen=True)
class SimPlan:
    """
    Everything a BER sweep depends on.

    Attributes
    ----------
    signal_set: SignalSet
    H: ChannelMatrix
        Channel of the LEDs the signal set addresses.
    responsivity: float
        r in A/W.
    snr_db: tuple of float
        SNR grid in dB.
    seed: int
        Master seed of all random streams.
    min_bit_errors, max_channel_uses: int
        Stopping rule. A point ends as soon as `min_bit_errors` errors were
        counted or `max_channel_uses` channel uses were simulated.
    batch_size, batches_per_round: int
        Channel uses per batch and batches between two checks of the
        stopping rule.
    reference_power: float, optional
        P_r² the SNR grid refers to, defaults to the received power of `H`.
        A fixed value keeps σ of each SNR independent of `H`.
    """

    signal_set: object
    H: object
    responsivity: float
    snr_db: Tuple[float, ...]
    seed: int = 42
    min_bit_errors: int = 400
    max_channel_uses: int = 20_000_000
    batch_size: int = 20_000
    batches_per_round: int = 8
    reference_power: Optional[float] = None

    def __post_init__(self):
        object.__setattr__(self, "snr_db", tuple(float(s) for s in self.snr_db))
        if not self.snr_db:
            raise ConfigurationError("SNR grid is empty", "sweep.snr_db")
        for name in (
            "min_bit_errors",
            "max_channel_uses",
            "batch_size",
            "batches_per_round",
        ):
            if getattr(self, name) < 1:
                raise ConfigurationError("has to be positive", f"sim.{name}")
        if self.responsivity <= 0:
            raise ConfigurationError("has to be positive", "receiver.responsivity")

    @property
    def scheme(self):
        return self.signal_set.scheme


@dataclass(frozen=True)
class BatchTask:
    images: np.ndarray
    sigma: float
    seed: int
    point: int
    batch: int
    size: int


def popcount(values: np.ndarray) -> np.ndarray:
    """Number of set bits of each non-negative integer below 2**32."""
    as_bytes = np.ascontiguousarray(values, dtype=np.uint32).view(np.uint8)
    return np.unpackbits(as_bytes.reshape(-1, 4), axis=1).sum(axis=1)


def simulate_batch(task: BatchTask) -> Tuple[int, int]:
    """
    Simulate one batch of channel uses.

    A uniform index in [0, 2**eta) is the same as eta uniform bits since
    vector i carries the binary label of i.

    Returns
    -------
    tuple of int
        (channel uses, bit errors)
    """
    rng = rng_stream(task.seed, task.point, task.batch)
    images = task.images
    sent = rng.integers(0, images.shape[0], size=task.size)
    noise = rng.standard_normal((task.size, images.shape[1]))
    received = images[sent] + task.sigma * noise
    detected = ml_detect_batch(received, images)
    errors = int(popcount(np.bitwise_xor(sent, detected)).sum())
    return task.size, errors


def _round_sizes(plan: SimPlan, simulated: int) -> List[int]:
    sizes = []
    remaining = plan.max_channel_uses - simulated
    while remaining > 0 and len(sizes) < plan.batches_per_round:
        sizes.append(min(plan.batch_size, remaining))
        remaining -= sizes[-1]
    return sizes


def run_point(
    plan: SimPlan,
    snr_db: float,
    point_index: Optional[int] = None,
    pool: Optional[WorkerPool] = None,
    bound: Optional[UnionBound] = None,
) -> BerPoint:
    """
    Simulate one SNR point until the stopping rule of `plan` holds.

    Parameters
    ----------
    plan: SimPlan
    snr_db: float
    point_index: int, optional
        Selects the random streams. Defaults to the position of `snr_db` in
        the plan's SNR grid (0 if it is not on the grid).
    pool: WorkerPool, optional
        Runs the batches of a round in parallel.
    bound: UnionBound, optional
        Precomputed bound of the plan's channel and signal set.

    Returns
    -------
    BerPoint
        ``low_confidence`` is set if the channel-use cap ended the point
        before `min_bit_errors` errors were counted.
    """
    if point_index is None:
        point_index = plan.snr_db.index(snr_db) if snr_db in plan.snr_db else 0
    r = plan.responsivity
    sigma = calibrate_sigma(plan.H, plan.signal_set, r, snr_db, plan.reference_power)
    images = received_images(plan.H, plan.signal_set, r)
    bound = bound or UnionBound(plan.H, plan.signal_set, r)
    eta = plan.signal_set.efficiency
    pool = pool or WorkerPool()

    channel_uses, bit_errors, batch = 0, 0, 0
    while bit_errors < plan.min_bit_errors and channel_uses < plan.max_channel_uses:
        tasks = [
            BatchTask(images, sigma, plan.seed, point_index, batch + i, size)
            for i, size in enumerate(_round_sizes(plan, channel_uses))
        ]
        batch += len(tasks)
        for uses, errors in pool.map(simulate_batch, tasks):
            channel_uses += uses
            bit_errors += errors

    bits = channel_uses * eta
    low_confidence = bit_errors < plan.min_bit_errors
    if low_confidence:
        log.debug(
            f"{snr_db} dB: only {bit_errors} bit errors "
            f"after {channel_uses} channel uses"
        )
    return BerPoint(
        snr_db=float(snr_db),
        bits_simulated=bits,
        bit_errors=bit_errors,
        ber_sim=bit_errors / bits,
        ber_bound=bound(sigma),
        low_confidence=low_confidence,
    )


def run_sweep(
    plan: SimPlan, threads: Optional[int] = None, progress: bool = True
) -> List[BerPoint]:
    """
    One :class:`BerPoint` per entry of the plan's SNR grid, in grid order.

    `threads` sets the number of worker processes; results do not depend on it.
    """
    bound = UnionBound(plan.H, plan.signal_set, plan.responsivity)
    points = []
    with WorkerPool(threads) as pool:
        grid = tqdm(
            plan.snr_db,
            desc=f"Simulating {plan.scheme.name}",
            unit="point",
            disable=not progress,
        )
        for index, snr_db in enumerate(grid):
            points.append(run_point(plan, snr_db, index, pool, bound))
    return points
