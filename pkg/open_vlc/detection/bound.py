"""
Pairwise error probabilities and the union bound on the BER of ML detection.

The bound is

    BER <= 1/(A·eta) · Σ_i Σ_{j≠i} d_H(i, j) · Q(r/(2σ) · ‖H(x_j - x_i)‖)

where d_H is the Hamming distance between the labels of x_i and x_j.
"""

from dataclasses import dataclass
from typing import Sequence

import numpy as np
from scipy.spatial.distance import pdist, squareform
from scipy.special import erfc

from open_vlc.modulation.distance import as_gain_matrix
from open_vlc.simulation.calibration import calibrate_sigma
from open_vlc.utils.exceptions import ConfigurationError


def q_function(u):
    """Gaussian tail probability Q(u) = ½ erfc(u / √2)."""
    return 0.5 * erfc(np.asarray(u, dtype=float) / np.sqrt(2.0))


def hamming(label_a, label_b) -> int:
    if len(label_a) != len(label_b):
        raise ValueError(f"labels differ in length: {len(label_a)} != {len(label_b)}")
    return sum(a != b for a, b in zip(label_a, label_b))


def pep(H, x1, x2, r: float, sigma: float) -> float:
    """Probability that ML detection decides for `x2` when `x1` was sent."""
    if sigma <= 0:
        raise ValueError("noise standard deviation has to be positive")
    diff = as_gain_matrix(H) @ (
        np.asarray(x2, dtype=float) - np.asarray(x1, dtype=float)
    )
    return float(q_function(r / (2.0 * sigma) * np.linalg.norm(diff)))


@dataclass(frozen=True)
class BoundInput:
    H: object
    signal_set: object
    r: float
    sigma: float

    def __post_init__(self):
        if self.sigma <= 0:
            raise ValueError("noise standard deviation has to be positive")


class UnionBound:
    """
    Union bound of one channel and signal set, evaluated for many σ.

    The pairwise image distances and label Hamming distances are computed
    once.
    """

    def __init__(self, H, signal_set, r: float):
        if len(signal_set) < 2:
            raise ConfigurationError("the union bound needs at least two signal vectors")
        images = np.asarray(signal_set.vectors) @ as_gain_matrix(H).T
        self.r = r
        self.size = len(signal_set)
        self.eta = signal_set.efficiency
        self.distance = squareform(pdist(images, "euclidean"))
        self.weights = signal_set.hamming_matrix().astype(float)
        np.fill_diagonal(self.weights, 0.0)

    def __call__(self, sigma: float) -> float:
        if sigma <= 0:
            raise ValueError("noise standard deviation has to be positive")
        terms = self.weights * q_function(self.r / (2.0 * sigma) * self.distance)
        # row sums first keep the order of the double sum fixed
        return float(terms.sum(axis=1).sum() / (self.size * self.eta))


def union_bound_ber(b: BoundInput) -> float:
    return UnionBound(b.H, b.signal_set, b.r)(b.sigma)


def bound_curve(H, signal_set, r: float, snr_grid: Sequence[float]) -> np.ndarray:
    """Union bound at each average received SNR (dB) of `snr_grid`."""
    bound = UnionBound(H, signal_set, r)
    return np.array(
        [bound(calibrate_sigma(H, signal_set, r, snr_db)) for snr_db in snr_grid]
    )
