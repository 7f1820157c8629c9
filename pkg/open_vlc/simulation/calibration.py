"""
Noise calibration from the average received SNR

    snr = r² P_r² / σ²,   P_r² = 1/N_r · Σ_i E[(H_i x)²]

with the expectation taken uniformly over the signal set.
"""

from dataclasses import dataclass
from typing import Optional

import numpy as np

from open_vlc.modulation.distance import as_gain_matrix
from open_vlc.utils.exceptions import CalibrationError, ConfigurationError


@dataclass(frozen=True)
class SnrCalibration:
    received_power: float
    sigma: float
    snr_db: float


def received_power(H, signal_set) -> float:
    """P_r², mean of ‖H x‖² / N_r over the signal set."""
    H = as_gain_matrix(H)
    vectors = np.atleast_2d(
        np.asarray(getattr(signal_set, "vectors", signal_set), dtype=float)
    )
    if vectors.size == 0:
        raise ConfigurationError("cannot calibrate on an empty signal set")
    images = vectors @ H.T
    return float((images**2).sum(axis=1).mean() / H.shape[0])


def snr_calibration(
    H, signal_set, r: float, snr_db: float, power: Optional[float] = None
) -> SnrCalibration:
    """
    σ for an average received SNR of `snr_db`.

    `power` replaces the P_r² of `H` and the signal set, e.g. the received
    power of a reference geometry the SNR grid refers to.
    """
    if power is None:
        power = received_power(H, signal_set)
    if power <= 0.0:
        raise CalibrationError(
            "received signal power is zero, no LED is visible to any detector"
        )
    sigma = r * np.sqrt(power) / 10 ** (snr_db / 20)
    return SnrCalibration(received_power=power, sigma=float(sigma), snr_db=snr_db)


def calibrate_sigma(
    H, signal_set, r: float, snr_db: float, power: Optional[float] = None
) -> float:
    """Noise standard deviation giving an average received SNR of `snr_db`."""
    return snr_calibration(H, signal_set, r, snr_db, power).sigma
