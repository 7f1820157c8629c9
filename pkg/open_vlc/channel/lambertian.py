"""
Lambertian line-of-sight channel gains and the N_r x N_t channel matrix.
"""

import logging
from dataclasses import dataclass
from typing import Sequence

import numpy as np
import pandas as pd

from open_vlc.channel.geometry import Detector, Emitter, link_angle_arrays, link_angles
from open_vlc.utils.exceptions import ConfigurationError

log = logging.getLogger(__name__)


def mode_number(half_power_semiangle: float) -> float:
    """
    Lambertian mode number n = -ln 2 / ln cos(Φ½).

    Parameters
    ----------
    half_power_semiangle: float
        Φ½ in radians, 0 < Φ½ < π/2.
    """
    if not 0 < half_power_semiangle < np.pi / 2:
        raise ConfigurationError(
            f"half-power semiangle has to be in (0, pi/2), got {half_power_semiangle}",
            "transmitter.half_power_semiangle",
        )
    return -np.log(2.0) / np.log(np.cos(half_power_semiangle))


@dataclass(frozen=True)
class LambertianParams:
    half_power_semiangle: float

    def __post_init__(self):
        # validates the range
        mode_number(self.half_power_semiangle)

    @property
    def mode_number(self) -> float:
        return mode_number(self.half_power_semiangle)

    @classmethod
    def from_degrees(cls, degrees: float) -> "LambertianParams":
        return cls(float(np.deg2rad(degrees)))


def _gain(cos_phi, cos_theta, distance, n, area, fov):
    visible = (cos_theta >= np.cos(fov)) & (cos_phi >= 0)
    # clip keeps cos_phi**n real before masking
    gain = (
        (n + 1)
        / (2 * np.pi)
        * np.power(np.clip(cos_phi, 0.0, None), n)
        * cos_theta
        * area
        / distance**2
    )
    return np.where(visible, gain, 0.0)


def los_gain(e: Emitter, d: Detector, params: LambertianParams) -> float:
    """
    LOS power gain between one LED and one photodetector.

    Zero outside the detector FOV and for detectors behind the LED plane.
    """
    cos_phi, cos_theta, distance = link_angles(e, d)
    return float(
        _gain(cos_phi, cos_theta, distance, params.mode_number, d.area, d.fov)
    )


@dataclass(frozen=True, eq=False)
class ChannelMatrix:
    """
    Nonnegative channel gains, rows are detectors and columns are LEDs.
    """

    H: np.ndarray

    def __post_init__(self):
        H = np.array(self.H, dtype=float)
        if H.ndim != 2 or H.size == 0:
            raise ConfigurationError("channel matrix has to be a non-empty 2-d array")
        if np.any(H < 0):
            raise ConfigurationError("channel gains have to be nonnegative")
        H.setflags(write=False)
        object.__setattr__(self, "H", H)

    @property
    def n_r(self) -> int:
        return self.H.shape[0]

    @property
    def n_t(self) -> int:
        return self.H.shape[1]

    def columns(self, cells: Sequence[int]) -> "ChannelMatrix":
        """Sub-matrix of the LEDs occupying `cells`."""
        return ChannelMatrix(self.H[:, list(cells)])

    def to_dataframe(self) -> pd.DataFrame:
        return pd.DataFrame(
            self.H,
            index=pd.Index([f"pd{i}" for i in range(self.n_r)], name="detector"),
            columns=[f"led{j}" for j in range(self.n_t)],
        )


def build_channel(
    tx: Sequence[Emitter], rx: Sequence[Detector], params: LambertianParams
) -> ChannelMatrix:
    """
    Channel matrix with ``H[i, j] = los_gain(tx[j], rx[i], params)``.
    """
    if not tx or not rx:
        raise ConfigurationError("channel needs at least one LED and one detector")
    cos_phi, cos_theta, distance = link_angle_arrays(tx, rx)
    area = np.array([d.area for d in rx])[:, None]
    fov = np.array([d.fov for d in rx])[:, None]
    H = _gain(cos_phi, cos_theta, distance, params.mode_number, area, fov)
    log.debug(
        f"Built {H.shape[0]}x{H.shape[1]} channel, "
        f"gains in [{H.min():.3e}, {H.max():.3e}]"
    )
    return ChannelMatrix(H)
