"""BER over a geometry parameter, d_tx or the half-power semiangle."""

import logging
from dataclasses import dataclass, field
from typing import List, Optional, Sequence

import numpy as np
import pandas as pd
from tqdm import tqdm

from open_vlc.simulation.calibration import received_power
from open_vlc.simulation.monte_carlo import BerPoint, run_sweep
from open_vlc.system import build_system
from open_vlc.utils.config import ExperimentConfig
from open_vlc.utils.constants import CSV_HEADER, SWEEP_PARAMETERS
from open_vlc.utils.exceptions import ConfigurationError, GeometryError

log = logging.getLogger(__name__)

# config field changed by each sweep parameter
_TRANSMITTER_FIELD = {"d_tx": "spacing", "half_power_semiangle": "half_power_semiangle"}


@dataclass(frozen=True)
class ParameterSweep:
    """
    BER per (parameter value, SNR).

    ``points[i]`` is the list of BerPoints of ``values[i]``, or None if the
    geometry of that value is invalid; ``errors[i]`` then holds the reason.
    """

    parameter: str
    values: List[float]
    snr_db: List[float]
    points: List[Optional[List[BerPoint]]] = field(default_factory=list)
    errors: List[Optional[str]] = field(default_factory=list)

    def ber_matrix(self, column: str = "ber_sim") -> np.ndarray:
        """Shape (len(values), len(snr_db)), NaN for invalid values."""
        matrix = np.full((len(self.values), len(self.snr_db)), np.nan)
        for i, points in enumerate(self.points):
            if points is not None:
                matrix[i] = [getattr(p, column) for p in points]
        return matrix

    def to_dataframe(self) -> pd.DataFrame:
        rows = []
        for value, points, error in zip(self.values, self.points, self.errors):
            for j, snr_db in enumerate(self.snr_db):
                if points is None:
                    row = dict.fromkeys(CSV_HEADER)
                    row["snr_db"] = snr_db
                else:
                    row = dict(zip(CSV_HEADER, points[j]))
                rows.append({self.parameter: value, **row, "error": error or ""})
        return pd.DataFrame(rows, columns=[self.parameter] + CSV_HEADER + ["error"])


def sweep_parameter(
    config: ExperimentConfig,
    parameter: str,
    values: Sequence[float],
    threads: Optional[int] = None,
    progress: bool = True,
) -> ParameterSweep:
    """
    Simulate the config's SNR grid for each value of a transmitter parameter.

    The placement and the activation patterns are resolved once for `config`
    and kept for every value; only the geometry and channel are rebuilt. The
    SNR grid refers to the received power of `config`'s own geometry, so σ
    of an SNR is the same for every value and a weaker channel shows up as a
    higher BER.

    Parameters
    ----------
    config: ExperimentConfig
    parameter: {'d_tx', 'half_power_semiangle'}
        LED spacing in m or half-power semiangle in degrees.
    values: list of float
    threads: int, optional
        Worker processes of the simulation.
    progress: bool

    Returns
    -------
    ParameterSweep
        Values whose geometry is invalid, e.g. a grid larger than the room,
        get an error entry instead of BER points.
    """
    if parameter not in SWEEP_PARAMETERS:
        raise ConfigurationError(
            f"has to be one of {SWEEP_PARAMETERS}", "sweep.parameter"
        )
    if not values:
        raise ConfigurationError("needs at least one value", "sweep.values")

    base = build_system(config, threads=threads, progress=progress)
    power = received_power(base.H, base.signal_set)
    log.info(f"Sweeping {parameter} with the noise level of P_r²={power:.4e}")
    result = ParameterSweep(
        parameter=parameter,
        values=[float(v) for v in values],
        snr_db=list(config.sweep["snr_db"]),
    )
    for value in tqdm(result.values, desc=f"Sweeping {parameter}", disable=not progress):
        try:
            swept = config.replace(transmitter={_TRANSMITTER_FIELD[parameter]: value})
            system = build_system(
                swept, cells=base.cells, patterns=base.patterns, progress=False
            )
        except (ConfigurationError, GeometryError) as e:
            log.warning(f"{parameter}={value} skipped: {e}")
            result.points.append(None)
            result.errors.append(str(e))
            continue
        result.points.append(
            run_sweep(
                system.sim_plan(reference_power=power),
                threads=threads,
                progress=False,
            )
        )
        result.errors.append(None)
    return result
