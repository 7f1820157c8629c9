"""
Link set-up of an experiment config: room, grids, channel, placement,
activation patterns and signal set.
"""

import logging
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

import numpy as np

from open_vlc.channel.geometry import (
    Detector,
    GridSpec,
    RoomConfig,
    grid_positions,
    normal_from_elevation,
)
from open_vlc.channel.lambertian import ChannelMatrix, LambertianParams
from open_vlc.modulation.patterns import select_patterns
from open_vlc.modulation.signal_set import SchemeConfig, SignalSet, build_signal_set
from open_vlc.placement.optimize import (
    PlacementResult,
    full_grid_channel,
    optimize_placement,
)
from open_vlc.simulation.monte_carlo import SimPlan
from open_vlc.utils.config import ExperimentConfig

log = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class LinkSystem:
    """
    Everything derived from an :class:`ExperimentConfig` before simulation.

    Attributes
    ----------
    config: ExperimentConfig
    room: RoomConfig
    tx_grid, rx_grid: GridSpec
    detectors: list of Detector
    params: LambertianParams
    scheme: SchemeConfig
    grid_channel: ChannelMatrix
        One column per transmitter grid cell.
    cells: tuple of int
        Occupied transmitter cells, LED j sits in ``cells[j]``.
    H: ChannelMatrix
        Channel of the occupied cells.
    signal_set: SignalSet
    placement: PlacementResult or None
        Search result if the placement was optimized.
    """

    config: ExperimentConfig
    room: RoomConfig
    tx_grid: GridSpec
    rx_grid: GridSpec
    detectors: List[Detector]
    params: LambertianParams
    scheme: SchemeConfig
    grid_channel: ChannelMatrix
    cells: Tuple[int, ...]
    H: ChannelMatrix
    signal_set: SignalSet
    placement: Optional[PlacementResult] = None

    @property
    def responsivity(self) -> float:
        return self.config.receiver["responsivity"]

    @property
    def patterns(self):
        return self.signal_set.patterns

    def sim_plan(
        self,
        snr_db: Optional[Sequence[float]] = None,
        reference_power: Optional[float] = None,
    ) -> SimPlan:
        sim = self.config.sim
        return SimPlan(
            signal_set=self.signal_set,
            H=self.H,
            responsivity=self.responsivity,
            snr_db=self.config.sweep["snr_db"] if snr_db is None else snr_db,
            seed=sim["seed"],
            min_bit_errors=sim["min_bit_errors"],
            max_channel_uses=sim["max_channel_uses"],
            batch_size=sim["batch_size"],
            batches_per_round=sim["batches_per_round"],
            reference_power=reference_power,
        )


def transmitter_normal(config: ExperimentConfig):
    """Direction the LEDs of a config face."""
    return normal_from_elevation(config.transmitter["elevation"])


def build_geometry(config: ExperimentConfig):
    """Room, transmitter grid, receiver grid and detectors of a config."""
    tx, rx = config.transmitter, config.receiver
    room = RoomConfig(
        length=config.room["length"],
        width=config.room["width"],
        height=config.room["height"],
        tx_height=tx["height"],
        rx_height=rx["height"],
    )
    tx_grid = GridSpec.centered(
        tx["rows"], tx["cols"], tx["spacing"], tx["height"], room
    )
    rx_grid = GridSpec.centered(
        rx["rows"], rx["cols"], rx["spacing"], rx["height"], room
    )
    detectors = [
        Detector(
            position,
            normal=normal_from_elevation(rx["elevation"]),
            area=rx["area"],
            fov=float(np.deg2rad(rx["fov"])),
            responsivity=rx["responsivity"],
        )
        for position in grid_positions(rx_grid)
    ]
    return room, tx_grid, rx_grid, detectors


def build_system(
    config: ExperimentConfig,
    threads: Optional[int] = None,
    cells: Optional[Sequence[int]] = None,
    patterns=None,
    progress: bool = True,
) -> LinkSystem:
    """
    Resolve placement and activation patterns of a config.

    Parameters
    ----------
    config: ExperimentConfig
    threads: int, optional
        Worker processes of the placement search.
    cells: list of int, optional
        Use these transmitter cells instead of the config's placement.
    patterns: list of tuple, optional
        Use these activation patterns instead of the config's pattern policy.
    progress: bool
        Show progress bars.

    Returns
    -------
    LinkSystem
    """
    room, tx_grid, rx_grid, detectors = build_geometry(config)
    params = LambertianParams.from_degrees(config.transmitter["half_power_semiangle"])
    scheme = SchemeConfig.from_dict(config.scheme)
    normal = transmitter_normal(config)
    grid_channel = full_grid_channel(tx_grid, detectors, params, normal)

    placement = None
    if cells is None:
        mode = config.transmitter["placement"]
        if mode == "full":
            cells = range(tx_grid.size)
        elif mode == "auto":
            placement = optimize_placement(
                tx_grid,
                detectors,
                scheme,
                params,
                threads=threads,
                rx_grid=rx_grid,
                progress=progress,
                normal=normal,
            )
            cells = placement.best.cells
            patterns = patterns or placement.best.patterns
        else:
            cells = mode
    cells = tuple(int(c) for c in cells)
    H = grid_channel.columns(cells)

    if patterns is None:
        patterns = select_patterns(
            scheme.n_t,
            scheme.n_a,
            scheme.pattern_count,
            scheme.pattern_policy,
            H,
            scheme,
            scheme.patterns,
        )
    signal_set = build_signal_set(scheme, patterns)
    log.debug(f"{scheme.name}: LEDs in cells {cells}, patterns {signal_set.patterns}")
    return LinkSystem(
        config=config,
        room=room,
        tx_grid=tx_grid,
        rx_grid=rx_grid,
        detectors=detectors,
        params=params,
        scheme=scheme,
        grid_channel=grid_channel,
        cells=cells,
        H=H,
        signal_set=signal_set,
        placement=placement,
    )
