"""
Room, LED grid and photodetector grid geometry.

Positions are in meters. A grid is laid out row-major from its minimum
(x, y) corner: cell index ``row * cols + col`` sits at
``center + ((col - (cols-1)/2) * d, (row - (rows-1)/2) * d, 0)``.
"""

from dataclasses import dataclass
from typing import List, NamedTuple, Tuple

import numpy as np

from open_vlc.utils.exceptions import ConfigurationError, GeometryError

DOWN = (0.0, 0.0, -1.0)
UP = (0.0, 0.0, 1.0)


class Vec3(NamedTuple):
    x: float
    y: float
    z: float

    def as_array(self) -> np.ndarray:
        return np.array(self, dtype=float)


def _unit(vector, name) -> Vec3:
    vector = np.asarray(vector, dtype=float)
    if vector.shape != (3,) or not np.all(np.isfinite(vector)):
        raise GeometryError(f"{name} has to be a finite 3-vector")
    if not np.isclose(np.linalg.norm(vector), 1.0, rtol=0, atol=1e-12):
        raise GeometryError(f"{name} has to be a unit vector, got {tuple(vector)}")
    return Vec3(*vector)


def _point(vector, name) -> Vec3:
    vector = np.asarray(vector, dtype=float)
    if vector.shape != (3,) or not np.all(np.isfinite(vector)):
        raise GeometryError(f"{name} has to be a finite 3-vector")
    return Vec3(*vector)


def normal_from_elevation(elevation_deg: float) -> Vec3:
    """Normal of a horizontal array; azimuth has no effect on it."""
    return Vec3(*UP) if elevation_deg > 0 else Vec3(*DOWN)


@dataclass(frozen=True)
class RoomConfig:
    length: float = 5.0
    width: float = 5.0
    height: float = 3.5
    tx_height: float = 3.0
    rx_height: float = 0.8

    def __post_init__(self):
        if min(self.length, self.width, self.height) <= 0:
            raise ConfigurationError("room dimensions have to be positive", "room")
        if not 0 < self.rx_height < self.tx_height <= self.height:
            raise ConfigurationError(
                "0 < rx_height < tx_height <= height is violated", "room"
            )

    @property
    def center(self) -> Tuple[float, float]:
        return self.length / 2, self.width / 2


@dataclass(frozen=True)
class Emitter:
    position: Vec3
    normal: Vec3 = Vec3(*DOWN)

    def __post_init__(self):
        object.__setattr__(self, "position", _point(self.position, "position"))
        object.__setattr__(self, "normal", _unit(self.normal, "emitter normal"))


@dataclass(frozen=True)
class Detector:
    position: Vec3
    normal: Vec3 = Vec3(*UP)
    area: float = 1.0e-4
    fov: float = np.deg2rad(85.0)
    responsivity: float = 0.75

    def __post_init__(self):
        object.__setattr__(self, "position", _point(self.position, "position"))
        object.__setattr__(self, "normal", _unit(self.normal, "detector normal"))
        if self.area <= 0:
            raise GeometryError("detector area has to be positive")
        if not 0 < self.fov <= np.pi / 2:
            raise GeometryError("detector FOV has to be in (0, pi/2]")
        if self.responsivity <= 0:
            raise GeometryError("responsivity has to be positive")


@dataclass(frozen=True)
class GridSpec:
    """
    Rectangular grid of ``rows x cols`` points with spacing `spacing`.

    Parameters
    ----------
    rows, cols: int
        Number of grid rows (along y) and columns (along x).
    spacing: float
        Distance between adjacent points, d_tx or d_rx, in m.
    center: Vec3
        Grid centroid; its z component is the plane height.
    room: RoomConfig, optional
        If given, the grid has to fit into the room footprint.
    """

    rows: int
    cols: int
    spacing: float
    center: Vec3
    room: RoomConfig = None

    def __post_init__(self):
        object.__setattr__(self, "center", _point(self.center, "grid center"))
        if self.rows < 1 or self.cols < 1:
            raise ConfigurationError("grid needs at least one row and column", "grid")
        if self.spacing <= 0:
            raise ConfigurationError("grid spacing has to be positive", "grid")

    @property
    def height(self) -> float:
        return self.center.z

    @property
    def size(self) -> int:
        return self.rows * self.cols

    @classmethod
    def centered(cls, rows, cols, spacing, height, room: RoomConfig):
        """Grid centered on the vertical axis through the room's floor-plan center."""
        return cls(rows, cols, spacing, Vec3(*room.center, height), room)


def grid_positions(spec: GridSpec) -> List[Vec3]:
    """
    Positions of all grid points, row-major from the (min-x, min-y) corner.

    Raises
    ------
    ConfigurationError
        If the grid exceeds the room footprint.
    """
    cols = (np.arange(spec.cols) - (spec.cols - 1) / 2) * spec.spacing
    rows = (np.arange(spec.rows) - (spec.rows - 1) / 2) * spec.spacing
    xs = spec.center.x + cols
    ys = spec.center.y + rows

    if spec.room is not None:
        eps = 1e-9
        if (
            xs.min() < -eps
            or ys.min() < -eps
            or xs.max() > spec.room.length + eps
            or ys.max() > spec.room.width + eps
        ):
            raise ConfigurationError(
                f"{spec.rows}x{spec.cols} grid with spacing {spec.spacing} m "
                "exceeds the room footprint",
                "grid",
            )
    return [Vec3(float(x), float(y), spec.center.z) for y in ys for x in xs]


def link_angles(e: Emitter, d: Detector) -> Tuple[float, float, float]:
    """
    Cosines of the emergence and incidence angles and the link distance.

    Returns
    -------
    tuple
        (cos_phi, cos_theta, R) with R in m.

    Raises
    ------
    GeometryError
        If emitter and detector coincide.
    """
    delta = d.position.as_array() - e.position.as_array()
    distance = float(np.linalg.norm(delta))
    if distance == 0.0:
        raise GeometryError(f"emitter and detector coincide at {tuple(e.position)}")
    cos_phi = float(np.dot(e.normal, delta) / distance)
    cos_theta = float(np.dot(d.normal, -delta) / distance)
    return cos_phi, cos_theta, distance


def link_angle_arrays(emitters, detectors):
    """Vectorized :func:`link_angles` over all pairs, shaped (N_r, N_t)."""
    tx = np.array([e.position for e in emitters], dtype=float)
    rx = np.array([d.position for d in detectors], dtype=float)
    tx_normals = np.array([e.normal for e in emitters], dtype=float)
    rx_normals = np.array([d.normal for d in detectors], dtype=float)

    delta = rx[:, None, :] - tx[None, :, :]
    distance = np.linalg.norm(delta, axis=-1)
    if np.any(distance == 0.0):
        raise GeometryError("an emitter and a detector coincide")
    cos_phi = np.einsum("jk,ijk->ij", tx_normals, delta) / distance
    cos_theta = -np.einsum("ik,ijk->ij", rx_normals, delta) / distance
    return cos_phi, cos_theta, distance
