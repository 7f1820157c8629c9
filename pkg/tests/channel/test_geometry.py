import numpy as np
import pytest

from open_vlc.channel.geometry import (
    Detector,
    Emitter,
    GridSpec,
    RoomConfig,
    Vec3,
    grid_positions,
    link_angle_arrays,
    link_angles,
    normal_from_elevation,
)
from open_vlc.utils.exceptions import ConfigurationError, GeometryError


@pytest.fixture
def room():
    return RoomConfig()


def test_grid_positions_row_major_from_min_corner(room):
    grid = GridSpec.centered(2, 2, 0.6, 3.0, room)
    positions = grid_positions(grid)

    assert all(isinstance(p, Vec3) for p in positions)
    assert np.allclose(
        np.array(positions),
        [[2.2, 2.2, 3.0], [2.8, 2.2, 3.0], [2.2, 2.8, 3.0], [2.8, 2.8, 3.0]],
    )


def test_grid_positions_rectangular_grid(room):
    grid = GridSpec.centered(2, 3, 0.5, 3.0, room)
    positions = np.array(grid_positions(grid))

    assert positions.shape == (6, 3)
    # second cell is one step along x, fourth cell starts the second row
    assert np.allclose(positions[1] - positions[0], [0.5, 0.0, 0.0])
    assert np.allclose(positions[3] - positions[0], [0.0, 0.5, 0.0])
    assert np.allclose(positions[:, :2].mean(axis=0), room.center)


def test_grid_exceeding_room_footprint(room):
    grid = GridSpec.centered(4, 4, 2.0, 3.0, room)
    with pytest.raises(ConfigurationError, match="footprint"):
        grid_positions(grid)


def test_grid_spec_rejects_empty_grid():
    with pytest.raises(ConfigurationError):
        GridSpec(0, 2, 0.5, Vec3(0.0, 0.0, 3.0))
    with pytest.raises(ConfigurationError):
        GridSpec(2, 2, 0.0, Vec3(0.0, 0.0, 3.0))


def test_room_heights_have_to_be_ordered():
    with pytest.raises(ConfigurationError):
        RoomConfig(tx_height=0.5, rx_height=0.8)
    with pytest.raises(ConfigurationError):
        RoomConfig(height=2.0, tx_height=3.0)


def test_link_angles_straight_down():
    e = Emitter((1.0, 1.0, 3.0))
    d = Detector((1.0, 1.0, 0.8))

    cos_phi, cos_theta, distance = link_angles(e, d)
    assert cos_phi == pytest.approx(1.0)
    assert cos_theta == pytest.approx(1.0)
    assert distance == pytest.approx(2.2)


def test_link_angles_coincident_positions():
    with pytest.raises(GeometryError):
        link_angles(Emitter((1.0, 1.0, 1.0)), Detector((1.0, 1.0, 1.0)))


def test_link_angle_arrays_match_scalar_version():
    emitters = [Emitter((2.2, 2.2, 3.0)), Emitter((2.8, 2.5, 3.0))]
    detectors = [Detector((2.45, 2.45, 0.8)), Detector((2.0, 3.0, 0.8))]

    cos_phi, cos_theta, distance = link_angle_arrays(emitters, detectors)
    assert cos_phi.shape == (2, 2)
    for i, d in enumerate(detectors):
        for j, e in enumerate(emitters):
            expected = link_angles(e, d)
            assert cos_phi[i, j] == pytest.approx(expected[0])
            assert cos_theta[i, j] == pytest.approx(expected[1])
            assert distance[i, j] == pytest.approx(expected[2])


def test_normals_have_to_be_unit_vectors():
    with pytest.raises(GeometryError):
        Emitter((0.0, 0.0, 3.0), normal=(0.0, 0.0, -2.0))
    with pytest.raises(GeometryError):
        Detector((0.0, 0.0, 1.0), normal=(np.nan, 0.0, 1.0))


def test_detector_fov_range():
    with pytest.raises(GeometryError):
        Detector((0.0, 0.0, 1.0), fov=0.0)
    with pytest.raises(GeometryError):
        Detector((0.0, 0.0, 1.0), fov=np.pi)


def test_normal_from_elevation():
    assert normal_from_elevation(90.0) == Vec3(0.0, 0.0, 1.0)
    assert normal_from_elevation(-90.0) == Vec3(0.0, 0.0, -1.0)
