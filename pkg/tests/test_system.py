import numpy as np

from open_vlc.channel.geometry import Vec3
from open_vlc.system import build_system, transmitter_normal


def test_downward_leds_reach_the_detectors(make_config):
    system = build_system(make_config(), progress=False)

    assert transmitter_normal(system.config) == Vec3(0.0, 0.0, -1.0)
    assert np.all(system.H.H > 0)
    assert np.all(system.grid_channel.H > 0)


def test_upward_leds_give_a_dark_channel(make_config):
    config = make_config(
        {"kind": "GSM", "n_t": 4, "n_a": 2, "m": 2, "pattern_policy": "lexicographic"},
        transmitter={"elevation": 90.0},
    )
    system = build_system(config, progress=False)

    assert transmitter_normal(config) == Vec3(0.0, 0.0, 1.0)
    assert system.H.H.shape == (4, 4)
    assert np.all(system.H.H == 0)
    assert np.all(system.grid_channel.H == 0)
