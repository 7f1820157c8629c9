"""
The conftest.py file serves as a means of providing fixtures for an entire directory.
Fixtures defined in a conftest.py can be used by any test in that package without
needing to import them (pytest will automatically discover them).

https://docs.pytest.org/en/7.2.x/reference/fixtures.html
"""

import copy

import numpy as np
import pytest
import yaml

from open_vlc import Experiment
from open_vlc.channel.lambertian import ChannelMatrix
from open_vlc.modulation.signal_set import SchemeConfig, build_signal_set
from open_vlc.modulation.patterns import all_patterns
from open_vlc.utils.config import config_from_dict

# Shallow simulation settings keeping every test run below a few seconds
FAST_SIM = {
    "seed": 7,
    "min_bit_errors": 50,
    "max_channel_uses": 20_000,
    "batch_size": 2_000,
    "batches_per_round": 2,
}


@pytest.fixture
def make_config():
    """
    Factory to create validated experiment configs.

    Parameters
    ----------
    scheme: dict, optional
        Scheme section, defaults to GSM(4, 2, 2) on a full 2x2 LED grid.
    **sections
        Further config sections, merged into the defaults of this fixture.

    Returns
    -------
        ExperimentConfig
    """

    def _make_config(scheme=None, **sections):
        raw = {
            "transmitter": {"rows": 2, "cols": 2, "placement": "full"},
            "scheme": scheme or {"kind": "GSM", "n_t": 4, "n_a": 2, "m": 2},
            "sweep": {"snr_db": [60.0, 80.0]},
            "sim": copy.deepcopy(FAST_SIM),
        }
        for name, values in sections.items():
            raw.setdefault(name, {}).update(values)
        return config_from_dict(raw)

    return _make_config


@pytest.fixture
def make_config_file(tmp_path):
    """Factory writing a raw config mapping to a YAML file, returns its path."""

    def _make_config_file(raw, name="config.yml"):
        path = tmp_path / name
        path.write_text(yaml.safe_dump(raw), encoding="utf-8")
        return str(path)

    return _make_config_file


@pytest.fixture
def make_experiment(make_config, tmp_path):
    """Factory to create Experiment objects writing into a temporary directory."""

    def _make_experiment(scheme=None, **sections):
        config = make_config(scheme, **sections)
        return Experiment(config, out=str(tmp_path / "results"), progress=False)

    return _make_experiment


@pytest.fixture
def make_signal_set():
    """Factory for signal sets with lexicographic activation patterns."""

    def _make_signal_set(kind="GSM", n_t=4, n_a=2, m=2, **kwargs):
        scheme = SchemeConfig(kind=kind, n_t=n_t, n_a=n_a, m=m, **kwargs)
        patterns = all_patterns(n_t, n_a)[: scheme.pattern_count]
        return build_signal_set(scheme, scheme.patterns or patterns)

    return _make_signal_set


@pytest.fixture
def random_channel():
    """Factory for reproducible positive channel matrices."""

    def _random_channel(n_r, n_t, seed=0, scale=1e-6):
        rng = np.random.default_rng(seed)
        return ChannelMatrix(scale * (0.5 + rng.random((n_r, n_t))))

    return _random_channel
