import os

import pytest

from open_vlc.modulation.signal_set import SchemeConfig
from open_vlc.utils.config import (
    config_from_dict,
    create_data_dir,
    get_project_home_dir,
    load_config,
    write_config,
)
from open_vlc.utils.constants import DEFAULT_CONFIG
from open_vlc.utils.exceptions import ConfigurationError

GSM_7_2_4 = {"scheme": {"kind": "GSM", "n_t": 7, "n_a": 2, "m": 4}}


def test_empty_config_file(make_config_file):
    path = make_config_file(None)
    with pytest.raises(ConfigurationError) as e:
        load_config(path)
    assert e.value.field == "scheme"


def test_missing_config_file(tmp_path):
    with pytest.raises(ConfigurationError, match="does not exist"):
        load_config(str(tmp_path / "missing.yml"))


def test_unparsable_config_file(tmp_path):
    path = tmp_path / "broken.yml"
    path.write_text("scheme: [kind: GSM", encoding="utf-8")
    with pytest.raises(ConfigurationError, match="could not parse"):
        load_config(str(path))


def test_defaults_are_expanded(make_config_file):
    config = load_config(make_config_file(GSM_7_2_4))

    assert config.room == DEFAULT_CONFIG["room"]
    assert config.transmitter["half_power_semiangle"] == 60.0
    assert config.receiver["fov"] == 85.0
    assert config.sim["seed"] == 42
    assert config.label == "gsm_7_2_4"
    assert SchemeConfig.from_dict(config.scheme).efficiency == 8


def test_config_file_roundtrip(tmp_path):
    config = config_from_dict(
        {
            **GSM_7_2_4,
            "transmitter": {"placement": [0, 3, 5, 6, 9, 10, 15]},
            "sweep": {"snr_db": [10, 20.5]},
        }
    )
    path = str(tmp_path / "written.yml")
    write_config(config, path)

    assert load_config(path) == config
    assert config.sweep["snr_db"] == [10.0, 20.5]


@pytest.mark.parametrize(
    "raw, field",
    [
        ({"transmitter": {"half_power_semiangle": 120}}, "transmitter.half_power_semiangle"),
        ({"transmitter": {"half_power_semiangle": 0}}, "transmitter.half_power_semiangle"),
        ({"receiver": {"fov": 0}}, "receiver.fov"),
        ({"receiver": {"elevation": 45}}, "receiver.elevation"),
        ({"receiver": {"height": 3.2}}, "receiver.height"),
        ({"transmitter": {"height": 4.0}}, "transmitter.height"),
        ({"transmitter": {"spacing": 3.0}}, "transmitter.spacing"),
        ({"transmitter": {"placement": "center"}}, "transmitter.placement"),
        ({"transmitter": {"placement": [0, 1, 2]}}, "transmitter.placement"),
        ({"transmitter": {"placement": [0, 1, 1, 2, 3, 4, 5]}}, "transmitter.placement"),
        ({"transmitter": {"placement": "full"}}, "transmitter.placement"),
        ({"room": {"length": -5}}, "room.length"),
        ({"sweep": {"snr_db": []}}, "sweep.snr_db"),
        ({"sweep": {"parameter": "fov", "values": [1.0]}}, "sweep.parameter"),
        ({"sweep": {"parameter": "d_tx"}}, "sweep.values"),
        ({"sim": {"seed": -1}}, "sim.seed"),
        ({"sim": {"max_channel_uses": 0}}, "sim.max_channel_uses"),
        ({"scheme": {"n_a": 8}}, "scheme.n_a"),
        ({"scheme": {"kind": "SM"}}, "scheme.n_a"),
        ({"scheme": {"pattern_policy": "explicit"}}, "scheme.patterns"),
        ({"scheme": {"patterns": [[0, 1]]}}, "scheme.patterns"),
        ({"scheme": {"kind": "QAM"}}, "scheme.kind"),
    ],
)
def test_invalid_fields(raw, field):
    sections = {"scheme": dict(GSM_7_2_4["scheme"])}
    for name, values in raw.items():
        sections.setdefault(name, {}).update(values)

    with pytest.raises(ConfigurationError) as e:
        config_from_dict(sections)
    assert e.value.field == field
    assert str(e.value).startswith(field)


def test_unknown_keys():
    with pytest.raises(ConfigurationError) as e:
        config_from_dict({**GSM_7_2_4, "plotting": {}})
    assert e.value.field == "plotting"

    with pytest.raises(ConfigurationError) as e:
        config_from_dict({**GSM_7_2_4, "receiver": {"gain": 2.0}})
    assert e.value.field == "receiver.gain"


def test_azimuth_is_accepted():
    config = config_from_dict({**GSM_7_2_4, "receiver": {"azimuth": 30}})
    assert config.receiver["azimuth"] == 30.0


def test_replace_revalidates():
    config = config_from_dict(GSM_7_2_4)

    assert config.replace(sim={"seed": 5}).sim["seed"] == 5
    assert config.sim["seed"] == 42
    with pytest.raises(ConfigurationError):
        config.replace(transmitter={"half_power_semiangle": 95.0})


def test_explicit_patterns_are_sorted():
    config = config_from_dict(
        {
            "scheme": {
                "kind": "GSM",
                "n_t": 4,
                "n_a": 2,
                "m": 2,
                "pattern_policy": "explicit",
                "patterns": [[1, 0], [2, 0], [3, 0], [2, 1]],
            }
        }
    )
    assert config.scheme["patterns"] == [[0, 1], [0, 2], [0, 3], [1, 2]]


def test_project_home_from_environment(monkeypatch, tmp_path):
    monkeypatch.setenv("OPEN_VLC_HOME", str(tmp_path / "home"))
    assert get_project_home_dir() == str(tmp_path / "home")


def test_create_data_dir(tmp_path):
    directory = create_data_dir(str(tmp_path / "a" / "b"))
    assert os.path.isdir(directory)
