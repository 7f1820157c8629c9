import json
import os

import pandas as pd
import pytest

from open_vlc import Experiment
from open_vlc.experiment import compare, replay
from open_vlc.utils.exceptions import ConfigurationError
from open_vlc.utils.helpers import file_checksum
from open_vlc.utils.manifest import read_manifest

SIMULATE_HEADER = "snr_db,bits,bit_errors,ber_sim,ber_bound,low_confidence"


def read_lines(directory, filename):
    with open(os.path.join(directory, filename), encoding="utf-8") as f:
        return f.read().splitlines()


def test_experiment_from_config_file(make_config_file, tmp_path):
    path = make_config_file(
        {
            "transmitter": {"rows": 2, "cols": 2, "placement": "full"},
            "scheme": {"kind": "GSM", "n_t": 4, "n_a": 2, "m": 2},
        }
    )
    exp = Experiment(path, seed=11, out=str(tmp_path / "out"), progress=False)

    assert exp.config.sim["seed"] == 11
    assert exp.label == "gsm_4_2_2"
    assert os.path.isdir(exp.output_directory)


def test_metrics(make_experiment):
    exp = make_experiment()
    metrics = exp.metrics()

    assert metrics["eta"] == 4
    assert metrics["size"] == 16
    assert 0 < metrics["d_min"] <= metrics["d_avg"]
    assert metrics["cells"] == "0 1 2 3"
    assert set(exp.outputs) == {"gsm_4_2_2_metrics.csv"}
    assert os.path.isfile(
        os.path.join(exp.output_directory, "gsm_4_2_2_metrics.manifest.json")
    )


def test_channel(make_experiment):
    exp = make_experiment()
    df = exp.channel()

    assert list(df.columns) == ["detector", "led0", "led1", "led2", "led3"]
    assert len(df) == 4
    assert (df[["led0", "led1", "led2", "led3"]].to_numpy() > 0).all()


def test_bound(make_experiment):
    df = make_experiment().bound()
    assert df["snr_db"].tolist() == [60.0, 80.0]
    assert df["ber_bound"].iloc[0] >= df["ber_bound"].iloc[1]


def test_simulate_writes_csv_and_manifest(make_experiment):
    exp = make_experiment()
    df = exp.simulate()

    lines = read_lines(exp.output_directory, "gsm_4_2_2.csv")
    assert lines[0] == SIMULATE_HEADER
    assert len(lines) == 3
    assert (df["bits"] % exp.system.signal_set.efficiency == 0).all()
    assert (df["ber_sim"] == df["bit_errors"] / df["bits"]).all()

    manifest = read_manifest(
        os.path.join(exp.output_directory, "gsm_4_2_2_simulate.manifest.json")
    )
    assert manifest.command == "simulate"
    assert manifest.seed == 7
    assert manifest.outputs == {
        "gsm_4_2_2.csv": file_checksum(
            os.path.join(exp.output_directory, "gsm_4_2_2.csv")
        )
    }


def test_simulate_flags_low_confidence(make_experiment):
    exp = make_experiment(sweep={"snr_db": [200.0]})
    df = exp.simulate()

    assert exp.low_confidence
    assert df["low_confidence"].tolist() == [True]


def test_simulate_parameter_sweep(make_experiment):
    exp = make_experiment(sweep={"parameter": "d_tx", "values": [0.4, 0.8]})
    df = exp.simulate()

    assert df.columns[0] == "d_tx"
    assert len(df) == 4


def test_output_prefix(make_experiment):
    exp = make_experiment(output={"prefix": "run1_"})
    exp.bound()
    assert "run1_gsm_4_2_2_bound.csv" in exp.outputs


def test_place_opt(make_experiment):
    exp = make_experiment(transmitter={"rows": 3, "cols": 3, "placement": "auto"})
    result = exp.place_opt(top_k=3)

    assert set(exp.outputs) == {"gsm_4_2_2_placement.csv", "gsm_4_2_2_placement.txt"}
    art = read_lines(exp.output_directory, "gsm_4_2_2_placement.txt")
    assert len(art) == 3
    assert sum(line.count("×") for line in art) == 4
    df = pd.read_csv(os.path.join(exp.output_directory, "gsm_4_2_2_placement.csv"))
    assert len(df) == 3
    assert df["d_min"].iloc[0] == pytest.approx(result.best.d_min)


@pytest.mark.parametrize("command", ["metrics", "simulate", "channel"])
def test_replay_reproduces_files(make_experiment, command):
    exp = make_experiment()
    getattr(exp, command)()
    manifest = os.path.join(
        exp.output_directory, f"gsm_4_2_2_{command}.manifest.json"
    )

    matches = replay(manifest, progress=False)
    assert matches and all(matches.values())


def test_replay_detects_changed_manifest(make_experiment):
    exp = make_experiment()
    exp.bound()
    path = os.path.join(exp.output_directory, "gsm_4_2_2_bound.manifest.json")
    with open(path, encoding="utf-8") as f:
        content = json.load(f)
    content["outputs"]["gsm_4_2_2_bound.csv"] = "0" * 64
    with open(path, "w", encoding="utf-8") as f:
        json.dump(content, f)

    assert replay(path, progress=False) == {"gsm_4_2_2_bound.csv": False}


def test_compare(make_config, tmp_path):
    configs = [
        make_config(),
        make_config({"kind": "SM", "n_t": 4, "n_a": 1, "m": 4}),
    ]
    merged = compare(configs, out=str(tmp_path), progress=False)

    assert merged["snr_db"].tolist() == [60.0, 80.0]
    assert "gsm_4_2_2_ber_sim" in merged.columns
    assert "sm_4_1_4_ber_bound" in merged.columns
    assert os.path.isfile(tmp_path / "compare.csv")
    assert all(replay(str(tmp_path / "compare.manifest.json"), progress=False).values())


def test_compare_rejects_mixed_efficiency(make_config, tmp_path):
    configs = [make_config(), make_config({"kind": "SM", "n_t": 4, "n_a": 1, "m": 2})]

    with pytest.raises(ConfigurationError, match="gsm_4_2_2 \\(4 bpcu\\)"):
        compare(configs, out=str(tmp_path), progress=False)
    merged = compare(
        configs, out=str(tmp_path), allow_mixed_efficiency=True, progress=False
    )
    assert "sm_4_1_2_ber_sim" in merged.columns


def test_compare_identical_labels(make_config, tmp_path):
    merged = compare([make_config(), make_config()], out=str(tmp_path), progress=False)
    assert "gsm_4_2_2_0_ber_sim" in merged.columns
    assert "gsm_4_2_2_1_ber_sim" in merged.columns
