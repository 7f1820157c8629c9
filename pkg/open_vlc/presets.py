"""
Reproducible experiment presets.

Each preset pins every parameter of its runs: the indoor set-up defaults,
A = 1e-4 m², I_p = 1 W, seed 42, the stopping rule in
:data:`open_vlc.utils.constants.PRESET_SIM`, LED placements from
:data:`open_vlc.utils.constants.PRESET_PLACEMENTS` and lexicographic
activation patterns. Absolute SNR positions of the curves depend on A and
I_p; the gaps between schemes do not.
"""

import copy
import logging
import os
from typing import Dict, List, NamedTuple, Optional

from open_vlc.channel.lambertian import LambertianParams
from open_vlc.experiment import Experiment
from open_vlc.modulation.signal_set import SchemeConfig
from open_vlc.placement.optimize import rank_configs
from open_vlc.system import build_geometry, transmitter_normal
from open_vlc.utils.config import ExperimentConfig, config_from_dict, create_data_dir
from open_vlc.utils.constants import (
    PRESET_CURVES,
    PRESET_PARAMETER_SWEEPS,
    PRESET_PATTERN_POLICY,
    PRESET_SIM,
    PRESET_SNR_GRIDS,
    PRESETS,
)
from open_vlc.utils.exceptions import ConfigurationError
from open_vlc.utils.helpers import dataframe_to_csv
from open_vlc.utils.manifest import RunManifest, write_manifest

log = logging.getLogger(__name__)


class PresetRun(NamedTuple):
    """Files written by a preset (name -> sha256) and its low-confidence flag."""

    outputs: Dict[str, str]
    low_confidence: bool = False


def _merge(*layers: dict) -> dict:
    merged = {}
    for layer in layers:
        for section, values in layer.items():
            merged.setdefault(section, {}).update(copy.deepcopy(values))
    return merged


def preset_configs(name: str) -> List[ExperimentConfig]:
    """
    Resolved configs of the runs of a preset.

    Raises
    ------
    ConfigurationError
        If the preset does not exist.
    """
    if name not in PRESETS:
        raise ConfigurationError(f"unknown preset '{name}', choose from {PRESETS}")
    base = {"sim": PRESET_SIM, "scheme": {"pattern_policy": PRESET_PATTERN_POLICY}}
    if name in PRESET_PARAMETER_SWEEPS:
        return [config_from_dict(_merge(base, PRESET_PARAMETER_SWEEPS[name]))]
    if name in PRESET_SNR_GRIDS:
        base["sweep"] = {"snr_db": PRESET_SNR_GRIDS[name]}
    return [config_from_dict(_merge(base, curve)) for curve in PRESET_CURVES[name]]


def run_preset(
    name: str, out=None, threads: Optional[int] = None, progress: bool = True
) -> PresetRun:
    """
    Run a preset and write one CSV per curve plus a manifest.

    Curves are written to `<preset>_<label>.csv`. The `table2` preset writes
    `table2_systems.csv` with d_min,H and d_avg,H of each system on its
    pinned placement.

    Parameters
    ----------
    name: {'fig5', 'fig6', 'fig7', 'fig8', 'fig11', 'fig12', 'fig13', 'table2'}
    out: str, optional
        Output directory.
    threads: int, optional
        Worker processes, the files do not depend on it.
    progress: bool, optional

    Returns
    -------
    PresetRun
    """
    configs = preset_configs(name)
    directory = create_data_dir(out)
    outputs = {}
    low_confidence = False
    log.info(f"Running preset {name} with {len(configs)} configuration(s)")

    if name == "table2":
        _, tx_grid, _, detectors = build_geometry(configs[0])
        params = LambertianParams.from_degrees(
            configs[0].transmitter["half_power_semiangle"]
        )
        table = rank_configs(
            [SchemeConfig.from_dict(c.scheme) for c in configs],
            tx_grid,
            detectors,
            params,
            threads=threads,
            progress=progress,
            placements=[c.transmitter["placement"] for c in configs],
            normal=transmitter_normal(configs[0]),
        )
        filename = f"{name}_systems.csv"
        outputs[filename] = dataframe_to_csv(table, os.path.join(directory, filename))
    else:
        for config in configs:
            exp = Experiment(config, out=directory, threads=threads, progress=progress)
            exp.simulate(name=f"{name}_{exp.label}", manifest=False)
            outputs.update(exp.outputs)
            low_confidence = low_confidence or exp.low_confidence

    manifest = RunManifest(
        command="preset",
        configs=[c.to_dict() for c in configs],
        seed=PRESET_SIM["seed"],
        options={"name": name},
        outputs=outputs,
    )
    write_manifest(manifest, os.path.join(directory, f"{name}.manifest.json"))
    return PresetRun(outputs=outputs, low_confidence=low_confidence)
