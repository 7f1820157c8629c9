import os
from typing import Dict, Optional, Sequence

import pandas as pd

from open_vlc.channel.lambertian import LambertianParams
from open_vlc.detection.bound import bound_curve
from open_vlc.modulation.distance import image_distances
from open_vlc.modulation.signal_set import SchemeConfig
from open_vlc.placement.optimize import PlacementResult, grid_art, optimize_placement
from open_vlc.simulation.monte_carlo import run_sweep
from open_vlc.simulation.sweep import sweep_parameter
from open_vlc.system import (
    LinkSystem,
    build_geometry,
    build_system,
    transmitter_normal,
)
from open_vlc.utils.config import (
    ExperimentConfig,
    config_from_dict,
    create_data_dir,
    load_config,
    setup_logger,
)
from open_vlc.utils.constants import CSV_HEADER
from open_vlc.utils.exceptions import ConfigurationError
from open_vlc.utils.helpers import dataframe_to_csv, file_checksum
from open_vlc.utils.manifest import RunManifest, read_manifest, write_manifest

# setup logger
log = setup_logger()


class Experiment:
    """
    :class:`.Experiment` runs the link-level analyses of one VLC set-up.

    The set-up (room, LED and photodetector grids, scheme, SNR sweep and
    simulation depth) is read from a YAML config file. Results are written
    as CSV files to the output directory, each analysis also writes a run
    manifest that allows the files to be reproduced.

    .. code-block:: python

       from open_vlc import Experiment

       exp = Experiment("gsm_7_2_4.yml")
       exp.metrics()
       exp.simulate()

    Parameters
    ------------
        config: str or path-like or ExperimentConfig
            Config file or an already loaded config.
        seed: int, optional
            Overrides `sim.seed` of the config.
        out: str, optional
            Output directory. Defaults to `output.directory` of the config,
            then to `$HOME/.open-VLC/data/dataversion-<date>/`.
        threads: int, optional
            Worker processes for placement search and simulation. Changes
            the run time only, never the results.
        progress: bool, optional
            Show progress bars. Default to True.
    """

    def __init__(
        self, config, seed=None, out=None, threads=None, progress=True
    ) -> None:
        if not isinstance(config, ExperimentConfig):
            config = load_config(config)
        if seed is not None:
            config = config.replace(sim={"seed": seed})
        self.config = config
        self.threads = threads
        self.progress = progress
        self.output_directory = create_data_dir(out or config.output["directory"])
        self.outputs: Dict[str, str] = {}
        self.low_confidence = False
        self._system: Optional[LinkSystem] = None

    @property
    def label(self) -> str:
        return self.config.label

    @property
    def system(self) -> LinkSystem:
        """Placement, channel and signal set, built on first access."""
        if self._system is None:
            self._system = build_system(
                self.config, threads=self.threads, progress=self.progress
            )
        return self._system

    def _filename(self, name: str, suffix=".csv") -> str:
        prefix = self.config.output["prefix"] or ""
        return f"{prefix}{name}{suffix}"

    def _write_csv(self, df: pd.DataFrame, name: str) -> str:
        filename = self._filename(name)
        path = os.path.join(self.output_directory, filename)
        self.outputs[filename] = dataframe_to_csv(df, path)
        log.info(f"Wrote {path}")
        return path

    def _write_text(self, text: str, name: str, suffix: str) -> str:
        filename = self._filename(name, suffix)
        path = os.path.join(self.output_directory, filename)
        with open(path, "w", encoding="utf-8", newline="\n") as f:
            f.write(text + "\n")
        self.outputs[filename] = file_checksum(path)
        return path

    def save_manifest(self, command: str, options: Optional[dict] = None) -> str:
        """Write the manifest of the files written by the last command."""
        manifest = RunManifest(
            command=command,
            configs=[self.config.to_dict()],
            seed=self.config.sim["seed"],
            options=options or {},
            outputs=dict(self.outputs),
        )
        path = os.path.join(
            self.output_directory,
            self._filename(f"{self.label}_{command}", ".manifest.json"),
        )
        return write_manifest(manifest, path)

    def channel(self) -> pd.DataFrame:
        """
        Channel matrix of the placed LEDs.

        Writes `<label>_channel.csv` with one row per photodetector and one
        column per LED.
        """
        self.outputs.clear()
        df = self.system.H.to_dataframe().reset_index()
        self._write_csv(df, f"{self.label}_channel")
        self.save_manifest("channel")
        return df

    def metrics(self) -> dict:
        """
        Transmission efficiency, d_min,H and d_avg,H of the set-up.

        Writes `<label>_metrics.csv`.

        Returns
        -------
        dict
            Keys label, eta, size, d_min, d_avg, cells and patterns.
        """
        self.outputs.clear()
        system = self.system
        distances = image_distances(system.H, system.signal_set)
        metrics = {
            "label": self.label,
            "eta": system.signal_set.efficiency,
            "size": len(system.signal_set),
            "d_min": float(distances.min()),
            "d_avg": float(distances.mean()),
            "cells": " ".join(str(c) for c in system.cells),
            "patterns": " ".join(
                "-".join(str(i) for i in p) for p in system.signal_set.patterns
            ),
        }
        self._write_csv(pd.DataFrame([metrics]), f"{self.label}_metrics")
        self.save_manifest("metrics")
        return metrics

    def bound(self) -> pd.DataFrame:
        """Union bound over the SNR grid, written to `<label>_bound.csv`."""
        self.outputs.clear()
        system = self.system
        snr_grid = self.config.sweep["snr_db"]
        df = pd.DataFrame(
            {
                "snr_db": snr_grid,
                "ber_bound": bound_curve(
                    system.H, system.signal_set, system.responsivity, snr_grid
                ),
            }
        )
        self._write_csv(df, f"{self.label}_bound")
        self.save_manifest("bound")
        return df

    def simulate(
        self, name: Optional[str] = None, manifest: bool = True
    ) -> pd.DataFrame:
        """
        Monte Carlo BER with union bound over the SNR grid.

        If the config defines a sweep parameter, the SNR grid is simulated
        for every parameter value and the table gets a leading column named
        after the parameter plus an `error` column for invalid values.

        Parameters
        ----------
        name: str, optional
            File name without suffix. Defaults to the label.
        manifest: bool, optional
            Write a run manifest. Default to True.

        Returns
        -------
        pandas.DataFrame
            Columns snr_db, bits, bit_errors, ber_sim, ber_bound and
            low_confidence.
        """
        self.outputs.clear()
        sweep = self.config.sweep
        if sweep["parameter"] is None:
            points = run_sweep(
                self.system.sim_plan(), threads=self.threads, progress=self.progress
            )
            df = pd.DataFrame(points, columns=CSV_HEADER)
        else:
            df = sweep_parameter(
                self.config,
                sweep["parameter"],
                sweep["values"],
                threads=self.threads,
                progress=self.progress,
            ).to_dataframe()

        flagged = df["low_confidence"].fillna(False).astype(bool)
        if flagged.any():
            self.low_confidence = True
            log.warning(
                f"{int(flagged.sum())} point(s) of {self.label} reached the channel-use "
                f"cap with fewer than {self.config.sim['min_bit_errors']} bit errors"
            )
        self._write_csv(df, name or self.label)
        if manifest:
            self.save_manifest("simulate")
        return df

    def place_opt(self, top_k: int = 10) -> PlacementResult:
        """
        Optimum placement of the scheme's LEDs on the transmitter grid.

        Writes the `top_k` candidates to `<label>_placement.csv` and the best
        placement as grid art (× LED, ○ empty) to `<label>_placement.txt`.
        """
        self.outputs.clear()
        _, tx_grid, rx_grid, detectors = build_geometry(self.config)
        result = optimize_placement(
            tx_grid,
            detectors,
            SchemeConfig.from_dict(self.config.scheme),
            LambertianParams.from_degrees(
                self.config.transmitter["half_power_semiangle"]
            ),
            top_k=top_k,
            threads=self.threads,
            rx_grid=rx_grid,
            progress=self.progress,
            normal=transmitter_normal(self.config),
        )
        art = grid_art(result.best.cells, tx_grid.rows, tx_grid.cols)
        self._write_csv(result.to_dataframe(), f"{self.label}_placement")
        self._write_text(art, f"{self.label}_placement", ".txt")
        self.save_manifest("place-opt", {"top_k": top_k})
        return result


def compare(
    configs: Sequence[ExperimentConfig],
    out=None,
    threads=None,
    allow_mixed_efficiency=False,
    name="compare",
    progress=True,
) -> pd.DataFrame:
    """
    Simulate several schemes on the SNR grid of the first config.

    Parameters
    ----------
    configs: list of ExperimentConfig
    out: str, optional
        Output directory.
    threads: int, optional
    allow_mixed_efficiency: bool, optional
        Compare schemes of different efficiency. Default to False.
    name: str, optional
        File name of the merged CSV without suffix.

    Returns
    -------
    pandas.DataFrame
        Column snr_db plus the columns bits, bit_errors, ber_sim, ber_bound
        and low_confidence of each scheme, prefixed with its label.

    Raises
    ------
    ConfigurationError
        If the efficiencies differ and `allow_mixed_efficiency` is False.
    """
    if not configs:
        raise ConfigurationError("nothing to compare")
    experiments = [
        Experiment(config, out=out, threads=threads, progress=progress)
        for config in configs
    ]
    efficiencies = [SchemeConfig.from_dict(c.scheme).efficiency for c in configs]
    if len(set(efficiencies)) > 1 and not allow_mixed_efficiency:
        described = ", ".join(
            f"{exp.label} ({eta} bpcu)" for exp, eta in zip(experiments, efficiencies)
        )
        raise ConfigurationError(f"efficiencies differ: {described}")

    snr_grid = configs[0].sweep["snr_db"]
    merged = pd.DataFrame({"snr_db": snr_grid})
    labels = [exp.label for exp in experiments]
    for position, exp in enumerate(experiments):
        label = exp.label if labels.count(exp.label) == 1 else f"{exp.label}_{position}"
        points = run_sweep(
            exp.system.sim_plan(snr_grid), threads=threads, progress=progress
        )
        df = pd.DataFrame(points, columns=CSV_HEADER).drop(columns="snr_db")
        merged = merged.join(df.add_prefix(f"{label}_"))

    writer = experiments[0]
    writer.outputs.clear()
    writer._write_csv(merged, name)
    manifest = RunManifest(
        command="compare",
        configs=[c.to_dict() for c in configs],
        seed=configs[0].sim["seed"],
        options={"allow_mixed_efficiency": allow_mixed_efficiency, "name": name},
        outputs=dict(writer.outputs),
    )
    write_manifest(
        manifest,
        os.path.join(writer.output_directory, writer._filename(name, ".manifest.json")),
    )
    return merged


def replay(manifest_path, out=None, threads=None, progress=True) -> Dict[str, bool]:
    """
    Re-run the command of a manifest and compare the checksums of its files.

    Parameters
    ----------
    manifest_path: str
    out: str, optional
        Directory for the reproduced files. Defaults to a `replay`
        directory next to the manifest.

    Returns
    -------
    dict
        File name -> True if the reproduced file is byte-identical.
    """
    from open_vlc.presets import run_preset

    manifest = read_manifest(manifest_path)
    out = out or os.path.join(os.path.dirname(os.path.abspath(manifest_path)), "replay")
    configs = [config_from_dict(raw) for raw in manifest.configs]
    options = manifest.options
    log.info(f"Replaying '{manifest.command}' of {manifest_path} into {out}")

    if manifest.command == "preset":
        outputs = run_preset(
            options["name"], out=out, threads=threads, progress=progress
        ).outputs
    elif manifest.command == "compare":
        compare(
            configs,
            out=out,
            threads=threads,
            allow_mixed_efficiency=options.get("allow_mixed_efficiency", False),
            name=options.get("name", "compare"),
            progress=progress,
        )
        outputs = {
            filename: file_checksum(os.path.join(out, filename))
            for filename in manifest.outputs
            if os.path.isfile(os.path.join(out, filename))
        }
    elif manifest.command in _EXPERIMENT_COMMANDS:
        exp = Experiment(configs[0], out=out, threads=threads, progress=progress)
        getattr(exp, _EXPERIMENT_COMMANDS[manifest.command])(**options)
        outputs = exp.outputs
    else:
        raise ConfigurationError(
            f"unknown command '{manifest.command}' in {manifest_path}"
        )

    matches = {
        filename: outputs.get(filename) == checksum
        for filename, checksum in manifest.outputs.items()
    }
    for filename, match in matches.items():
        if not match:
            log.warning(f"{filename} differs from the manifest")
    return matches


_EXPERIMENT_COMMANDS = {
    "channel": "channel",
    "metrics": "metrics",
    "bound": "bound",
    "simulate": "simulate",
    "place-opt": "place_opt",
}

