#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
Service functions for logging and experiment configuration

Configure console and file logging; create the project home directory; read,
validate and write experiment config files.

SPDX-License-Identifier: AGPL-3.0-or-later
"""

import copy
import logging
import logging.config
import os
import pathlib
import shutil
from dataclasses import dataclass, field
from datetime import date

import yaml

from open_vlc.utils.exceptions import ConfigurationError

log = logging.getLogger(__name__)


def get_project_home_dir():
    """Get root dir of project data

    Defaults to `$HOME/.open-VLC/`, which is also called `PROJECTHOME`. The
    environment variable `OPEN_VLC_HOME` overrides it.

    Returns
    -------
    path-like object
        Absolute path to root dir of open-VLC project home
    """
    return os.environ.get(
        "OPEN_VLC_HOME", os.path.join(os.path.expanduser("~"), ".open-VLC")
    )


def get_data_config():
    """
    Get data version

    Returns
    -------
    str
        dataversion
    """
    return f'dataversion-{date.today().strftime("%Y-%m-%d")}'


def get_data_version_dir():
    """
    Subdirectory of data/ in PROJECTHOME

    Returns
    -------
    path-like object
        Absolute path to `PROJECTHOME/data/<data-version>/`
    """
    return os.path.join(get_project_home_dir(), "data", get_data_config())


def create_project_home_dir():
    """Create directory structure of PROJECTHOME"""
    project_home = get_project_home_dir()

    if not os.path.isdir(project_home):
        log.info(f"Create {project_home} used for config, logs and results.")
        os.makedirs(project_home, exist_ok=True)

    for subdir in ["config", "logs", "data"]:
        os.makedirs(os.path.join(project_home, subdir), exist_ok=True)

    # copy default config files
    config_path = os.path.join(project_home, "config")
    internal_config_dir = os.path.join(
        pathlib.Path(__file__).parent.absolute(), "config"
    )
    for file in ["logging.yml"]:
        if file not in os.listdir(config_path):
            shutil.copy(
                os.path.join(internal_config_dir, file),
                os.path.join(config_path, file),
            )


def create_data_dir(directory=None):
    """
    Create the output directory of this data version, or `directory` if given.

    Returns
    -------
    str
        The created directory
    """
    directory = directory or get_data_version_dir()
    os.makedirs(directory, exist_ok=True)
    return directory


def setup_project_home():
    """Create open-VLC project home directory structure

    Create PROJECTHOME returned by :func:`~.get_project_home_dir`.
    In addition, default config files are copied to `PROJECTHOME/config/`.
    """
    create_project_home_dir()


def setup_logger():
    """Configure logging in console and log file.

    Returns
    -------
    logging.Logger
        Logger with two handlers: console and file.
    """
    with open(
        os.path.join(get_project_home_dir(), "config", "logging.yml")
    ) as filename_fh:
        logging_config = yaml.safe_load(filename_fh)

    logging_config["handlers"]["file"]["filename"] = os.path.join(
        get_project_home_dir(), "logs", "open_vlc.log"
    )

    logging.config.dictConfig(logging_config)
    return logging.getLogger("open_vlc")


@dataclass(frozen=True)
class ExperimentConfig:
    """
    Validated experiment configuration with every default expanded.

    Each attribute is one section of the config file as a plain dict. Angles
    are stored in degrees, exactly as written in the file; the accessors
    convert to the domain types in radians.
    """

    room: dict
    transmitter: dict
    receiver: dict
    scheme: dict
    sweep: dict
    sim: dict
    output: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return copy.deepcopy(
            {
                "room": self.room,
                "transmitter": self.transmitter,
                "receiver": self.receiver,
                "scheme": self.scheme,
                "sweep": self.sweep,
                "sim": self.sim,
                "output": self.output,
            }
        )

    @property
    def label(self) -> str:
        scheme = self.scheme
        return scheme["label"] or (
            f"{scheme['kind'].lower()}_{scheme['n_t']}_{scheme['n_a']}_{scheme['m']}"
        )

    def replace(self, **sections) -> "ExperimentConfig":
        """Return a re-validated copy with the given sections updated."""
        from open_vlc.utils.helpers import validate_config_dict

        raw = self.to_dict()
        for name, values in sections.items():
            raw.setdefault(name, {}).update(values)
        return ExperimentConfig(**validate_config_dict(raw))


def load_config(path) -> ExperimentConfig:
    """
    Read and validate an experiment config file.

    Parameters
    ----------
    path: str or path-like
        YAML file with the sections `room`, `transmitter`, `receiver`, `scheme`,
        `sweep`, `sim` and `output`. Only `scheme` is required, all other
        values default to the indoor set-up in
        :data:`open_vlc.utils.constants.DEFAULT_CONFIG`.

    Returns
    -------
    ExperimentConfig

    Raises
    ------
    ConfigurationError
        On parse errors, unknown keys and invalid values; the message names
        the field path.
    """
    from open_vlc.utils.helpers import validate_config_dict

    if not os.path.isfile(path):
        raise ConfigurationError(f"config file {path} does not exist")
    with open(path, encoding="utf-8") as config_fh:
        try:
            raw = yaml.safe_load(config_fh)
        except yaml.YAMLError as e:
            raise ConfigurationError(f"could not parse {path}: {e}") from e

    config = ExperimentConfig(**validate_config_dict(raw))
    log.debug(f"Loaded config {path} for scheme {config.label}")
    return config


def config_from_dict(raw: dict) -> ExperimentConfig:
    """Validate an in-memory config mapping, see :func:`load_config`."""
    from open_vlc.utils.helpers import validate_config_dict

    return ExperimentConfig(**validate_config_dict(raw))


def write_config(config: ExperimentConfig, path) -> None:
    """Write a config so that :func:`load_config` returns an equal object."""
    with open(path, "w", encoding="utf-8") as config_fh:
        yaml.safe_dump(config.to_dict(), config_fh, sort_keys=False)
