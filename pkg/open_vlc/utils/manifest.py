"""
Run manifests: what was run, with which resolved config, and the sha256
checksum of every file it wrote.
"""

import json
import os
from dataclasses import asdict, dataclass, field
from datetime import datetime
from typing import Dict, List

from open_vlc.utils.constants import VERSION
from open_vlc.utils.exceptions import ConfigurationError


@dataclass
class RunManifest:
    """
    Attributes
    ----------
    command: str
        CLI subcommand, e.g. 'simulate' or 'preset'.
    configs: list of dict
        Resolved experiment configs with every default expanded.
    seed: int
        Master seed of the run.
    options: dict
        Further arguments of the command, e.g. the preset name.
    outputs: dict
        File name -> sha256 hex digest.
    version: str
        open-VLC version that wrote the files.
    created: str
        ISO timestamp, informational only.
    """

    command: str
    configs: List[dict]
    seed: int
    options: dict = field(default_factory=dict)
    outputs: Dict[str, str] = field(default_factory=dict)
    version: str = VERSION
    created: str = field(
        default_factory=lambda: datetime.now().isoformat(timespec="seconds")
    )


def write_manifest(manifest: RunManifest, path) -> str:
    with open(path, "w", encoding="utf-8") as f:
        json.dump(asdict(manifest), f, ensure_ascii=False, indent=4)
    return path


def read_manifest(path) -> RunManifest:
    if not os.path.isfile(path):
        raise ConfigurationError(f"manifest {path} does not exist")
    try:
        with open(path, encoding="utf-8") as f:
            content = json.load(f)
        return RunManifest(**content)
    except (json.JSONDecodeError, TypeError) as e:
        raise ConfigurationError(f"{path} is not a run manifest: {e}") from e
