import copy
import hashlib
import os
from numbers import Integral, Real

import pandas as pd

from open_vlc.utils.constants import (
    DEFAULT_CONFIG,
    PATTERN_POLICIES,
    REQUIRED_SECTIONS,
    SCHEMES,
    SWEEP_PARAMETERS,
)
from open_vlc.utils.exceptions import ConfigurationError


def _is_number(value) -> bool:
    return isinstance(value, Real) and not isinstance(value, bool)


def _is_integer(value) -> bool:
    return isinstance(value, Integral) and not isinstance(value, bool)


def validate_parameter_positive(value, field, integer=False):
    check = _is_integer if integer else _is_number
    if not check(value) or value <= 0:
        kind = "a positive integer" if integer else "a positive number"
        raise ConfigurationError(f"has to be {kind}, got {value!r}", field)
    return int(value) if integer else float(value)


def validate_parameter_angle(value, field, lower=0.0, upper=90.0, upper_closed=False):
    if not _is_number(value):
        raise ConfigurationError(f"has to be an angle in degrees, got {value!r}", field)
    inside = lower < value <= upper if upper_closed else lower < value < upper
    if not inside:
        bracket = "]" if upper_closed else ")"
        raise ConfigurationError(
            f"has to be in ({lower:g}°, {upper:g}°{bracket}, got {value}°", field
        )
    return float(value)


def validate_parameter_elevation(value, field):
    if value not in (-90, 90, -90.0, 90.0) or isinstance(value, bool):
        raise ConfigurationError(
            "only horizontal arrays are supported, elevation has to be -90 or 90",
            field,
        )
    return float(value)


def validate_unknown_keys(section: dict, allowed, prefix=None) -> None:
    if not isinstance(section, dict):
        raise ConfigurationError("has to be a mapping", prefix)
    unknown = sorted(set(section) - set(allowed))
    if unknown:
        path = f"{prefix}.{unknown[0]}" if prefix else unknown[0]
        raise ConfigurationError(f"unknown key(s) {unknown}", path)


def validate_parameter_room(room: dict) -> dict:
    return {
        key: validate_parameter_positive(room[key], f"room.{key}")
        for key in ("length", "width", "height")
    }


def validate_parameter_grid(section: dict, name: str, room: dict) -> dict:
    """Validate the grid fields shared by transmitter and receiver."""
    grid = {
        "height": validate_parameter_positive(section["height"], f"{name}.height"),
        "rows": validate_parameter_positive(section["rows"], f"{name}.rows", True),
        "cols": validate_parameter_positive(section["cols"], f"{name}.cols", True),
        "spacing": validate_parameter_positive(section["spacing"], f"{name}.spacing"),
        "elevation": validate_parameter_elevation(
            section["elevation"], f"{name}.elevation"
        ),
    }
    if not _is_number(section["azimuth"]):
        raise ConfigurationError("has to be a number", f"{name}.azimuth")
    grid["azimuth"] = float(section["azimuth"])

    if grid["height"] > room["height"]:
        raise ConfigurationError(
            f"plane height {grid['height']} m exceeds room height {room['height']} m",
            f"{name}.height",
        )
    extent_x = (grid["cols"] - 1) * grid["spacing"]
    extent_y = (grid["rows"] - 1) * grid["spacing"]
    if extent_x > room["length"] or extent_y > room["width"]:
        raise ConfigurationError(
            f"a {grid['rows']}x{grid['cols']} grid with spacing {grid['spacing']} m "
            "exceeds the room footprint",
            f"{name}.spacing",
        )
    return grid


def validate_parameter_transmitter(section: dict, room: dict) -> dict:
    transmitter = validate_parameter_grid(section, "transmitter", room)
    transmitter["half_power_semiangle"] = validate_parameter_angle(
        section["half_power_semiangle"], "transmitter.half_power_semiangle"
    )
    placement = section["placement"]
    if isinstance(placement, str):
        if placement not in ("auto", "full"):
            raise ConfigurationError(
                "has to be 'auto', 'full' or a list of grid cells",
                "transmitter.placement",
            )
    elif isinstance(placement, (list, tuple)):
        n_cells = transmitter["rows"] * transmitter["cols"]
        if not all(_is_integer(c) and 0 <= c < n_cells for c in placement):
            raise ConfigurationError(
                f"cells have to be integers in [0, {n_cells})", "transmitter.placement"
            )
        if len(set(placement)) != len(placement):
            raise ConfigurationError("cells must not repeat", "transmitter.placement")
        placement = sorted(int(c) for c in placement)
    else:
        raise ConfigurationError(
            "has to be 'auto', 'full' or a list of grid cells", "transmitter.placement"
        )
    transmitter["placement"] = placement
    return transmitter


def validate_parameter_receiver(section: dict, room: dict) -> dict:
    receiver = validate_parameter_grid(section, "receiver", room)
    receiver["area"] = validate_parameter_positive(section["area"], "receiver.area")
    receiver["fov"] = validate_parameter_angle(
        section["fov"], "receiver.fov", upper_closed=True
    )
    receiver["responsivity"] = validate_parameter_positive(
        section["responsivity"], "receiver.responsivity"
    )
    return receiver


def validate_parameter_scheme(section: dict) -> dict:
    from open_vlc.modulation.signal_set import SchemeConfig

    kind = section["kind"]
    if kind not in SCHEMES:
        raise ConfigurationError(f"has to be one of {SCHEMES}", "scheme.kind")
    scheme = {"kind": kind}
    for key in ("n_t", "n_a", "m"):
        scheme[key] = validate_parameter_positive(section[key], f"scheme.{key}", True)
    scheme["mean_power"] = validate_parameter_positive(
        section["mean_power"], "scheme.mean_power"
    )
    if section["pattern_policy"] not in PATTERN_POLICIES:
        raise ConfigurationError(
            f"has to be one of {PATTERN_POLICIES}", "scheme.pattern_policy"
        )
    scheme["pattern_policy"] = section["pattern_policy"]

    patterns = section["patterns"]
    if scheme["pattern_policy"] == "explicit":
        if not isinstance(patterns, (list, tuple)) or not patterns:
            raise ConfigurationError(
                "an explicit pattern policy needs a list of patterns", "scheme.patterns"
            )
        if not all(
            isinstance(p, (list, tuple)) and all(_is_integer(i) for i in p)
            for p in patterns
        ):
            raise ConfigurationError(
                "patterns have to be lists of LED indices", "scheme.patterns"
            )
        patterns = [sorted(int(i) for i in p) for p in patterns]
    elif patterns is not None:
        raise ConfigurationError(
            "patterns are only used with pattern_policy 'explicit'", "scheme.patterns"
        )
    scheme["patterns"] = patterns

    index_bits = section["index_bits"]
    if index_bits is not None and (not _is_integer(index_bits) or index_bits < 0):
        raise ConfigurationError(
            "has to be a non-negative integer or null", "scheme.index_bits"
        )
    scheme["index_bits"] = index_bits
    label = section["label"]
    if label is not None and not isinstance(label, str):
        raise ConfigurationError("has to be a string or null", "scheme.label")
    scheme["label"] = label

    # Checks the combinatorial constraints of the scheme kind
    try:
        SchemeConfig.from_dict(scheme)
    except ConfigurationError as e:
        if e.field:
            raise
        raise ConfigurationError(str(e), "scheme") from e
    return scheme


def validate_parameter_sweep(section: dict) -> dict:
    snr_db = section["snr_db"]
    if not isinstance(snr_db, (list, tuple)) or not snr_db:
        raise ConfigurationError(
            "has to be a non-empty list of SNR values in dB", "sweep.snr_db"
        )
    if not all(_is_number(s) for s in snr_db):
        raise ConfigurationError("has to contain numbers only", "sweep.snr_db")
    sweep = {"snr_db": [float(s) for s in snr_db]}

    parameter = section["parameter"]
    values = section["values"]
    if parameter is not None:
        if parameter not in SWEEP_PARAMETERS:
            raise ConfigurationError(
                f"has to be one of {SWEEP_PARAMETERS} or null", "sweep.parameter"
            )
        if not isinstance(values, (list, tuple)) or not values:
            raise ConfigurationError(
                "a parameter sweep needs a non-empty list of values", "sweep.values"
            )
        if not all(_is_number(v) for v in values):
            raise ConfigurationError("has to contain numbers only", "sweep.values")
        values = [float(v) for v in values]
    elif values is not None:
        raise ConfigurationError(
            "values are only used with a sweep parameter", "sweep.values"
        )
    sweep["parameter"] = parameter
    sweep["values"] = values
    return sweep


def validate_parameter_sim(section: dict) -> dict:
    seed = section["seed"]
    if not _is_integer(seed) or seed < 0:
        raise ConfigurationError("has to be a non-negative integer", "sim.seed")
    sim = {"seed": int(seed)}
    for key in ("min_bit_errors", "max_channel_uses", "batch_size", "batches_per_round"):
        sim[key] = validate_parameter_positive(section[key], f"sim.{key}", True)
    return sim


def validate_parameter_output(section: dict) -> dict:
    for key in ("directory", "prefix"):
        if section[key] is not None and not isinstance(section[key], str):
            raise ConfigurationError("has to be a string or null", f"output.{key}")
    return dict(section)


def raise_error_for_invalid_parameter_combinations(config: dict) -> None:
    n_t = config["scheme"]["n_t"]
    transmitter = config["transmitter"]
    n_cells = transmitter["rows"] * transmitter["cols"]
    placement = transmitter["placement"]
    if placement == "full" and n_t != n_cells:
        raise ConfigurationError(
            f"placement 'full' needs n_t = rows*cols = {n_cells}, got n_t = {n_t}",
            "transmitter.placement",
        )
    if placement == "auto" and n_t > n_cells:
        raise ConfigurationError(
            f"{n_t} LEDs do not fit into {n_cells} grid cells", "transmitter.placement"
        )
    if isinstance(placement, list) and len(placement) != n_t:
        raise ConfigurationError(
            f"has to list exactly n_t = {n_t} cells", "transmitter.placement"
        )
    if not 0 < config["receiver"]["height"] < transmitter["height"]:
        raise ConfigurationError(
            "the detector plane has to be above the floor and below the LED plane",
            "receiver.height",
        )


def validate_config_dict(raw) -> dict:
    """
    Merge a raw config mapping with the defaults and validate every field.

    Parameters
    ----------
    raw: dict or None
        Parsed config file content. `None` (an empty file) is treated as an
        empty mapping.

    Returns
    -------
    dict
        Keyword arguments of :class:`open_vlc.utils.config.ExperimentConfig`.
    """
    raw = {} if raw is None else raw
    validate_unknown_keys(raw, DEFAULT_CONFIG)
    for section in REQUIRED_SECTIONS:
        if section not in raw:
            raise ConfigurationError("section is required", section)

    merged = copy.deepcopy(DEFAULT_CONFIG)
    for name, section in raw.items():
        section = {} if section is None else section
        validate_unknown_keys(section, DEFAULT_CONFIG[name], name)
        merged[name].update(copy.deepcopy(section))

    room = validate_parameter_room(merged["room"])
    config = {
        "room": room,
        "transmitter": validate_parameter_transmitter(merged["transmitter"], room),
        "receiver": validate_parameter_receiver(merged["receiver"], room),
        "scheme": validate_parameter_scheme(merged["scheme"]),
        "sweep": validate_parameter_sweep(merged["sweep"]),
        "sim": validate_parameter_sim(merged["sim"]),
        "output": validate_parameter_output(merged["output"]),
    }
    raise_error_for_invalid_parameter_combinations(config)
    return config


def dataframe_to_csv(df: pd.DataFrame, path) -> str:
    """
    Write a result table as CSV with full precision scientific notation.

    Returns
    -------
    str
        sha256 hex digest of the written file
    """
    os.makedirs(os.path.dirname(os.path.abspath(path)), exist_ok=True)
    df.to_csv(path, index=False, float_format="%.17e", lineterminator="\n")
    return file_checksum(path)


def file_checksum(path) -> str:
    sha = hashlib.sha256()
    with open(path, "rb") as fh:
        for chunk in iter(lambda: fh.read(1 << 20), b""):
            sha.update(chunk)
    return sha.hexdigest()
