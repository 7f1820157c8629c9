VERSION = "0.1.0"

# Transmission schemes; all are special cases of generalized spatial modulation
SCHEMES = ["GSM", "SM", "SMP", "SSK", "GSSK"]

# Schemes which convey information through the activation pattern only
INDEX_ONLY_SCHEMES = ["SSK", "GSSK"]

PATTERN_POLICIES = ["lexicographic", "optimized", "explicit"]

SWEEP_PARAMETERS = ["d_tx", "half_power_semiangle"]

PRESETS = ["fig5", "fig6", "fig7", "fig8", "fig11", "fig12", "fig13", "table2"]

CSV_HEADER = [
    "snr_db",
    "bits",
    "bit_errors",
    "ber_sim",
    "ber_bound",
    "low_confidence",
]

# Family enumeration limit of the `optimized` pattern policy, above it a greedy
# search is used
PATTERN_SEARCH_LIMIT = 10**6

# Placement enumeration limit of optimize_placement
PLACEMENT_SEARCH_LIMIT = 10**6

# System parameters of the indoor set-up. Angles are in degrees as in config files.
DEFAULT_CONFIG = {
    "room": {
        "length": 5.0,
        "width": 5.0,
        "height": 3.5,
    },
    "transmitter": {
        "height": 3.0,
        "rows": 4,
        "cols": 4,
        "spacing": 0.6,
        "half_power_semiangle": 60.0,
        "elevation": -90.0,
        "azimuth": 0.0,
        "placement": "auto",
    },
    "receiver": {
        "height": 0.8,
        "rows": 2,
        "cols": 2,
        "spacing": 0.1,
        "area": 1.0e-4,
        "fov": 85.0,
        "responsivity": 0.75,
        "elevation": 90.0,
        "azimuth": 0.0,
    },
    "scheme": {
        "kind": "GSM",
        "n_t": 4,
        "n_a": 2,
        "m": 2,
        "mean_power": 1.0,
        "pattern_policy": "optimized",
        "patterns": None,
        "index_bits": None,
        "label": None,
    },
    "sweep": {
        "snr_db": [float(snr) for snr in range(0, 95, 5)],
        "parameter": None,
        "values": None,
    },
    "sim": {
        "seed": 42,
        "min_bit_errors": 400,
        "max_channel_uses": 20_000_000,
        "batch_size": 20_000,
        "batches_per_round": 8,
    },
    "output": {
        "directory": None,
        "prefix": None,
    },
}

# Sections which must be given explicitly in a config file
REQUIRED_SECTIONS = ["scheme"]

# Pinned parameters shared by every preset
PRESET_SIM = {
    "seed": 42,
    "min_bit_errors": 400,
    "max_channel_uses": 10_000_000,
}

# Presets use the first 2**index_bits activation patterns in lexicographic order
PRESET_PATTERN_POLICY = "lexicographic"

# LED placements pinned by the presets, cells of the 4x4 transmitter grid
# numbered row-major from the minimum corner. The four 8 bpcu GSM systems use
# fixed reference placements; the other entries were searched for their
# scheme with lexicographic patterns. gsm_4_2_16_narrow carries both 10 bpcu
# schemes under the 15° beams.
PRESET_PLACEMENTS = {
    "gsm_4_2_8": [0, 3, 12, 15],
    "gsm_6_2_2": [0, 6, 7, 8, 14, 15],
    "gsm_6_2_2_4bpcu": [2, 3, 10, 12, 13, 14],
    "gsm_7_2_4": [0, 3, 4, 5, 10, 12, 14],
    "gsm_7_3_2": [2, 3, 5, 7, 8, 14, 15],
    "gsm_12_2_2": [0, 1, 3, 5, 6, 7, 8, 10, 12, 13, 14, 15],
    "gssk_7_2_1": [0, 3, 4, 6, 9, 12, 14],
    "gssk_13_3_1": [0, 3, 4, 6, 7, 8, 9, 10, 11, 12, 13, 14, 15],
    "gsm_4_2_16_narrow": [0, 2, 8, 10],
}

_SYSTEMS_8_BPCU = [
    {
        "transmitter": {"placement": PRESET_PLACEMENTS["gsm_4_2_8"]},
        "scheme": {"kind": "GSM", "n_t": 4, "n_a": 2, "m": 8, "label": "system1"},
    },
    {
        "transmitter": {"placement": PRESET_PLACEMENTS["gsm_7_2_4"]},
        "scheme": {"kind": "GSM", "n_t": 7, "n_a": 2, "m": 4, "label": "system2"},
    },
    {
        "transmitter": {"placement": PRESET_PLACEMENTS["gsm_7_3_2"]},
        "scheme": {"kind": "GSM", "n_t": 7, "n_a": 3, "m": 2, "label": "system3"},
    },
    {
        "transmitter": {"placement": PRESET_PLACEMENTS["gsm_12_2_2"]},
        "scheme": {"kind": "GSM", "n_t": 12, "n_a": 2, "m": 2, "label": "system4"},
    },
]

# Curves of the reproducible experiments, each merged into the default config
# section by section
PRESET_CURVES = {
    "fig5": [
        {
            "transmitter": {"placement": PRESET_PLACEMENTS["gsm_6_2_2"]},
            "scheme": {"kind": "GSM", "n_t": 6, "n_a": 2, "m": 2, "label": "gsm_6_2_2"},
        },
        {
            "transmitter": {"placement": PRESET_PLACEMENTS["gsm_7_2_4"]},
            "scheme": {"kind": "GSM", "n_t": 7, "n_a": 2, "m": 4, "label": "gsm_7_2_4"},
        },
    ],
    "fig6": _SYSTEMS_8_BPCU,
    "fig11": [
        {
            "transmitter": {"placement": PRESET_PLACEMENTS["gsm_4_2_8"]},
            "scheme": {"kind": "SMP", "n_t": 4, "n_a": 4, "m": 2, "label": "smp_4_4_2"},
        },
        {
            "transmitter": {"placement": "full"},
            "scheme": {"kind": "SSK", "n_t": 16, "n_a": 1, "m": 1, "label": "ssk_16_1_1"},
        },
        {
            "transmitter": {"placement": PRESET_PLACEMENTS["gssk_7_2_1"]},
            "scheme": {"kind": "GSSK", "n_t": 7, "n_a": 2, "m": 1, "label": "gssk_7_2_1"},
        },
        {
            "transmitter": {"placement": PRESET_PLACEMENTS["gsm_4_2_8"]},
            "scheme": {"kind": "SM", "n_t": 4, "n_a": 1, "m": 4, "label": "sm_4_1_4"},
        },
        {
            "transmitter": {"placement": PRESET_PLACEMENTS["gsm_6_2_2_4bpcu"]},
            "scheme": {
                "kind": "GSM",
                "n_t": 6,
                "n_a": 2,
                "m": 2,
                "index_bits": 2,
                "label": "gsm_6_2_2",
            },
        },
    ],
    "fig12": [
        {
            "transmitter": {"placement": PRESET_PLACEMENTS["gsm_4_2_8"]},
            "scheme": {"kind": "SMP", "n_t": 4, "n_a": 4, "m": 4, "label": "smp_4_4_4"},
        },
        {
            "transmitter": {"placement": PRESET_PLACEMENTS["gssk_13_3_1"]},
            "scheme": {
                "kind": "GSSK",
                "n_t": 13,
                "n_a": 3,
                "m": 1,
                "label": "gssk_13_3_1",
            },
        },
        {
            "transmitter": {"placement": "full"},
            "scheme": {"kind": "SM", "n_t": 16, "n_a": 1, "m": 16, "label": "sm_16_1_16"},
        },
        {
            "transmitter": {"placement": PRESET_PLACEMENTS["gsm_7_2_4"]},
            "scheme": {"kind": "GSM", "n_t": 7, "n_a": 2, "m": 4, "label": "gsm_7_2_4"},
        },
    ],
    "fig13": [
        {
            "transmitter": {
                "half_power_semiangle": 15.0,
                "placement": PRESET_PLACEMENTS["gsm_4_2_16_narrow"],
            },
            "receiver": {"fov": 45.0},
            "scheme": {"kind": "SM", "n_t": 4, "n_a": 1, "m": 256, "label": "sm_4_1_256"},
        },
        {
            "transmitter": {
                "half_power_semiangle": 15.0,
                "placement": PRESET_PLACEMENTS["gsm_4_2_16_narrow"],
            },
            "receiver": {"fov": 45.0},
            "scheme": {"kind": "GSM", "n_t": 4, "n_a": 2, "m": 16, "label": "gsm_4_2_16"},
        },
    ],
    "table2": _SYSTEMS_8_BPCU,
}

# Parameter sweeps. Every value keeps the noise level of the base geometry,
# d_tx = 0.6 m and Φ½ = 60°. The d_tx sweep puts the four LEDs on the corners
# of a 3x3 grid of pitch d_tx.
PRESET_PARAMETER_SWEEPS = {
    "fig7": {
        "transmitter": {"rows": 3, "cols": 3, "placement": [0, 2, 6, 8]},
        "scheme": {"kind": "GSM", "n_t": 4, "n_a": 2, "m": 8, "label": "gsm_4_2_8"},
        "sweep": {
            "snr_db": [40.0, 60.0, 75.0],
            "parameter": "d_tx",
            "values": [round(0.2 * step, 1) for step in range(1, 11)],
        },
    },
    "fig8": {
        "transmitter": {"rows": 2, "cols": 2, "placement": "full"},
        "receiver": {"fov": 45.0},
        "scheme": {"kind": "GSM", "n_t": 4, "n_a": 2, "m": 16, "label": "gsm_4_2_16"},
        "sweep": {
            "snr_db": [45.0, 60.0],
            "parameter": "half_power_semiangle",
            "values": [15.0, 20.0, 25.0, 30.0, 35.0, 40.0, 45.0, 50.0, 55.0, 60.0],
        },
    },
}

PRESET_SNR_GRIDS = {
    "fig5": [float(snr) for snr in range(20, 85, 5)],
    "fig6": [float(snr) for snr in range(20, 95, 5)],
    "fig11": [float(snr) for snr in range(0, 75, 5)],
    "fig12": [float(snr) for snr in range(20, 95, 5)],
    "fig13": [float(snr) for snr in range(20, 95, 5)],
}

EXIT_SUCCESS = 0
EXIT_CONFIG_ERROR = 2
EXIT_BUDGET = 3
