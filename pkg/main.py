#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
open-VLC - Main file

Ranking: d_min,H and d_avg,H of four 8 bpcu GSM systems on their optimum
LED placements.
Simulation: BER and union bound of GSM with N_t=7, N_a=2, M=4.

SPDX-License-Identifier: AGPL-3.0-or-later
"""

from open_vlc import Experiment
from open_vlc.presets import run_preset
from open_vlc.utils.config import config_from_dict

## specify experiment parameter

# number of worker processes, results do not depend on it
threads = None

# GSM with 7 LEDs, 2 active per channel use and 4 intensity levels (8 bpcu)
config = config_from_dict(
    {
        "scheme": {"kind": "GSM", "n_t": 7, "n_a": 2, "m": 4},
        "sweep": {"snr_db": [40.0, 50.0, 60.0, 70.0]},
        "sim": {"seed": 42, "min_bit_errors": 400, "max_channel_uses": 2_000_000},
    }
)

# instantiate Experiment class
exp = Experiment(config, threads=threads)

if __name__ == "__main__":
    ## rank the systems of equal efficiency
    run_preset("table2", threads=threads)

    ## placement, metrics and BER of one system
    print(exp.metrics())
    exp.bound()
    exp.simulate()
