#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
Command line interface of open-VLC

    open-vlc simulate --config gsm.yml --out results/ --threads 4
    open-vlc preset fig12
    open-vlc replay results/gsm_7_2_4_simulate.manifest.json

Exit codes: 0 on success, 2 for invalid configuration, 3 if a search budget
is exceeded or a simulated point is low-confidence, 1 if a replay does not
reproduce its files.

SPDX-License-Identifier: AGPL-3.0-or-later
"""

import argparse
import logging
import sys

from open_vlc.experiment import Experiment, compare, replay
from open_vlc.placement.optimize import grid_art
from open_vlc.presets import run_preset
from open_vlc.utils.config import load_config
from open_vlc.utils.constants import (
    EXIT_BUDGET,
    EXIT_CONFIG_ERROR,
    EXIT_SUCCESS,
    PRESETS,
    VERSION,
)
from open_vlc.utils.exceptions import (
    BudgetExceededError,
    CalibrationError,
    ConfigurationError,
    GeometryError,
)

log = logging.getLogger("open_vlc")

EXIT_REPLAY_MISMATCH = 1


def _seed(value: str) -> int:
    seed = int(value)
    if not 0 <= seed < 2**64:
        raise argparse.ArgumentTypeError("seed has to be an unsigned 64-bit integer")
    return seed


def _threads(value: str) -> int:
    threads = int(value)
    if threads < 1:
        raise argparse.ArgumentTypeError("threads has to be >= 1")
    return threads


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", help="output directory")
    common.add_argument(
        "--threads",
        type=_threads,
        help="worker processes; affects speed only, never results",
    )
    common.add_argument(
        "--quiet", action="store_true", help="do not show progress bars"
    )
    # presets and replays pin their seed, they take no --seed
    seeded = argparse.ArgumentParser(add_help=False, parents=[common])
    seeded.add_argument("--seed", type=_seed, help="master seed, overrides sim.seed")

    parser = argparse.ArgumentParser(
        prog="open-vlc",
        description="Link-level simulation of spatial modulation schemes in indoor VLC",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {VERSION}")
    subparsers = parser.add_subparsers(dest="command", required=True)

    for command, description in [
        ("channel", "write the channel matrix of the placed LEDs"),
        ("metrics", "report efficiency, d_min,H and d_avg,H"),
        ("bound", "union bound on the BER over the SNR grid"),
        ("simulate", "Monte Carlo BER and union bound over the SNR grid"),
        ("place-opt", "exhaustive search of the optimum LED placement"),
    ]:
        sub = subparsers.add_parser(command, parents=[seeded], help=description)
        sub.add_argument("--config", required=True, help="YAML experiment config")
        if command == "place-opt":
            sub.add_argument(
                "--top-k", type=int, default=10, help="number of candidates written"
            )

    sub = subparsers.add_parser(
        "compare", parents=[seeded], help="simulate several schemes on one SNR grid"
    )
    sub.add_argument(
        "--config",
        action="append",
        required=True,
        help="YAML experiment config, repeat for every scheme",
    )
    sub.add_argument(
        "--allow-mixed-efficiency",
        action="store_true",
        help="compare schemes with different bits per channel use",
    )

    sub = subparsers.add_parser(
        "preset", parents=[common], help="reproduce a predefined experiment"
    )
    sub.add_argument("name", choices=PRESETS)

    sub = subparsers.add_parser(
        "replay", parents=[common], help="re-run a manifest and verify its checksums"
    )
    sub.add_argument("manifest", help="manifest JSON file of an earlier run")
    return parser


def run(args) -> int:
    progress = not args.quiet

    if args.command == "preset":
        result = run_preset(
            args.name, out=args.out, threads=args.threads, progress=progress
        )
        return EXIT_BUDGET if result.low_confidence else EXIT_SUCCESS

    if args.command == "replay":
        matches = replay(
            args.manifest, out=args.out, threads=args.threads, progress=progress
        )
        if not all(matches.values()):
            return EXIT_REPLAY_MISMATCH
        log.info(f"All {len(matches)} file(s) reproduced")
        return EXIT_SUCCESS

    if args.command == "compare":
        configs = [load_config(path) for path in args.config]
        if args.seed is not None:
            configs = [c.replace(sim={"seed": args.seed}) for c in configs]
        merged = compare(
            configs,
            out=args.out,
            threads=args.threads,
            allow_mixed_efficiency=args.allow_mixed_efficiency,
            progress=progress,
        )
        flags = merged[[c for c in merged.columns if c.endswith("_low_confidence")]]
        return EXIT_BUDGET if flags.to_numpy().any() else EXIT_SUCCESS

    exp = Experiment(
        args.config,
        seed=args.seed,
        out=args.out,
        threads=args.threads,
        progress=progress,
    )
    if args.command == "channel":
        print(exp.channel().to_string(index=False))
    elif args.command == "metrics":
        for key, value in exp.metrics().items():
            print(f"{key}: {value}")
    elif args.command == "bound":
        exp.bound()
    elif args.command == "simulate":
        exp.simulate()
        if exp.low_confidence:
            return EXIT_BUDGET
    elif args.command == "place-opt":
        result = exp.place_opt(top_k=args.top_k)
        tx = exp.config.transmitter
        print(grid_art(result.best.cells, tx["rows"], tx["cols"]))
        print(f"cells: {' '.join(str(c) for c in result.best.cells)}")
        print(f"d_min: {result.best.d_min:.6e}  d_avg: {result.best.d_avg:.6e}")
    return EXIT_SUCCESS


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return run(args)
    except (ConfigurationError, GeometryError, CalibrationError) as e:
        log.error(str(e))
        return EXIT_CONFIG_ERROR
    except BudgetExceededError as e:
        log.error(str(e))
        return EXIT_BUDGET


if __name__ == "__main__":
    sys.exit(main())
