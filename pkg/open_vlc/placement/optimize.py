"""
Optimum LED placement on a transmitter grid.

Every placement of N_t LEDs on the ``rows x cols`` cells is evaluated: the
channel of the occupied cells is taken from the full-grid channel matrix, the
pattern policy of the scheme is applied to it and d_min,H and d_avg,H of the
resulting signal set are computed. The best placement maximizes d_min,H,
then d_avg,H; remaining ties go to the lexicographically smallest cell set.
"""

import logging
import warnings
from dataclasses import dataclass, field
from itertools import combinations
from math import comb
from typing import List, Optional, Sequence, Tuple

import numpy as np
import pandas as pd
from tqdm import tqdm

from open_vlc.channel.geometry import DOWN, Emitter, GridSpec, Vec3, grid_positions
from open_vlc.channel.lambertian import ChannelMatrix, LambertianParams, build_channel
from open_vlc.modulation.distance import image_distances
from open_vlc.modulation.patterns import (
    PatternTables,
    all_patterns,
    optimize_family,
    select_patterns,
)
from open_vlc.modulation.signal_set import SchemeConfig, pattern_vectors
from open_vlc.simulation.parallel import WorkerPool
from open_vlc.utils.constants import PLACEMENT_SEARCH_LIMIT
from open_vlc.utils.exceptions import BudgetExceededError, ConfigurationError

log = logging.getLogger(__name__)

Cells = Tuple[int, ...]

# placements per worker task
_CHUNK = 64
# significant digits compared when ranking placements
_RANK_DIGITS = 12


@dataclass(frozen=True, eq=False)
class PlacementCandidate:
    cells: Cells
    H: ChannelMatrix
    d_min: float
    d_avg: float
    patterns: Tuple[Tuple[int, ...], ...]


@dataclass(frozen=True, eq=False)
class PlacementResult:
    """
    Attributes
    ----------
    best: PlacementCandidate
    runners_up: list of PlacementCandidate
        The next best candidates in rank order.
    symmetry: list of tuple
        Orbit of the best cell set under the symmetries shared by the
        transmitter and receiver grids.
    evaluated: int
        Number of placements evaluated.
    """

    best: PlacementCandidate
    runners_up: List[PlacementCandidate] = field(default_factory=list)
    symmetry: List[Cells] = field(default_factory=list)
    evaluated: int = 0

    def to_dataframe(self) -> pd.DataFrame:
        """Best candidate and runners-up, one row per rank starting at 1."""
        rows = [
            {
                "rank": rank,
                "cells": " ".join(str(c) for c in candidate.cells),
                "d_min": candidate.d_min,
                "d_avg": candidate.d_avg,
            }
            for rank, candidate in enumerate([self.best] + self.runners_up, start=1)
        ]
        return pd.DataFrame(rows, columns=["rank", "cells", "d_min", "d_avg"])


def placement_metrics(H, scheme: SchemeConfig) -> Tuple[float, float, list]:
    """
    d_min,H, d_avg,H and activation patterns of `scheme` on channel `H`.

    The scheme's pattern policy is applied to `H` first.
    """
    H = np.asarray(getattr(H, "H", H), dtype=float)
    candidates = all_patterns(scheme.n_t, scheme.n_a)
    count = scheme.pattern_count
    if scheme.pattern_policy == "optimized" and count < len(candidates):
        tables = PatternTables(H, scheme, candidates)
        family = optimize_family(tables, count)
        d_min, d_avg = tables.family_metrics(family)
        return d_min, d_avg, [candidates[i] for i in family]

    patterns = select_patterns(
        scheme.n_t, scheme.n_a, count, scheme.pattern_policy, H, scheme, scheme.patterns
    )
    distances = image_distances(H, pattern_vectors(scheme, patterns))
    return float(distances.min()), float(distances.mean()), patterns


def _evaluate_placements(task) -> np.ndarray:
    """(d_min, d_avg) of every cell set of a chunk, shape (n, 2)."""
    H, scheme, chunk = task
    return np.array([placement_metrics(H[:, cells], scheme)[:2] for cells in chunk])


def _rounded(values: np.ndarray, digits: int = _RANK_DIGITS) -> np.ndarray:
    """`values` rounded to `digits` significant digits."""
    values = np.asarray(values, dtype=float)
    magnitude = np.zeros_like(values)
    nonzero = values != 0
    magnitude[nonzero] = np.floor(np.log10(np.abs(values[nonzero])))
    scale = 10.0 ** (digits - 1 - magnitude)
    return np.round(values * scale) / scale


def rank_order(d_min: np.ndarray, d_avg: np.ndarray) -> np.ndarray:
    """
    Candidate positions sorted by d_min desc, d_avg desc, position asc.

    Metrics are compared to 12 significant digits, so placements that are
    mirror images of each other tie.
    """
    positions = np.arange(len(d_min))
    return np.lexsort((positions, -_rounded(d_avg), -_rounded(d_min)))


def full_grid_channel(
    grid: GridSpec, detectors, params: LambertianParams, normal: Vec3 = Vec3(*DOWN)
) -> ChannelMatrix:
    """Channel matrix with one column per grid cell, all LEDs facing `normal`."""
    emitters = [Emitter(position, normal) for position in grid_positions(grid)]
    return build_channel(emitters, detectors, params)


def optimize_placement(
    grid: GridSpec,
    detectors,
    scheme: SchemeConfig,
    params: LambertianParams,
    top_k: int = 10,
    limit: int = PLACEMENT_SEARCH_LIMIT,
    threads: Optional[int] = None,
    rx_grid: Optional[GridSpec] = None,
    progress: bool = True,
    normal: Vec3 = Vec3(*DOWN),
) -> PlacementResult:
    """
    Exhaustive search of the best placement of ``scheme.n_t`` LEDs.

    Parameters
    ----------
    grid: GridSpec
        Transmitter grid, its cells are numbered row-major from 0.
    detectors: list of Detector
    scheme: SchemeConfig
        With pattern policy 'optimized' the pattern family is searched for
        every placement before placements are compared.
    params: LambertianParams
    top_k: int
        Number of candidates returned in total, best included.
    limit: int
        Maximum number of placements to evaluate.
    threads: int, optional
        Worker processes; the result does not depend on it.
    rx_grid: GridSpec, optional
        Receiver grid, used to determine the shared symmetry group.
    progress: bool
        Show a tqdm progress bar.
    normal: Vec3
        Direction the LEDs face.

    Returns
    -------
    PlacementResult

    Raises
    ------
    BudgetExceededError
        If C(rows*cols, n_t) exceeds `limit`.
    """
    n_cells = grid.size
    total = comb(n_cells, scheme.n_t)
    if scheme.n_t > n_cells:
        raise ConfigurationError(
            f"{scheme.n_t} LEDs do not fit into a {grid.rows}x{grid.cols} grid"
        )
    if total > limit:
        raise BudgetExceededError(
            f"{total} placements of {scheme.n_t} LEDs on a {grid.rows}x{grid.cols} "
            f"grid exceed the search limit of {limit}. Use a smaller grid."
        )
    log.info(
        f"Evaluating {total} placements of {scheme.name} "
        f"on a {grid.rows}x{grid.cols} grid"
    )

    full = full_grid_channel(grid, detectors, params, normal)
    cell_sets = np.array(list(combinations(range(n_cells), scheme.n_t)), dtype=np.intp)
    tasks = (
        (full.H, scheme, cell_sets[start : start + _CHUNK])
        for start in range(0, total, _CHUNK)
    )

    metrics = []
    with WorkerPool(threads) as pool, tqdm(
        total=total,
        desc=f"Placing {scheme.name}",
        unit=" placements",
        disable=not progress,
    ) as pbar:
        for chunk_metrics in pool.imap(_evaluate_placements, tasks):
            metrics.append(chunk_metrics)
            pbar.update(len(chunk_metrics))
    metrics = np.concatenate(metrics)

    order = rank_order(metrics[:, 0], metrics[:, 1])
    ranked = []
    for position in order[: max(top_k, 1)]:
        cells = tuple(int(c) for c in cell_sets[position])
        H = full.columns(cells)
        d_min, d_avg, patterns = placement_metrics(H, scheme)
        ranked.append(
            PlacementCandidate(
                cells=cells,
                H=H,
                d_min=d_min,
                d_avg=d_avg,
                patterns=tuple(tuple(p) for p in patterns),
            )
        )

    square = grid.rows == grid.cols and (rx_grid is None or rx_grid.rows == rx_grid.cols)
    best = ranked[0]
    log.info(
        f"Best placement {best.cells}: "
        f"d_min={best.d_min:.4e}, d_avg={best.d_avg:.4e}"
    )
    return PlacementResult(
        best=best,
        runners_up=ranked[1:],
        symmetry=symmetry_orbit(best.cells, grid.rows, grid.cols, square),
        evaluated=total,
    )


def _transforms(rows: int, cols: int, square: bool):
    yield lambda r, c: (r, c)
    yield lambda r, c: (rows - 1 - r, c)
    yield lambda r, c: (r, cols - 1 - c)
    yield lambda r, c: (rows - 1 - r, cols - 1 - c)
    if square:
        yield lambda r, c: (c, r)
        yield lambda r, c: (c, rows - 1 - r)
        yield lambda r, c: (cols - 1 - c, r)
        yield lambda r, c: (cols - 1 - c, rows - 1 - r)


def symmetry_orbit(
    cells: Sequence[int], rows: int, cols: int, square: Optional[bool] = None
) -> List[Cells]:
    """
    Distinct images of a cell set under the grid's dihedral symmetries.

    Mirrors and the 180° rotation for rectangular grids, additionally the
    90° rotations and diagonal mirrors if `square` (default: rows == cols).
    Returned sorted, each cell set sorted.
    """
    square = rows == cols if square is None else square and rows == cols
    orbit = set()
    for transform in _transforms(rows, cols, square):
        image = []
        for cell in cells:
            r, c = transform(*divmod(cell, cols))
            image.append(r * cols + c)
        orbit.add(tuple(sorted(image)))
    return sorted(orbit)


def grid_art(cells: Sequence[int], rows: int, cols: int) -> str:
    """
    Placement as text, ``×`` for an LED and ``○`` for an empty cell.

    Row 0 is printed first.
    """
    occupied = set(cells)
    return "\n".join(
        " ".join("×" if r * cols + c in occupied else "○" for c in range(cols))
        for r in range(rows)
    )


def rank_configs(
    configs: Sequence[SchemeConfig],
    grid: GridSpec,
    detectors,
    params: LambertianParams,
    threads: Optional[int] = None,
    limit: int = PLACEMENT_SEARCH_LIMIT,
    progress: bool = True,
    placements: Optional[Sequence] = None,
    normal: Vec3 = Vec3(*DOWN),
) -> pd.DataFrame:
    """
    Compare schemes, each on its own placement.

    Parameters
    ----------
    configs: list of SchemeConfig
    grid: GridSpec
    detectors: list of Detector
    params: LambertianParams
    threads, limit, progress:
        Passed on to :func:`optimize_placement`.
    placements: list, optional
        One entry per config: a list of grid cells to evaluate the scheme on,
        or None (or 'auto') to search its optimum placement.
    normal: Vec3
        Direction the LEDs face.

    Returns
    -------
    pandas.DataFrame
        One row per config with columns label, kind, n_t, n_a, m, eta,
        d_min, d_avg and cells.
    """
    placements = [None] * len(configs) if placements is None else list(placements)
    if len(placements) != len(configs):
        raise ConfigurationError(
            f"got {len(placements)} placements for {len(configs)} configurations"
        )
    efficiencies = {cfg.efficiency for cfg in configs}
    if len(efficiencies) > 1:
        warnings.warn(
            f"Compared configurations differ in efficiency: {sorted(efficiencies)} bpcu",
            stacklevel=2,
        )
    full = None
    rows = []
    for cfg, cells in zip(configs, placements):
        if cells is None or cells == "auto":
            best = optimize_placement(
                grid,
                detectors,
                cfg,
                params,
                top_k=1,
                limit=limit,
                threads=threads,
                progress=progress,
                normal=normal,
            ).best
            cells, d_min, d_avg = best.cells, best.d_min, best.d_avg
        else:
            if full is None:
                full = full_grid_channel(grid, detectors, params, normal)
            cells = tuple(int(c) for c in cells)
            if len(cells) != cfg.n_t:
                raise ConfigurationError(
                    f"{cfg.name} needs {cfg.n_t} cells, got {len(cells)}",
                    "transmitter.placement",
                )
            d_min, d_avg, _ = placement_metrics(full.columns(cells), cfg)
        rows.append(
            {
                "label": cfg.name,
                "kind": cfg.kind,
                "n_t": cfg.n_t,
                "n_a": cfg.n_a,
                "m": cfg.m,
                "eta": cfg.efficiency,
                "d_min": d_min,
                "d_avg": d_avg,
                "cells": " ".join(str(c) for c in cells),
            }
        )
    return pd.DataFrame(rows)
