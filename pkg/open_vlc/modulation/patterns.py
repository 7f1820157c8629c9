"""
Activation pattern selection.

Only ``2**⌊log2 C(N_t, N_a)⌋`` of the C(N_t, N_a) activation patterns are
needed for signalling. Which ones are used changes the distance profile of the
signal set for a given channel, so besides the lexicographic choice the
family with the largest d_min,H (then d_avg,H) can be searched for.
"""

import logging
from functools import lru_cache
from itertools import combinations, islice
from math import comb
from typing import Iterator, List, Optional, Sequence, Tuple

import numpy as np
from scipy.spatial.distance import cdist

from open_vlc.modulation.distance import as_gain_matrix
from open_vlc.modulation.signal_set import SchemeConfig, pattern_vectors
from open_vlc.utils.constants import PATTERN_POLICIES, PATTERN_SEARCH_LIMIT
from open_vlc.utils.exceptions import ConfigurationError

log = logging.getLogger(__name__)

Pattern = Tuple[int, ...]

# families evaluated per vectorized chunk
_CHUNK = 1 << 15
# sorted distance entries tested per pass when resolving family minima
_ENTRY_PASS = 32
# family tables up to this many entries are kept in memory between searches
_CACHED_ENTRIES = 1 << 22


def all_patterns(n_t: int, n_a: int) -> List[Pattern]:
    return list(combinations(range(n_t), n_a))


class PatternTables:
    """
    Pattern-level distance tables of a channel and scheme.

    For patterns a, b with symbol words s, t and images y = H x:

    * ``dmin[a, b]`` is min ‖y_as - y_bt‖² over all word pairs (s != t when
      a == b, ``inf`` if no such pair exists),
    * ``dsum[a, b]`` is the sum of ‖y_as - y_bt‖² over unordered vector pairs.

    The d_min,H of a pattern family is the minimum of `dmin` over the family's
    (a, b) entries with a <= b; the pair-sum of d_avg,H is the sum of `dsum`
    over the same entries.
    """

    def __init__(self, H, scheme: SchemeConfig, patterns: Sequence[Pattern]):
        H = as_gain_matrix(H)
        self.patterns = [tuple(p) for p in patterns]
        self.words = 2 ** (scheme.n_a * scheme.symbol_bits)
        n = len(self.patterns)
        k = self.words

        images = pattern_vectors(scheme, self.patterns) @ H.T
        dist = cdist(images, images, "sqeuclidean")
        np.fill_diagonal(dist, np.inf)
        blocks = dist.reshape(n, k, n, k)
        self.dmin = blocks.min(axis=(1, 3))
        np.fill_diagonal(dist, 0.0)
        self.dsum = blocks.sum(axis=(1, 3))
        self.dsum[np.diag_indices(n)] /= 2

        upper_a, upper_b = np.triu_indices(n)
        values = self.dmin[upper_a, upper_b]
        finite = np.isfinite(values)
        order = np.argsort(values[finite], kind="stable")
        self._entry_a = upper_a[finite][order]
        self._entry_b = upper_b[finite][order]
        self._entry_values = values[finite][order]

    def __len__(self):
        return len(self.patterns)

    def family_metrics(self, family: Sequence[int]) -> Tuple[float, float]:
        """(d_min, d_avg) of the signal set built on patterns `family` (indices)."""
        dmin, dsum = self.evaluate(np.asarray([family]))
        size = len(family) * self.words
        return float(dmin[0]), float(dsum[0]) / comb(size, 2)

    def evaluate(self, families: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
        """
        d_min and distance pair-sums of many families at once.

        Parameters
        ----------
        families: numpy.ndarray
            Integer array (n_families, count) of pattern indices.
        """
        n_families = families.shape[0]
        included = np.zeros((n_families, len(self)), dtype=bool)
        np.put_along_axis(included, families, True, axis=1)

        weights = included.astype(float)
        dsum = ((weights @ np.triu(self.dsum, 1)) * weights).sum(axis=1)
        dsum += weights @ np.diag(self.dsum)

        dmin = np.full(n_families, np.inf)
        pending = np.arange(n_families)
        for start in range(0, len(self._entry_values), _ENTRY_PASS):
            a = self._entry_a[start : start + _ENTRY_PASS]
            b = self._entry_b[start : start + _ENTRY_PASS]
            rows = included[pending]
            hit = rows[:, a] & rows[:, b]
            found = hit.any(axis=1)
            first = hit.argmax(axis=1)
            dmin[pending[found]] = self._entry_values[start + first[found]]
            pending = pending[~found]
            if not pending.size:
                break
        return dmin, dsum


@lru_cache(maxsize=8)
def _family_array(n: int, count: int) -> np.ndarray:
    families = np.array(list(combinations(range(n), count)), dtype=np.intp)
    families.setflags(write=False)
    return families


def _family_chunks(n: int, count: int) -> Iterator[np.ndarray]:
    """All count-subsets of range(n) in lexicographic order, chunk by chunk."""
    if comb(n, count) * count <= _CACHED_ENTRIES:
        families = _family_array(n, count)
        for start in range(0, len(families), _CHUNK):
            yield families[start : start + _CHUNK]
        return
    family_iter = combinations(range(n), count)
    while True:
        chunk = list(islice(family_iter, _CHUNK))
        if not chunk:
            return
        yield np.array(chunk, dtype=np.intp)


def _exhaustive_family(tables: PatternTables, count: int) -> List[int]:
    best_key, best_family = None, None
    for families in _family_chunks(len(tables), count):
        dmin, dsum = tables.evaluate(families)
        top = dmin.max()
        candidates = np.flatnonzero(dmin == top)
        winner = candidates[np.argmax(dsum[candidates])]
        key = (top, dsum[winner])
        # strict comparison keeps the lexicographically first family on ties
        if best_key is None or key > best_key:
            best_key, best_family = key, families[winner]
    return [int(i) for i in best_family]


def _greedy_family(tables: PatternTables, count: int) -> List[int]:
    n = len(tables)
    dmin, dsum = tables.dmin, tables.dsum
    diag = np.diag(dmin)

    pair_min = np.minimum(np.minimum(diag[:, None], diag[None, :]), dmin)
    pair_sum = np.diag(dsum)[:, None] + np.diag(dsum)[None, :] + dsum
    upper_a, upper_b = np.triu_indices(n, 1)
    keys = np.lexsort((-pair_sum[upper_a, upper_b], -pair_min[upper_a, upper_b]))
    first = keys[0]
    family = [int(upper_a[first]), int(upper_b[first])]
    current = pair_min[family[0], family[1]]

    # distance of every pattern to the family so far, including itself
    reach = np.minimum(diag, np.minimum(dmin[:, family[0]], dmin[:, family[1]]))
    added = np.diag(dsum) + dsum[:, family[0]] + dsum[:, family[1]]
    available = np.ones(n, dtype=bool)
    available[family] = False

    while len(family) < count:
        score = np.where(available, np.minimum(reach, current), -np.inf)
        top = score.max()
        candidates = np.flatnonzero(available & (score == top))
        pick = int(candidates[np.argmax(added[candidates])])
        family.append(pick)
        available[pick] = False
        current = top
        reach = np.minimum(reach, dmin[:, pick])
        added = added + dsum[:, pick]
    return sorted(family)


def optimize_family(
    tables: PatternTables, count: int, limit=PATTERN_SEARCH_LIMIT
) -> List[int]:
    """
    Pattern indices of the family with maximum d_min,H, then d_avg,H.

    Exhaustive over all C(P, count) families if that number is at most
    `limit`, greedy otherwise.
    """
    n = len(tables)
    if count >= n:
        return list(range(n))
    if comb(n, count) <= limit:
        return _exhaustive_family(tables, count)
    log.debug(f"C({n}, {count}) families exceed {limit}, using greedy pattern search")
    return _greedy_family(tables, count)


def validate_patterns(n_t: int, n_a: int, count: int, patterns) -> List[Pattern]:
    checked = []
    for pattern in patterns:
        pattern = tuple(sorted(int(i) for i in pattern))
        if len(pattern) != n_a or len(set(pattern)) != n_a:
            raise ConfigurationError(
                f"pattern {pattern} has to contain {n_a} distinct LEDs", "scheme.patterns"
            )
        if not all(0 <= i < n_t for i in pattern):
            raise ConfigurationError(
                f"pattern {pattern} references LEDs outside [0, {n_t})", "scheme.patterns"
            )
        checked.append(pattern)
    if len(set(checked)) != len(checked):
        raise ConfigurationError("patterns must not repeat", "scheme.patterns")
    if len(checked) != count:
        raise ConfigurationError(
            f"expected {count} patterns, got {len(checked)}", "scheme.patterns"
        )
    return checked


def select_patterns(
    n_t: int,
    n_a: int,
    count: int,
    policy: str,
    H=None,
    scheme: Optional[SchemeConfig] = None,
    patterns=None,
) -> List[Pattern]:
    """
    Choose `count` activation patterns.

    Parameters
    ----------
    n_t, n_a: int
    count: int
        Number of patterns, at most C(n_t, n_a).
    policy: {'lexicographic', 'optimized', 'explicit'}
        'lexicographic' takes the first `count` patterns in lexicographic
        order. 'optimized' searches the family maximizing d_min,H, then
        d_avg,H, then lexicographic order, and needs `H` and `scheme`.
        'explicit' validates and returns `patterns`.
    H: ChannelMatrix or numpy.ndarray, optional
    scheme: SchemeConfig, optional
        Provides the intensity alphabet for 'optimized'.
    patterns: list, optional
        0-based patterns for 'explicit'.

    Returns
    -------
    list of tuple
        Patterns with LED indices in increasing order.
    """
    if policy not in PATTERN_POLICIES:
        raise ConfigurationError(
            f"has to be one of {PATTERN_POLICIES}", "scheme.pattern_policy"
        )
    total = comb(n_t, n_a)
    if not 1 <= count <= total:
        raise ConfigurationError(
            f"cannot select {count} of {total} activation patterns", "scheme.patterns"
        )

    if policy == "explicit":
        if patterns is None:
            raise ConfigurationError("explicit policy needs patterns", "scheme.patterns")
        return validate_patterns(n_t, n_a, count, patterns)

    candidates = all_patterns(n_t, n_a)
    if count == total or policy == "lexicographic":
        return candidates[:count]

    if H is None or scheme is None:
        raise ConfigurationError(
            "optimized pattern selection needs a channel matrix and a scheme",
            "scheme.pattern_policy",
        )
    tables = PatternTables(H, scheme, candidates)
    return [candidates[i] for i in optimize_family(tables, count)]
