from itertools import combinations

import numpy as np
import pytest

from open_vlc.modulation.distance import image_distances
from open_vlc.modulation.patterns import (
    PatternTables,
    all_patterns,
    optimize_family,
    select_patterns,
    validate_patterns,
)
from open_vlc.modulation.signal_set import SchemeConfig, pattern_vectors
from open_vlc.utils.exceptions import ConfigurationError


def brute_force_best(H, scheme, count):
    """Best (d_min, d_avg) over all pattern families, evaluated directly."""
    candidates = all_patterns(scheme.n_t, scheme.n_a)
    best = None
    for family in combinations(candidates, count):
        distances = image_distances(H, pattern_vectors(scheme, family))
        # families sharing their closest pair tie on d_min
        key = (float(f"{distances.min():.9e}"), distances.mean())
        if best is None or key > best:
            best = key
    return best


def test_all_patterns_lexicographic():
    assert all_patterns(4, 2) == [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]
    assert len(all_patterns(12, 2)) == 66


def test_select_lexicographic():
    patterns = select_patterns(4, 2, 4, "lexicographic")
    assert patterns == [(0, 1), (0, 2), (0, 3), (1, 2)]


def test_select_all_patterns_ignores_policy():
    assert select_patterns(4, 1, 4, "optimized") == [(0,), (1,), (2,), (3,)]


def test_select_explicit():
    patterns = select_patterns(
        4, 2, 4, "explicit", patterns=[[3, 2], [0, 1], [1, 3], [0, 2]]
    )
    assert patterns == [(2, 3), (0, 1), (1, 3), (0, 2)]


@pytest.mark.parametrize(
    "patterns, message",
    [
        ([[0, 1], [0, 2], [0, 3], [0, 1]], "repeat"),
        ([[0, 1], [0, 2], [0, 3], [1, 4]], "outside"),
        ([[0, 1], [0, 2], [0, 3]], "expected 4"),
        ([[0, 1], [0, 2], [0, 3], [1, 1]], "distinct"),
    ],
)
def test_validate_patterns(patterns, message):
    with pytest.raises(ConfigurationError, match=message):
        validate_patterns(4, 2, 4, patterns)


def test_select_too_many_patterns():
    with pytest.raises(ConfigurationError):
        select_patterns(4, 2, 7, "lexicographic")


def test_select_unknown_policy():
    with pytest.raises(ConfigurationError, match="pattern_policy"):
        select_patterns(4, 2, 4, "random")


def test_optimized_needs_channel():
    with pytest.raises(ConfigurationError):
        select_patterns(4, 2, 4, "optimized")


def test_pattern_tables_match_direct_metrics(random_channel):
    scheme = SchemeConfig("GSM", 5, 2, 2)
    H = random_channel(3, 5, seed=1)
    candidates = all_patterns(5, 2)
    tables = PatternTables(H, scheme, candidates)

    for family in ([0, 1, 2, 3, 4, 5, 6, 7], [2, 3, 5, 6, 7, 8, 9, 0], [9, 1, 4, 6]):
        distances = image_distances(
            H, pattern_vectors(scheme, [candidates[i] for i in family])
        )
        d_min, d_avg = tables.family_metrics(sorted(family))
        assert d_min == pytest.approx(distances.min(), rel=1e-9)
        assert d_avg == pytest.approx(distances.mean(), rel=1e-9)


def test_optimized_family_matches_brute_force(random_channel):
    scheme = SchemeConfig("GSM", 5, 2, 2)
    H = random_channel(4, 5, seed=3)

    patterns = select_patterns(5, 2, scheme.pattern_count, "optimized", H, scheme)
    distances = image_distances(H, pattern_vectors(scheme, patterns))
    best_min, best_avg = brute_force_best(H, scheme, scheme.pattern_count)

    assert len(patterns) == 8
    assert patterns == sorted(patterns)
    assert distances.min() == pytest.approx(best_min, rel=1e-9)
    assert distances.mean() == pytest.approx(best_avg, rel=1e-9)


def test_optimized_family_beats_lexicographic(random_channel):
    scheme = SchemeConfig("GSM", 6, 2, 2)
    H = random_channel(4, 6, seed=5)
    count = scheme.pattern_count

    optimized = select_patterns(6, 2, count, "optimized", H, scheme)
    lexicographic = select_patterns(6, 2, count, "lexicographic")
    d_opt = image_distances(H, pattern_vectors(scheme, optimized)).min()
    d_lex = image_distances(H, pattern_vectors(scheme, lexicographic)).min()
    assert d_opt >= d_lex


def test_greedy_family(random_channel):
    scheme = SchemeConfig("GSM", 6, 2, 2)
    H = random_channel(4, 6, seed=5)
    tables = PatternTables(H, scheme, all_patterns(6, 2))

    greedy = optimize_family(tables, 8, limit=0)
    exhaustive = optimize_family(tables, 8)
    assert len(set(greedy)) == 8
    assert greedy == sorted(greedy)
    assert tables.family_metrics(greedy)[0] <= tables.family_metrics(exhaustive)[0]


def test_optimize_family_takes_all_if_count_reaches_size(random_channel):
    scheme = SchemeConfig("GSM", 4, 2, 2)
    tables = PatternTables(random_channel(2, 4), scheme, all_patterns(4, 2))
    assert optimize_family(tables, 6) == list(range(6))


def test_pattern_tables_single_word_patterns(random_channel):
    scheme = SchemeConfig("GSSK", 5, 2, 1)
    tables = PatternTables(random_channel(2, 5), scheme, all_patterns(5, 2))

    assert tables.words == 1
    # one vector per pattern, no distinct pair within a pattern
    assert np.all(np.isinf(np.diag(tables.dmin)))
    assert np.all(np.diag(tables.dsum) == 0)
