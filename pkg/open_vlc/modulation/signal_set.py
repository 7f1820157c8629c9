"""
Intensity alphabets, scheme configurations and labelled signal sets.

Every supported scheme is a special case of generalized spatial modulation
(GSM): N_a of N_t LEDs are switched on, the activation pattern carries the
index bits and each active LED emits one of the PAM intensity levels.

Bit layout of a label, most significant bit first::

    [index bits: position in the pattern list][symbol bits of LED 1]...[LED N_a]

where the LEDs of a pattern are taken in increasing index order and the
symbol value ``m - 1`` selects level I_m. The i-th vector of a signal set
carries the label ``format(i, "0{eta}b")``.
"""

from dataclasses import dataclass
from math import comb
from typing import List, Optional, Sequence, Tuple

import numpy as np

from open_vlc.utils.constants import INDEX_ONLY_SCHEMES, PATTERN_POLICIES, SCHEMES
from open_vlc.utils.exceptions import ConfigurationError


def floor_log2(value: int) -> int:
    """Exact ⌊log2 value⌋ for positive integers."""
    return int(value).bit_length() - 1


@dataclass(frozen=True)
class IntensityAlphabet:
    m: int
    mean_power: float
    levels: Tuple[float, ...]


def intensity_levels(m: int, mean_power: float = 1.0) -> IntensityAlphabet:
    """
    Equally spaced PAM intensities I_m = 2 I_p m / (M + 1), m = 1..M.

    The mean of the levels equals `mean_power`.
    """
    if m < 1 or mean_power <= 0:
        raise ConfigurationError("need M >= 1 and a positive mean power", "scheme")
    levels = tuple(2.0 * mean_power * k / (m + 1) for k in range(1, m + 1))
    return IntensityAlphabet(m=m, mean_power=mean_power, levels=levels)


@dataclass(frozen=True)
class SchemeConfig:
    """
    Transmission scheme.

    Parameters
    ----------
    kind: {'GSM', 'SM', 'SMP', 'SSK', 'GSSK'}
    n_t, n_a, m: int
        Number of LEDs, active LEDs per channel use and intensity levels.
    mean_power: float
        I_p, mean optical power in W.
    pattern_policy: {'lexicographic', 'optimized', 'explicit'}
    patterns: tuple of tuple of int, optional
        0-based activation patterns for the 'explicit' policy.
    index_bits: int, optional
        Use only ``2**index_bits`` activation patterns. Defaults to
        ⌊log2 C(n_t, n_a)⌋.
    label: str, optional
        Name used in CSV file names and column groups.
    """

    kind: str
    n_t: int
    n_a: int
    m: int
    mean_power: float = 1.0
    pattern_policy: str = "lexicographic"
    patterns: Optional[Tuple[Tuple[int, ...], ...]] = None
    index_bits: Optional[int] = None
    label: Optional[str] = None

    def __post_init__(self):
        if self.patterns is not None:
            object.__setattr__(
                self, "patterns", tuple(tuple(int(i) for i in p) for p in self.patterns)
            )
        if self.kind not in SCHEMES:
            raise ConfigurationError(f"has to be one of {SCHEMES}", "scheme.kind")
        if self.pattern_policy not in PATTERN_POLICIES:
            raise ConfigurationError(
                f"has to be one of {PATTERN_POLICIES}", "scheme.pattern_policy"
            )
        if self.pattern_policy == "explicit" and not self.patterns:
            raise ConfigurationError(
                "an explicit pattern policy needs a list of patterns", "scheme.patterns"
            )
        if min(self.n_t, self.n_a, self.m) < 1:
            raise ConfigurationError("n_t, n_a and m have to be >= 1", "scheme")
        if self.n_a > self.n_t:
            raise ConfigurationError("n_a cannot exceed n_t", "scheme.n_a")
        if self.kind in ("SM", "SSK") and self.n_a != 1:
            raise ConfigurationError(
                f"{self.kind} activates exactly one LED", "scheme.n_a"
            )
        if self.kind == "SMP" and self.n_a != self.n_t:
            raise ConfigurationError("SMP activates all LEDs", "scheme.n_a")
        if self.kind in INDEX_ONLY_SCHEMES and self.m != 1:
            raise ConfigurationError(
                f"{self.kind} has no intensity symbols, m must be 1", "scheme.m"
            )
        bits = self.index_bits
        if bits is not None and not 0 <= bits <= self.max_index_bits:
            raise ConfigurationError(
                f"has to be in [0, {self.max_index_bits}]", "scheme.index_bits"
            )
        if efficiency(self) < 1:
            raise ConfigurationError(
                f"{self.kind}({self.n_t},{self.n_a},{self.m}) conveys no bits", "scheme"
            )

    @property
    def max_index_bits(self) -> int:
        return floor_log2(comb(self.n_t, self.n_a))

    @property
    def index_bit_count(self) -> int:
        return self.max_index_bits if self.index_bits is None else self.index_bits

    @property
    def symbol_bits(self) -> int:
        """Bits per active LED."""
        return 0 if self.kind in INDEX_ONLY_SCHEMES else floor_log2(self.m)

    @property
    def pattern_count(self) -> int:
        return 2**self.index_bit_count

    @property
    def efficiency(self) -> int:
        return efficiency(self)

    @property
    def name(self) -> str:
        return self.label or f"{self.kind.lower()}_{self.n_t}_{self.n_a}_{self.m}"

    @property
    def alphabet(self) -> IntensityAlphabet:
        return intensity_levels(self.m, self.mean_power)

    def used_levels(self) -> np.ndarray:
        """Intensities addressed by the symbol bits, I_1..I_(2**b)."""
        if self.kind in INDEX_ONLY_SCHEMES:
            return np.array([self.mean_power])
        return np.array(self.alphabet.levels[: 2**self.symbol_bits])

    @classmethod
    def from_dict(cls, scheme: dict) -> "SchemeConfig":
        return cls(
            kind=scheme["kind"],
            n_t=scheme["n_t"],
            n_a=scheme["n_a"],
            m=scheme["m"],
            mean_power=scheme.get("mean_power", 1.0),
            pattern_policy=scheme.get("pattern_policy", "lexicographic"),
            patterns=scheme.get("patterns"),
            index_bits=scheme.get("index_bits"),
            label=scheme.get("label"),
        )


_EFFICIENCY = {
    "GSM": lambda n_t, n_a, m: floor_log2(comb(n_t, n_a)) + n_a * floor_log2(m),
    "SMP": lambda n_t, n_a, m: n_t * floor_log2(m),
    "SSK": lambda n_t, n_a, m: floor_log2(n_t),
    "GSSK": lambda n_t, n_a, m: floor_log2(comb(n_t, n_a)),
    "SM": lambda n_t, n_a, m: floor_log2(n_t) + floor_log2(m),
}


def efficiency(cfg: SchemeConfig) -> int:
    """
    Transmission efficiency in bits per channel use.

    A reduced `index_bits` replaces the ⌊log2 C(n_t, n_a)⌋ index term.
    """
    eta = _EFFICIENCY[cfg.kind](cfg.n_t, cfg.n_a, cfg.m)
    if cfg.index_bits is not None:
        eta += cfg.index_bits - cfg.max_index_bits
    return eta


def pattern_vectors(cfg: SchemeConfig, patterns: Sequence[Sequence[int]]) -> np.ndarray:
    """
    All transmit vectors of the given patterns, pattern-major.

    Returns
    -------
    numpy.ndarray
        Shape ``(len(patterns) * 2**(n_a*b), n_t)``; row ``p*K + s`` is
        pattern `p` with symbol word `s`.
    """
    b = cfg.symbol_bits
    levels = cfg.used_levels()
    words = np.arange(2 ** (cfg.n_a * b))
    shifts = b * (cfg.n_a - 1 - np.arange(cfg.n_a))
    digits = (words[:, None] >> shifts[None, :]) & (2**b - 1)
    block = levels[digits]

    vectors = np.zeros((len(patterns) * len(words), cfg.n_t))
    for position, pattern in enumerate(patterns):
        rows = slice(position * len(words), (position + 1) * len(words))
        vectors[rows, list(pattern)] = block
    return vectors


@dataclass(frozen=True, eq=False)
class SignalSet:
    """
    Ordered signal vectors with their bit labels.

    Attributes
    ----------
    vectors: numpy.ndarray
        Shape (A, n_t), nonnegative intensities.
    labels: list of str
        ``labels[i] == format(i, f"0{eta}b")``.
    patterns: tuple
        Activation patterns in index-bit order.
    scheme: SchemeConfig
    """

    vectors: np.ndarray
    labels: List[str]
    patterns: Tuple[Tuple[int, ...], ...]
    scheme: SchemeConfig

    def __len__(self):
        return len(self.labels)

    @property
    def efficiency(self) -> int:
        return len(self.labels[0])

    def encode(self, bits) -> int:
        """Index of the vector carrying `bits` (str or sequence of 0/1)."""
        if not isinstance(bits, str):
            bits = "".join(str(int(b)) for b in bits)
        if len(bits) != self.efficiency or set(bits) - {"0", "1"}:
            raise ValueError(f"expected {self.efficiency} bits, got {bits!r}")
        return int(bits, 2)

    def decode(self, index: int) -> str:
        return self.labels[index]

    def bit_matrix(self) -> np.ndarray:
        """Labels as a (A, eta) uint8 array."""
        indices = np.arange(len(self))
        shifts = np.arange(self.efficiency - 1, -1, -1)
        return ((indices[:, None] >> shifts[None, :]) & 1).astype(np.uint8)

    def hamming_matrix(self) -> np.ndarray:
        """Pairwise Hamming distances between labels, shape (A, A)."""
        bits = self.bit_matrix()
        return (bits[:, None, :] != bits[None, :, :]).sum(axis=-1).astype(np.int16)


def build_signal_set(cfg: SchemeConfig, patterns: Sequence[Sequence[int]]) -> SignalSet:
    """
    Build the labelled signal set of `cfg` over the given activation patterns.

    Raises
    ------
    ConfigurationError
        If the number of patterns is not ``2**index_bits`` or a pattern does
        not activate exactly n_a distinct LEDs.
    """
    if len(patterns) != cfg.pattern_count:
        raise ConfigurationError(
            f"{cfg.name} needs {cfg.pattern_count} activation patterns, "
            f"got {len(patterns)}",
            "scheme.patterns",
        )
    patterns = tuple(tuple(sorted(int(i) for i in p)) for p in patterns)
    for pattern in patterns:
        if len(set(pattern)) != cfg.n_a or not all(0 <= i < cfg.n_t for i in pattern):
            raise ConfigurationError(
                f"pattern {pattern} has to activate {cfg.n_a} distinct LEDs of {cfg.n_t}",
                "scheme.patterns",
            )

    vectors = pattern_vectors(cfg, patterns)
    eta = efficiency(cfg)
    labels = [format(i, f"0{eta}b") for i in range(len(vectors))]
    vectors.setflags(write=False)
    return SignalSet(vectors=vectors, labels=labels, patterns=patterns, scheme=cfg)
