"""Channel-mapped distance metrics d_min,H and d_avg,H of a signal set."""

import numpy as np
from scipy.spatial.distance import pdist

from open_vlc.utils.exceptions import ConfigurationError


def as_gain_matrix(H) -> np.ndarray:
    """Plain array of a :class:`~open_vlc.channel.lambertian.ChannelMatrix` or array."""
    return np.asarray(getattr(H, "H", H), dtype=float)


def image_distances(H, signal_set) -> np.ndarray:
    """
    Squared distances ‖H(x_j - x_i)‖² over all unordered pairs i < j.

    Returned in the condensed order of :func:`scipy.spatial.distance.pdist`.
    """
    H = as_gain_matrix(H)
    vectors = np.asarray(getattr(signal_set, "vectors", signal_set), dtype=float)
    if vectors.shape[0] < 2:
        raise ConfigurationError("distance metrics need at least two signal vectors")
    if vectors.shape[1] != H.shape[1]:
        raise ConfigurationError(
            f"signal vectors have {vectors.shape[1]} entries, "
            f"channel has {H.shape[1]} LEDs"
        )
    return pdist(vectors @ H.T, "sqeuclidean")


def d_min(H, signal_set) -> float:
    """Minimum squared channel-mapped distance between two signal vectors."""
    return float(image_distances(H, signal_set).min())


def d_avg(H, signal_set) -> float:
    """Mean squared channel-mapped distance over all C(A, 2) vector pairs."""
    return float(image_distances(H, signal_set).mean())
