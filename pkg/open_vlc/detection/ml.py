"""Maximum-likelihood detection over a signal set."""

from dataclasses import dataclass

import numpy as np

from open_vlc.modulation.distance import as_gain_matrix

# received vectors scored per block in batch detection
_BLOCK = 4096


@dataclass(frozen=True)
class DetectionResult:
    index: int
    label: str


def received_images(H, signal_set, r: float) -> np.ndarray:
    """Noise-free received vectors r H x of all signal vectors, shape (A, N_r)."""
    return r * (np.asarray(signal_set.vectors) @ as_gain_matrix(H).T)


def ml_detect(y, H, signal_set, r: float, sigma: float = 1.0) -> DetectionResult:
    """
    Signal vector minimizing ‖y - r H x‖².

    `sigma` does not change the decision, it is accepted for the symmetry
    with the noise-normalized form of the rule. Ties go to the lowest index.
    """
    images = received_images(H, signal_set, r)
    y = np.asarray(y, dtype=float)
    if y.shape != (images.shape[1],):
        raise ValueError(
            f"received vector has shape {y.shape}, expected ({images.shape[1]},)"
        )
    metric = ((images - y) ** 2).sum(axis=1)
    index = int(np.argmin(metric))
    return DetectionResult(index=index, label=signal_set.labels[index])


def ml_detect_batch(received: np.ndarray, images: np.ndarray) -> np.ndarray:
    """
    Detected indices for a batch of received vectors.

    Parameters
    ----------
    received: numpy.ndarray
        Shape (B, N_r).
    images: numpy.ndarray
        Noise-free received vectors from :func:`received_images`, (A, N_r).

    Returns
    -------
    numpy.ndarray
        Shape (B,), lowest index on ties of the metric
        ``‖c‖² - 2 yᵀc`` (‖y - c‖² without the constant ‖y‖²).
    """
    energy = (images**2).sum(axis=1)
    detected = np.empty(received.shape[0], dtype=np.intp)
    for start in range(0, received.shape[0], _BLOCK):
        block = received[start : start + _BLOCK]
        metric = energy[None, :] - 2.0 * (block @ images.T)
        detected[start : start + _BLOCK] = np.argmin(metric, axis=1)
    return detected
