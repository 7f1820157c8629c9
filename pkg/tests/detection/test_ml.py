import numpy as np
import pytest

from open_vlc.channel.lambertian import ChannelMatrix
from open_vlc.detection.ml import ml_detect, ml_detect_batch, received_images


@pytest.fixture
def link(make_signal_set, random_channel):
    return random_channel(4, 4, seed=11), make_signal_set()


def test_noise_free_detection_is_exact(link):
    H, signal_set = link
    images = received_images(H, signal_set, 0.75)

    for index, y in enumerate(images):
        result = ml_detect(y, H, signal_set, 0.75)
        assert result.index == index
        assert result.label == signal_set.labels[index]


def test_noise_level_does_not_change_decision(link):
    H, signal_set = link
    rng = np.random.default_rng(0)
    y = received_images(H, signal_set, 1.0)[5] + 1e-7 * rng.standard_normal(4)

    decisions = {ml_detect(y, H, signal_set, 1.0, sigma).index for sigma in (1e-9, 1.0)}
    assert len(decisions) == 1


def test_ties_go_to_lowest_index(make_signal_set):
    signal_set = make_signal_set("SSK", 2, 1, 1)
    H = ChannelMatrix([[1.0, 1.0]])

    assert ml_detect([1.0], H, signal_set, 1.0).index == 0
    detected = ml_detect_batch(np.array([[1.0], [0.3]]), np.array([[1.0], [1.0]]))
    assert detected.tolist() == [0, 0]


def test_received_vector_shape(link):
    H, signal_set = link
    with pytest.raises(ValueError):
        ml_detect(np.zeros(3), H, signal_set, 1.0)


def test_batch_matches_single_detection(link):
    H, signal_set = link
    images = received_images(H, signal_set, 1.0)
    rng = np.random.default_rng(1)
    sent = rng.integers(0, len(signal_set), size=500)
    received = images[sent] + 2e-7 * rng.standard_normal((500, 4))

    batch = ml_detect_batch(received, images)
    single = [ml_detect(y, H, signal_set, 1.0).index for y in received]
    assert batch.tolist() == single


def noisy_receptions(H, signal_set, r, spread, n=200, seed=5):
    rng = np.random.default_rng(seed)
    images = received_images(H, signal_set, r)
    sent = rng.integers(0, len(signal_set), size=n)
    return images[sent] + spread * rng.standard_normal((n, H.n_r))


@pytest.mark.parametrize("scale", [1e-3, 7.5, 1e4])
def test_joint_scaling_keeps_decision(link, scale):
    H, signal_set = link
    received = noisy_receptions(H, signal_set, 0.8, 3e-7)

    for y in received:
        assert (
            ml_detect(scale * y, H, signal_set, scale * 0.8).index
            == ml_detect(y, H, signal_set, 0.8).index
        )


def test_noise_normalized_rule_agrees(link):
    H, signal_set = link
    r, sigma = 0.8, 3e-7
    received = noisy_receptions(H, signal_set, r, sigma)
    Hx = np.asarray(signal_set.vectors) @ H.H.T

    for y in received:
        metric = r / sigma * (Hx**2).sum(axis=1) - 2 * (Hx @ y) / sigma
        assert int(np.argmin(metric)) == ml_detect(y, H, signal_set, r, sigma).index
