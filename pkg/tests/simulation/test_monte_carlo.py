import numpy as np
import pytest

from open_vlc.channel.lambertian import ChannelMatrix
from open_vlc.detection.bound import q_function
from open_vlc.simulation.monte_carlo import (
    BatchTask,
    SimPlan,
    popcount,
    run_point,
    run_sweep,
    simulate_batch,
)
from open_vlc.simulation.parallel import WorkerPool, rng_stream
from open_vlc.utils.exceptions import ConfigurationError


@pytest.fixture
def make_plan(make_signal_set, random_channel):
    """Factory for GSM(4, 2, 2) plans on a random 4x4 channel."""

    def _make_plan(snr_db=(10.0, 20.0), **kwargs):
        settings = {
            "seed": 3,
            "min_bit_errors": 100,
            "max_channel_uses": 40_000,
            "batch_size": 5_000,
            "batches_per_round": 2,
        }
        settings.update(kwargs)
        return SimPlan(
            signal_set=make_signal_set(),
            H=random_channel(4, 4, seed=8),
            responsivity=0.75,
            snr_db=snr_db,
            **settings,
        )

    return _make_plan


def test_popcount():
    values = np.array([0, 1, 3, 255, 2**31, 2**32 - 1])
    assert popcount(values).tolist() == [0, 1, 2, 8, 1, 32]


def test_rng_streams():
    a = rng_stream(42, 0, 0).standard_normal(5)
    assert np.array_equal(a, rng_stream(42, 0, 0).standard_normal(5))
    assert not np.array_equal(a, rng_stream(42, 0, 1).standard_normal(5))
    assert not np.array_equal(a, rng_stream(42, 1, 0).standard_normal(5))
    assert not np.array_equal(a, rng_stream(43, 0, 0).standard_normal(5))


def test_worker_pool():
    with pytest.raises(ValueError):
        WorkerPool(0)
    with WorkerPool() as pool:
        assert pool.map(abs, [-1, 2, -3]) == [1, 2, 3]
        assert list(pool.imap(abs, [-4, 5])) == [4, 5]


def test_simulate_batch_without_noise():
    images = np.array([[0.0], [1.0], [2.0], [3.0]])
    task = BatchTask(images, sigma=1e-12, seed=1, point=0, batch=0, size=1000)
    assert simulate_batch(task) == (1000, 0)


def test_sim_plan_validation(make_plan):
    with pytest.raises(ConfigurationError, match="sweep.snr_db"):
        make_plan(snr_db=())
    with pytest.raises(ConfigurationError, match="sim.min_bit_errors"):
        make_plan(min_bit_errors=0)
    with pytest.raises(ConfigurationError, match="sim.batch_size"):
        make_plan(batch_size=-5)


def test_noise_free_regime(make_plan):
    plan = make_plan(snr_db=(200.0,), max_channel_uses=10_000)
    point = run_point(plan, 200.0)

    assert point.bit_errors == 0
    assert point.ber_sim == 0.0
    assert point.bits_simulated == 10_000 * 4
    assert point.low_confidence


def test_stopping_rule(make_plan):
    plan = make_plan(snr_db=(0.0,))
    point = run_point(plan, 0.0)

    assert point.bit_errors >= plan.min_bit_errors
    assert not point.low_confidence
    # stops after the first round of 2 x 5000 channel uses
    assert point.bits_simulated == 10_000 * 4
    assert point.ber_sim == point.bit_errors / point.bits_simulated
    assert 0.0 <= point.ber_sim <= 1.0


def test_last_round_truncated_at_cap(make_plan):
    plan = make_plan(snr_db=(200.0,), max_channel_uses=12_345)
    assert run_point(plan, 200.0).bits_simulated == 12_345 * 4


def test_determinism(make_plan):
    plan = make_plan()
    assert run_point(plan, 20.0) == run_point(plan, 20.0)


def test_results_do_not_depend_on_processes(make_plan):
    plan = make_plan(snr_db=(5.0, 15.0, 25.0))
    assert run_sweep(plan, progress=False) == run_sweep(plan, threads=2, progress=False)


def test_points_use_their_grid_position(make_plan):
    plan = make_plan(snr_db=(15.0, 15.0))
    first, second = run_sweep(plan, progress=False)
    assert first.bit_errors != second.bit_errors or first.bits_simulated != second.bits_simulated


def test_single_point_grid(make_plan):
    points = run_sweep(make_plan(snr_db=(20.0,)), progress=False)
    assert len(points) == 1
    assert points[0].snr_db == 20.0


def test_sweep_preserves_grid_order(make_plan):
    points = run_sweep(make_plan(snr_db=(30.0, 10.0, 20.0)), progress=False)
    assert [p.snr_db for p in points] == [30.0, 10.0, 20.0]


def test_binary_system_matches_closed_form(make_signal_set):
    # two vectors whose images are 1 and 0: error probability Q(1 / 2σ)
    signal_set = make_signal_set("SSK", 2, 1, 1)
    plan = SimPlan(
        signal_set=signal_set,
        H=ChannelMatrix([[1.0, 0.0]]),
        responsivity=1.0,
        snr_db=(10.0,),
        seed=42,
        min_bit_errors=1000,
        max_channel_uses=1_000_000,
        batch_size=10_000,
        batches_per_round=4,
    )
    point = run_point(plan, 10.0)

    sigma = np.sqrt(0.5) / 10**0.5
    expected = q_function(1.0 / (2 * sigma))
    spread = np.sqrt(expected * (1 - expected) / point.bits_simulated)
    assert abs(point.ber_sim - expected) < 3 * spread
    assert point.ber_bound == pytest.approx(expected)


def test_simulation_below_union_bound(make_plan):
    plan = make_plan(snr_db=(10.0, 20.0), min_bit_errors=400, max_channel_uses=200_000)
    for point in run_sweep(plan, progress=False):
        if point.bit_errors >= 100:
            spread = np.sqrt(point.ber_sim / point.bits_simulated)
            assert point.ber_sim <= point.ber_bound + 2 * spread
