"""
End-to-end checks of the retrieval theorems, the localization contrast, the oracle
equivalence and the eavesdropper, on randomized but seeded instances.
"""

import math

import numpy as np
import pytest

from conftest import SQRT_HALF, assert_qubits_close
from walkmem.analysis import (
    ballistic_fit,
    capture_curve,
    ensemble_spread,
    localization_report,
)
from walkmem.oracle import differential_suite
from walkmem.protocol import (
    Encoding,
    MemoryConfig,
    collect,
    encode,
    probability_sweep,
    store_retrieve,
    theorem1_prediction,
    theorem2_prediction,
)
from walkmem.qubit import Qubit, apply, fidelity, random_qubit, sigma_x
from walkmem.walk import (
    Constant,
    TemporalDisorder,
    evolve,
    make_schedule,
    position_distribution,
    trajectory,
)


def test_ordered_retrieval_is_a_sigma_x_rotation():
    rng = np.random.default_rng(1)
    for _ in range(200):
        qubit = random_qubit(rng)
        theta = rng.uniform(-math.pi / 2, math.pi / 2)
        steps = int(rng.integers(0, 101))
        retrieved = collect(evolve(qubit, make_schedule(Constant(theta), steps)))
        assert_qubits_close(retrieved, theorem1_prediction(qubit, theta, steps))


@pytest.mark.parametrize("n", range(11))
def test_special_times_of_the_sixth_pi_coin(n, qubits):
    identity_cfg = MemoryConfig(make_schedule(Constant(math.pi / 6), 6 * n))
    swap_cfg = MemoryConfig(make_schedule(Constant(math.pi / 6), 6 * n + 3))
    for qubit in qubits:
        kept = store_retrieve(qubit, identity_cfg).final
        assert_qubits_close(kept, qubit.scaled((-1) ** n))
        swapped = store_retrieve(qubit, swap_cfg).final
        assert_qubits_close(swapped, apply(sigma_x(), qubit).scaled(-1j * (-1) ** n))
        assert fidelity(swapped, apply(sigma_x(), qubit)) == pytest.approx(1.0)


def test_balanced_input_is_kept_at_every_time():
    qubit = Qubit.from_angles(math.pi / 4, 0.0)
    for steps in range(61):
        cfg = MemoryConfig(make_schedule(Constant(math.pi / 6), steps))
        record = store_retrieve(qubit, cfg)
        assert record.fidelity_to_input == pytest.approx(1.0, abs=1e-10)


def test_delta_sweep_identity_and_swap():
    deltas = np.linspace(0, math.pi, 181).tolist()
    rows = probability_sweep(math.pi / 6, [6, 9, 12, 15], deltas, [0.0])
    worst = 0.0
    for row in rows:
        if row.steps % 6 == 0:
            expected = math.cos(row.delta) ** 2
        else:
            expected = math.sin(row.delta) ** 2
        worst = max(worst, abs(row.p0 - expected))
    assert worst <= 1e-10


def test_eta_sweep_balanced_row():
    etas = np.linspace(0, 2 * math.pi, 181).tolist()
    rows = probability_sweep(math.pi / 6, [0, 3, 6, 9, 12], [math.pi / 4], etas)
    assert max(abs(row.p0 - 0.5) for row in rows) <= 1e-10


def test_encoded_retrieval_is_a_known_phase():
    rng = np.random.default_rng(2)
    for _ in range(200):
        qubit = random_qubit(rng)
        seed = int(rng.integers(2**31))
        steps = int(rng.integers(0, 101))
        schedule = make_schedule(TemporalDisorder(), steps, seed)

        record = store_retrieve(qubit, MemoryConfig(schedule, Encoding.HADAMARD))
        expected = theorem2_prediction(qubit, schedule.theta_sum)
        assert_qubits_close(record.final, expected)
        np.testing.assert_allclose(
            record.final.probabilities(), qubit.probabilities(), atol=1e-10
        )

        cfg = MemoryConfig(schedule, Encoding.HADAMARD, phase_correction=True)
        corrected = store_retrieve(qubit, cfg)
        assert corrected.fidelity_to_input == pytest.approx(1.0, abs=1e-10)


@pytest.mark.slow
def test_disorder_localizes_relative_to_the_ordered_walk():
    qubit = Qubit(0.8, 0.6j)
    seeds = range(50)
    spread = {
        point.steps: point
        for point in ensemble_spread(qubit, [50, 100, 200], seeds, TemporalDisorder())
    }
    ratio = spread[200].std_dev.mean / spread[50].std_dev.mean
    assert ratio < 2.5

    for steps, point in spread.items():
        assert abs(point.second_moment.mean - steps) <= 4 * point.second_moment.sem

    ordered = [
        position_distribution(state).std_dev()
        for state in trajectory(Qubit(1, 0), make_schedule(Constant(math.pi / 4), 200))
    ]
    assert ordered[200] / ordered[50] == pytest.approx(4.0, abs=0.1)
    _, r_squared = ballistic_fit(np.arange(20, 201), ordered[20:])
    assert r_squared >= 0.99
    assert ordered[100] >= 3 * spread[100].std_dev.mean


@pytest.mark.slow
def test_oracle_equivalence():
    report = differential_suite(max_steps=12, disorder_trials=100, collection_steps=6)
    checks = {name: check for name, check in report.items() if name != "passed"}
    failed = [name for name, check in checks.items() if not check["passed"]]
    assert failed == []
    assert report["passed"] is True


def test_eavesdropper_sanity():
    rng = np.random.default_rng(3)
    for seed in range(10):
        qubit = random_qubit(rng)
        schedule = make_schedule(TemporalDisorder(), 60, seed)
        cfg = MemoryConfig(schedule, Encoding.HADAMARD, phase_correction=True)
        state = evolve(encode(qubit, cfg), cfg.schedule)
        rows = capture_curve(state, qubit, cfg)
        captured = [row.captured_probability for row in rows]
        assert all(a <= b for a, b in zip(captured, captured[1:]))
        assert rows[-1].guess_fidelity == pytest.approx(1.0, abs=1e-10)
        assert captured == pytest.approx(list(localization_report(state).capture))

    one_step = evolve(Qubit(1, 0), make_schedule(Constant(math.pi / 4), 1))
    cfg = MemoryConfig(make_schedule(Constant(math.pi / 4), 1))
    rows = capture_curve(one_step, Qubit(1, 0), cfg)
    assert rows[0].captured_probability == 0.0
    assert rows[1].captured_probability == pytest.approx(1.0)
    occupied = position_distribution(one_step).occupied()
    assert occupied == pytest.approx({-1: 0.5, 1: SQRT_HALF**2})
