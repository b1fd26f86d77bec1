import math

import numpy as np
import pytest

from conftest import SQRT_HALF, assert_qubits_close
from walkmem.protocol import (
    CollectedNormError,
    Encoding,
    MemoryConfig,
    collect,
    decoded_probability_sweep,
    perfect_retrieval_times,
    probability_sweep,
    retrieved_prediction,
    store_retrieve,
    theorem1_prediction,
    theorem2_prediction,
)
from walkmem.qubit import Qubit, apply, fidelity, sigma_x
from walkmem.walk import (
    AntisymmetricDisorder,
    Constant,
    TemporalDisorder,
    WalkState,
    evolve,
    initial_state,
    make_schedule,
    step,
)


def test_collect_initial_state_returns_the_input(qubits):
    for qubit in qubits:
        assert collect(initial_state(qubit, 3)) == qubit


def test_collect_after_one_step(qubits):
    theta = 0.7
    cos, sin = math.cos(theta), math.sin(theta)
    for qubit in qubits:
        retrieved = collect(step(initial_state(qubit, 1), theta))
        expected = Qubit(
            cos * qubit.alpha - 1j * sin * qubit.beta,
            cos * qubit.beta - 1j * sin * qubit.alpha,
        )
        assert_qubits_close(retrieved, expected, atol=1e-14)


def test_collect_after_two_steps():
    state = evolve(Qubit(1, 0), make_schedule(Constant(math.pi / 4), 2))
    assert_qubits_close(collect(state), Qubit(0, -1j), atol=1e-15)


def test_collect_rejects_states_not_made_by_a_walk():
    alpha = np.array([SQRT_HALF, 0, -SQRT_HALF], dtype=complex)
    beta = np.zeros(3, dtype=complex)
    with pytest.raises(CollectedNormError):
        collect(WalkState(alpha, beta, 1, 1))


@pytest.mark.parametrize(
    "steps, expected_factor",
    [(6, -1), (12, 1)],
)
def test_theorem1_identity_times(qubits, steps, expected_factor):
    for qubit in qubits:
        assert_qubits_close(
            theorem1_prediction(qubit, math.pi / 6, steps),
            qubit.scaled(expected_factor),
        )


def test_theorem1_swap_time(qubits):
    for qubit in qubits:
        swapped = apply(sigma_x(), qubit)
        assert_qubits_close(
            theorem1_prediction(qubit, math.pi / 6, 3), swapped.scaled(-1j)
        )


def test_theorem1_sigma_x_eigenstate_keeps_its_fidelity(plus):
    for theta in (0.1, math.pi / 6, 1.3):
        for steps in (1, 7, 50):
            retrieved = theorem1_prediction(plus, theta, steps)
            assert fidelity(retrieved, plus) == pytest.approx(1.0)


def test_theorem1_rejects_negative_steps(plus):
    with pytest.raises(ValueError):
        theorem1_prediction(plus, 0.1, -1)


def test_theorem2_examples(qubits, plus):
    for qubit in qubits:
        assert_qubits_close(theorem2_prediction(qubit, 0.0), qubit)
        assert_qubits_close(theorem2_prediction(qubit, math.pi), qubit.scaled(-1))
    shifted = theorem2_prediction(plus, math.pi / 4)
    assert_qubits_close(
        shifted,
        Qubit(
            np.exp(-1j * math.pi / 4) * SQRT_HALF, np.exp(1j * math.pi / 4) * SQRT_HALF
        ),
    )
    assert shifted.probabilities() == pytest.approx((0.5, 0.5))


def test_phase_correction_needs_hadamard():
    with pytest.raises(ValueError):
        MemoryConfig(
            make_schedule(Constant(0.1), 3), Encoding.NONE, phase_correction=True
        )


def test_store_retrieve_with_correction_is_perfect(qubits):
    for seed, qubit in enumerate(qubits):
        cfg = MemoryConfig(
            make_schedule(TemporalDisorder(), 50, seed), Encoding.HADAMARD, True
        )
        record = store_retrieve(qubit, cfg)
        assert record.fidelity_to_input == pytest.approx(1.0, abs=1e-10)
        assert_qubits_close(record.final, qubit)


def test_store_retrieve_ordered_identity_time(qubits):
    cfg = MemoryConfig(make_schedule(Constant(math.pi / 6), 6))
    for qubit in qubits:
        record = store_retrieve(qubit, cfg)
        assert_qubits_close(record.final, qubit.scaled(-1))
        assert record.fidelity_to_input == pytest.approx(1.0)


def test_encoded_walk_keeps_probabilities_without_correction(qubits):
    for seed, qubit in enumerate(qubits):
        cfg = MemoryConfig(make_schedule(TemporalDisorder(), 40, seed), "hadamard")
        record = store_retrieve(qubit, cfg)
        np.testing.assert_allclose(
            record.final.probabilities(), qubit.probabilities(), atol=1e-10
        )
        assert_qubits_close(record.final, theorem2_prediction(qubit, record.theta_sum))


def test_retrieved_prediction_matches_the_walk(qubits):
    schedule = make_schedule(TemporalDisorder(), 30, seed=8)
    for encoding in Encoding:
        for qubit in qubits:
            record = store_retrieve(qubit, MemoryConfig(schedule, encoding))
            assert_qubits_close(
                record.retrieved, retrieved_prediction(qubit, schedule, encoding)
            )


def test_perfect_retrieval_times():
    assert perfect_retrieval_times(math.pi / 6, 20) == [0, 6, 12, 18]
    assert perfect_retrieval_times(0.0, 3) == [0, 1, 2, 3]


def test_probability_sweep_identity_and_swap():
    deltas = np.linspace(0, math.pi, 19).tolist()
    rows = probability_sweep(math.pi / 6, [3, 6], deltas, [0.0])
    assert [row.steps for row in rows] == [3] * 19 + [6] * 19
    for row in rows:
        swapped = row.steps == 3
        expected = (math.sin if swapped else math.cos)(row.delta) ** 2
        assert row.p0 == pytest.approx(expected, abs=1e-10)
        assert row.p0_retrieved is None


def test_probability_sweep_balanced_input():
    etas = np.linspace(0, 2 * math.pi, 13).tolist()
    for row in probability_sweep(0.37, [1, 5, 11], [math.pi / 4], etas):
        if abs(math.sin(row.eta)) < 1e-12:
            assert row.p0 == pytest.approx(0.5, abs=1e-10)


def test_probability_sweep_runs_in_a_pool():
    deltas = np.linspace(0, math.pi, 7).tolist()
    serial = probability_sweep(math.pi / 6, [0, 4], deltas, [0.3], workers=1)
    pooled = probability_sweep(math.pi / 6, [0, 4], deltas, [0.3], workers=2)
    assert serial == pooled


def test_decoded_probability_sweep():
    schedule = make_schedule(TemporalDisorder(), 20, seed=4)
    deltas = np.linspace(0, math.pi, 11).tolist()
    rows = decoded_probability_sweep(schedule, [5, 20], deltas, [0.0])
    for row in rows:
        assert row.p0 == pytest.approx(math.cos(row.delta) ** 2, abs=1e-10)
        assert 0.0 <= row.p0_retrieved <= 1.0 + 1e-12
    with pytest.raises(ValueError):
        decoded_probability_sweep(schedule, [21], deltas, [0.0])


def test_sweep_grid_must_be_nonempty():
    with pytest.raises(ValueError):
        probability_sweep(0.1, [], [0.0], [0.0])


def test_collected_norm_before_renormalizing(qubits):
    for seed, qubit in enumerate(qubits):
        state = evolve(qubit, make_schedule(TemporalDisorder(), 200, seed))
        alpha, beta = np.sum(state.alpha), np.sum(state.beta)
        assert abs(math.hypot(abs(alpha), abs(beta)) - 1.0) <= 1e-10


@pytest.mark.parametrize("theta", [0.1, math.pi / 6, 1.3])
@pytest.mark.parametrize("steps", [1, 4, 7, 25])
def test_theorem1_composes_over_doubled_time(qubits, theta, steps):
    for qubit in qubits:
        twice = theorem1_prediction(
            theorem1_prediction(qubit, theta, steps), theta, steps
        )
        assert_qubits_close(twice, theorem1_prediction(qubit, theta, 2 * steps))


@pytest.mark.parametrize("length", [2, 20, 61])
def test_encoded_walk_with_zero_angle_sum_returns_the_input(qubits, length):
    for seed, qubit in enumerate(qubits):
        schedule = make_schedule(AntisymmetricDisorder(), length, seed)
        record = store_retrieve(qubit, MemoryConfig(schedule, Encoding.HADAMARD))
        assert abs(schedule.theta_sum) <= 1e-12
        assert_qubits_close(record.final, qubit)
