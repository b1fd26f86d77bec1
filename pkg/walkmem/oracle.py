#! /usr/bin/python3.9

"""
This module's goal is an independent, brute-force path to every number the recurrence
engine produces: the walk operator W(theta) = S [B(theta) (x) 1] is built as an explicit
dense matrix on a truncated lattice and applied by matrix-vector products, and retrieval
is done with the collection operators C0/C1 as sparse maps on the lattice plus vertex R.
It is a test fixture, not a performance path (cost grows like t^3).

Basis ordering is position-major, coin-minor: site j, coin c -> index 2 * (j + capacity) + c.
The shift wraps around at the lattice edge; capacity is always larger than the number of
steps, so no amplitude ever reaches the edge and the wrap is never exercised.
`numpy` library is required. -> https://pypi.org/project/numpy/
`scipy` library is required. -> https://pypi.org/project/scipy/
Compatible with python3.9+.
"""

import math
from dataclasses import dataclass
from functools import partial
from typing import Iterable, Optional, Union

import numpy as np
from scipy import sparse  # type: ignore

from .protocol import collect, theorem1_prediction, theorem2_prediction
from .pycore import map_ordered
from .qubit import NORM_TOLERANCE, Qubit, apply, coin_matrix, hadamard, random_qubit
from .walk import (
    CoinSchedule,
    Constant,
    TemporalDisorder,
    WalkState,
    evolve,
    make_schedule,
)


@dataclass(frozen=True, eq=False)
class DenseGlobalState:
    vector: np.ndarray
    capacity: int
    steps_elapsed: int = 0

    def __post_init__(self) -> None:
        if self.vector.shape != (2 * (2 * self.capacity + 1),):
            raise ValueError("Vector length does not match the capacity.")
        norm = float(np.linalg.norm(self.vector))
        if abs(norm - 1.0) > NORM_TOLERANCE:
            raise ValueError(f"Dense state is not normalized: norm = {norm!r}.")

    @classmethod
    def from_qubit(cls, qubit: Qubit, capacity: int) -> "DenseGlobalState":
        vector = np.zeros(2 * (2 * capacity + 1), dtype=np.complex128)
        vector[2 * capacity : 2 * capacity + 2] = qubit.vector
        return cls(vector, capacity)

    def to_walk_state(self) -> WalkState:
        return WalkState(
            self.vector[0::2].copy(),
            self.vector[1::2].copy(),
            self.steps_elapsed,
            self.capacity,
        )


def build_shift(capacity: int) -> np.ndarray:
    """
    S: |0, j> -> |0, j - 1>, |1, j> -> |1, j + 1>, wrapping at the edges.
    """
    sites = 2 * capacity + 1
    shift = np.zeros((2 * sites, 2 * sites))
    for i in range(sites):
        shift[2 * ((i - 1) % sites), 2 * i] = 1.0
        shift[2 * ((i + 1) % sites) + 1, 2 * i + 1] = 1.0
    return shift


def build_walk_unitary(theta: float, capacity: int) -> np.ndarray:
    if capacity < 1:
        raise ValueError(f"Capacity must be at least 1, not {capacity!r}.")
    coin = np.kron(np.eye(2 * capacity + 1), coin_matrix(theta).matrix)
    return build_shift(capacity) @ coin


def oracle_evolve(
    qubit: Qubit, schedule: CoinSchedule, capacity: Optional[int] = None
) -> DenseGlobalState:
    capacity = len(schedule) + 1 if capacity is None else capacity
    if len(schedule) >= capacity:
        raise ValueError("Dense evolution needs capacity > schedule length.")

    unitaries: dict[float, np.ndarray] = {}
    vector = DenseGlobalState.from_qubit(qubit, capacity).vector
    for theta in schedule.angles:
        if theta not in unitaries:
            unitaries[theta] = build_walk_unitary(theta, capacity)
        vector = unitaries[theta] @ vector
    return DenseGlobalState(vector, capacity, len(schedule))


def dense_collect(state: DenseGlobalState) -> Qubit:
    alpha, beta = state.vector.reshape(-1, 2).sum(axis=0)
    return Qubit(alpha, beta)


def oracle_evolve_and_collect(qubit: Qubit, schedule: CoinSchedule) -> Qubit:
    return dense_collect(oracle_evolve(qubit, schedule))


def collection_operators(capacity: int) -> tuple[sparse.csr_matrix, sparse.csr_matrix]:
    """
    (sum_j C0_{j,R}, sum_j' C1_{j',R}) on the lattice enlarged by R (last position), with
        C0_{j,R} = |0><0| (x) |R><j| + |1><1| (x) |j><j|
        C1_{j,R} = |0><0| (x) |j><j| + |1><1| (x) |R><j|
    summed term by term over every lattice site and R itself.
    """
    positions = 2 * capacity + 2
    vertex = positions - 1
    dim = 2 * positions

    def term(rows: list[int], cols: list[int]) -> sparse.csr_matrix:
        return sparse.csr_matrix(
            (np.ones(len(rows)), (rows, cols)), shape=(dim, dim), dtype=np.complex128
        )

    zero_to_r = sparse.csr_matrix((dim, dim), dtype=np.complex128)
    one_to_r = sparse.csr_matrix((dim, dim), dtype=np.complex128)
    for j in range(positions):
        zero_to_r = zero_to_r + term([2 * vertex, 2 * j + 1], [2 * j, 2 * j + 1])
        one_to_r = one_to_r + term([2 * j, 2 * vertex + 1], [2 * j, 2 * j + 1])
    return zero_to_r, one_to_r


def sequential_collect(state: Union[DenseGlobalState, WalkState]) -> Qubit:
    """
    W_T = (sum C1)(sum C0) applied to the state embedded next to an empty R; the
    qubit is read off R.
    """
    if isinstance(state, WalkState):
        vector = np.empty(2 * (2 * state.capacity + 1), dtype=np.complex128)
        vector[0::2], vector[1::2] = state.alpha, state.beta
    else:
        vector = state.vector
    enlarged = np.concatenate([vector, np.zeros(2, dtype=np.complex128)])

    zero_to_r, one_to_r = collection_operators(state.capacity)
    gathered = one_to_r @ (zero_to_r @ enlarged)
    return Qubit(gathered[-2], gathered[-1])


def _max_gap(first: Qubit, second: Qubit) -> float:
    return float(np.max(np.abs(first.vector - second.vector)))


def _ordered_case(case: tuple[float, int, Qubit]) -> dict[str, float]:
    theta, steps, qubit = case
    schedule = make_schedule(Constant(theta), steps)
    engine = evolve(qubit, schedule)
    dense = oracle_evolve(qubit, schedule)
    sites = slice(1, 2 * steps + 2)  # the dense lattice is one site wider per side
    sitewise = max(
        float(np.max(np.abs(engine.alpha - dense.vector[0::2][sites]))),
        float(np.max(np.abs(engine.beta - dense.vector[1::2][sites]))),
    )
    collected = dense_collect(dense)
    return {
        "engine-vs-dense": sitewise,
        "collect-vs-dense": _max_gap(collect(engine), collected),
        "dense-vs-theorem1": _max_gap(
            collected, theorem1_prediction(qubit, theta, steps)
        ),
    }


def _disorder_case(case: tuple[int, int, Qubit]) -> dict[str, float]:
    seed, steps, qubit = case
    schedule = make_schedule(TemporalDisorder(), steps, seed)
    encoded = apply(hadamard(), qubit)
    engine = evolve(encoded, schedule)
    dense = oracle_evolve(encoded, schedule)
    decoded = apply(hadamard(), dense_collect(dense))
    return {
        "disorder-collect-vs-dense": _max_gap(collect(engine), dense_collect(dense)),
        "dense-vs-theorem2": _max_gap(
            decoded, theorem2_prediction(qubit, schedule.theta_sum)
        ),
    }


def _collection_case(case: tuple[float, int, Qubit]) -> dict[str, float]:
    theta, steps, qubit = case
    state = evolve(qubit, make_schedule(Constant(theta), steps))
    gap = _max_gap(sequential_collect(state), collect(state))
    return {"sequential-vs-summation": gap}


TOLERANCES = {
    "engine-vs-dense": 1e-12,
    "collect-vs-dense": 1e-12,
    "dense-vs-theorem1": 1e-12,
    "disorder-collect-vs-dense": 1e-12,
    "dense-vs-theorem2": 1e-12,
    "sequential-vs-summation": 1e-12,
}


def differential_suite(
    thetas: Iterable[float] = (0.0, math.pi / 6, math.pi / 4, math.pi / 3),
    max_steps: int = 12,
    disorder_trials: int = 100,
    collection_steps: int = 6,
    seed: int = 0,
    workers: Optional[int] = 1,
    progress: bool = False,
) -> dict:
    """
    Three-way comparison: recurrence engine, dense oracle, closed-form predictions.
    Returns {check: {max_deviation, tolerance, passed}, ..., "passed": bool}.
    """
    rng = np.random.default_rng(seed)
    thetas = tuple(thetas)
    ordered = [
        (theta, steps, random_qubit(rng))
        for theta in thetas
        for steps in range(max_steps + 1)
    ]
    disorder = [
        (int(rng.integers(2**31)), int(rng.integers(max_steps + 1)), random_qubit(rng))
        for _ in range(disorder_trials)
    ]
    collection = [
        (theta, steps, random_qubit(rng))
        for theta in thetas
        for steps in range(collection_steps + 1)
    ]

    gaps: dict[str, float] = {name: 0.0 for name in TOLERANCES}
    for func, cases, desc in (
        (_ordered_case, ordered, "Ordered cases"),
        (_disorder_case, disorder, "Disorder cases"),
        (_collection_case, collection, "Collection cases"),
    ):
        for result in map_ordered(func, cases, desc, workers, progress):
            for name, gap in result.items():
                gaps[name] = max(gaps[name], gap)

    report: dict = {
        name: {
            "max_deviation": gap,
            "tolerance": TOLERANCES[name],
            "passed": gap <= TOLERANCES[name],
        }
        for name, gap in gaps.items()
    }
    report["passed"] = all(check["passed"] for check in report.values())
    return report
