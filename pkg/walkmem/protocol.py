#! /usr/bin/python3.9

"""
This module's goal is the store/retrieve pipeline of the walk memory:
    [encode with H] -> evolve under the schedule -> collect at vertex R
    -> [decode with H] -> [undo the diagonal phase e^{-+i Theta}]
and the closed-form predictions it is checked against:
    ordered walk:            retrieved = exp(-i t theta sigma_x) input
    encoded, any schedule:   decoded   = diag(e^{-i Theta}, e^{i Theta}) input
Collection is plain amplitude summation over the lattice; `oracle` checks that this
equals the product of collection operators.
`numpy` library is required. -> https://pypi.org/project/numpy/
Compatible with python3.9+.
"""

import math
from dataclasses import dataclass
from enum import Enum
from functools import partial
from typing import Iterable, Optional

import numpy as np

from .pycore import map_ordered
from .qubit import (
    NORM_TOLERANCE,
    Qubit,
    apply,
    fidelity,
    hadamard,
    phase_corrector,
    phase_matrix,
    sigma_x_exponential,
)
from .walk import (
    CoinSchedule,
    Constant,
    SimulationError,
    WalkState,
    evolve,
    make_schedule,
)

COLLECT_TOLERANCE = 1e-6


class CollectedNormError(SimulationError):
    """The summed amplitudes are not a unit vector: the input was not a walk state."""


class Encoding(str, Enum):
    NONE = "none"
    HADAMARD = "hadamard"


@dataclass(frozen=True)
class MemoryConfig:
    schedule: CoinSchedule
    encoding: Encoding = Encoding.NONE
    phase_correction: bool = False

    def __post_init__(self) -> None:
        object.__setattr__(self, "encoding", Encoding(self.encoding))
        if self.phase_correction and self.encoding is not Encoding.HADAMARD:
            raise ValueError("Phase correction requires Hadamard encoding.")


@dataclass(frozen=True)
class RetrievalRecord:
    retrieved: Qubit
    final: Qubit
    theta_sum: float
    fidelity_to_input: float


def collect(state: WalkState) -> Qubit:
    """
    W_T: move every |0> and |1> amplitude to R and let them interfere.
    """
    alpha, beta = complex(np.sum(state.alpha)), complex(np.sum(state.beta))
    norm = math.hypot(abs(alpha), abs(beta))
    if abs(norm - 1.0) > COLLECT_TOLERANCE:
        raise CollectedNormError(
            f"Collected state has norm {norm!r}; only walk-generated states collect to "
            f"a unit vector."
        )
    if abs(norm - 1.0) > NORM_TOLERANCE:
        return Qubit.normalized(alpha, beta)
    return Qubit(alpha, beta)


def theorem1_prediction(qubit: Qubit, theta: float, steps: int) -> Qubit:
    """
    Ordered walk: exp(-i t theta sigma_x) |input>.
    """
    if steps < 0:
        raise ValueError(f"steps must be nonnegative, not {steps!r}.")
    return apply(sigma_x_exponential(steps * theta), qubit)


def theorem2_prediction(qubit: Qubit, theta_sum: float) -> Qubit:
    """
    Encoded walk after decoding: diag(e^{-i Theta}, e^{i Theta}) |input>.
    """
    return apply(phase_matrix(theta_sum), qubit)


def retrieved_prediction(
    qubit: Qubit, schedule: CoinSchedule, encoding: Encoding = Encoding.NONE
) -> Qubit:
    """
    State at R before decoding. The coins all commute, so the ordered product of
    B(theta_k) collapses to exp(-i Theta sigma_x).
    """
    if Encoding(encoding) is Encoding.HADAMARD:
        qubit = apply(hadamard(), qubit)
    return apply(sigma_x_exponential(schedule.theta_sum), qubit)


def encode(qubit: Qubit, cfg: MemoryConfig) -> Qubit:
    return apply(hadamard(), qubit) if cfg.encoding is Encoding.HADAMARD else qubit


def decode(retrieved: Qubit, cfg: MemoryConfig, theta_sum: float) -> Qubit:
    """
    Owner-side post-processing of the qubit collected at R.
    """
    final = retrieved
    if cfg.encoding is Encoding.HADAMARD:
        final = apply(hadamard(), final)
    if cfg.phase_correction:
        final = apply(phase_corrector(theta_sum), final)
    return final


def store_retrieve(
    qubit: Qubit, cfg: MemoryConfig, capacity: Optional[int] = None
) -> RetrievalRecord:
    retrieved = collect(evolve(encode(qubit, cfg), cfg.schedule, capacity))
    theta_sum = cfg.schedule.theta_sum
    final = decode(retrieved, cfg, theta_sum)
    return RetrievalRecord(retrieved, final, theta_sum, fidelity(final, qubit))


def perfect_retrieval_times(
    theta: float, max_steps: int, tolerance: float = 1e-9
) -> list[int]:
    """
    Times t <= max_steps at which an unencoded ordered walk hands back +-input for
    every input, i.e. |sin(t theta)| <= tolerance.
    """
    return [t for t in range(max_steps + 1) if abs(math.sin(t * theta)) <= tolerance]


@dataclass(frozen=True)
class SweepRow:
    steps: int
    delta: float
    eta: float
    p0: float
    p0_retrieved: Optional[float] = None


def _sweep_point(point: tuple[int, float, float], theta: float) -> SweepRow:
    steps, delta, eta = point
    cfg = MemoryConfig(make_schedule(Constant(theta), steps))
    record = store_retrieve(Qubit.from_angles(delta, eta), cfg)
    return SweepRow(steps, delta, eta, record.final.probabilities()[0])


def _decoded_sweep_point(
    point: tuple[int, float, float], schedule: CoinSchedule
) -> SweepRow:
    steps, delta, eta = point
    cfg = MemoryConfig(schedule.prefix(steps), Encoding.HADAMARD)
    record = store_retrieve(Qubit.from_angles(delta, eta), cfg)
    return SweepRow(
        steps,
        delta,
        eta,
        record.final.probabilities()[0],
        record.retrieved.probabilities()[0],
    )


def sweep_grid(
    steps: Iterable[int], deltas: Iterable[float], etas: Iterable[float]
) -> list[tuple[int, float, float]]:
    grid = [(t, d, e) for t in steps for d in deltas for e in etas]
    if not grid:
        raise ValueError("Sweep grids must be nonempty.")
    return sorted(grid)


def probability_sweep(
    theta: float,
    steps: Iterable[int],
    deltas: Iterable[float],
    etas: Iterable[float],
    workers: Optional[int] = 1,
    progress: bool = False,
) -> list[SweepRow]:
    """
    P(|0>) of the retrieved state of an unencoded, ordered walk for every
    (t, delta, eta) on the grid. A fixed delta or eta is a one-point grid.
    """
    grid = sweep_grid(steps, deltas, etas)
    return map_ordered(
        partial(_sweep_point, theta=theta),
        grid,
        desc="Sweeping",
        workers=workers,
        progress=progress,
    )


def decoded_probability_sweep(
    schedule: CoinSchedule,
    steps: Iterable[int],
    deltas: Iterable[float],
    etas: Iterable[float],
    workers: Optional[int] = 1,
    progress: bool = False,
) -> list[SweepRow]:
    """
    Hadamard-encoded walk without phase correction: P(|0>) before decoding (at R) and
    after decoding, for every prefix length t of the schedule on the grid.
    """
    grid = sweep_grid(steps, deltas, etas)
    if grid[-1][0] > len(schedule):
        raise ValueError(f"Schedule has only {len(schedule)} angles.")
    return map_ordered(
        partial(_decoded_sweep_point, schedule=schedule),
        grid,
        desc="Sweeping",
        workers=workers,
        progress=progress,
    )
