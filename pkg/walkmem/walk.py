#! /usr/bin/python3.9

"""
This module's goal is to evolve the full coin (x) position state of a discrete-time
quantum walk on the line under a schedule of coin angles, and to expose the resulting
position distributions.

Storage is a dense array of 2 * capacity + 1 sites with index offset `capacity`
(site j lives at index j + capacity). Each step reads the previous layer and writes a
fresh one, see `core`.

Disorder angles come from numpy's PCG64 bit generator (`numpy.random.default_rng(seed)`),
drawn with `Generator.uniform(-pi/2, pi/2, length)`, so a seed replays the same schedule.
`numpy` library is required. -> https://pypi.org/project/numpy/
Compatible with python3.9+.
"""

import math
from dataclasses import dataclass, field
from typing import Iterator, Optional, Union

import numpy as np

from .core import step_amplitudes
from .qubit import NORM_TOLERANCE, Qubit

HALF_PI = math.pi / 2


class SimulationError(Exception):
    """Base of every failure raised while simulating (exit code 3 from the cli)."""


class CapacityExceeded(SimulationError):
    """A step would move amplitude past the preallocated lattice."""


class MissingSeedError(ValueError):
    """Disorder schedules cannot be built without a seed."""


@dataclass(frozen=True)
class Constant:
    theta: float

    name = "constant"


@dataclass(frozen=True)
class TemporalDisorder:
    low: float = -HALF_PI
    high: float = HALF_PI

    name = "disorder"


@dataclass(frozen=True)
class AntisymmetricDisorder:
    """
    Seeded pairs (theta, -theta): the accumulated angle vanishes exactly.
    """

    low: float = -HALF_PI
    high: float = HALF_PI

    name = "antisymmetric"


@dataclass(frozen=True)
class Explicit:
    name = "explicit"


ScheduleKind = Union[Constant, TemporalDisorder, AntisymmetricDisorder, Explicit]


@dataclass(frozen=True)
class CoinSchedule:
    """
    theta_1 ... theta_t, where theta_1 is applied first.
    """

    angles: tuple[float, ...]
    kind: ScheduleKind = field(default_factory=Explicit)
    seed: Optional[int] = None

    def __post_init__(self) -> None:
        angles = tuple(float(angle) for angle in self.angles)
        if not all(map(math.isfinite, angles)):
            raise ValueError("Coin angles must be finite.")
        object.__setattr__(self, "angles", angles)

    @property
    def theta_sum(self) -> float:
        return math.fsum(self.angles)

    def __len__(self) -> int:
        return len(self.angles)

    def prefix(self, length: int) -> "CoinSchedule":
        return CoinSchedule(self.angles[:length], self.kind, self.seed)

    def descriptor(self) -> dict:
        """
        JSON-friendly description. Seeded angles are left out, the seed replays them.
        """
        info: dict = {"kind": self.kind.name, "length": len(self), "seed": self.seed}
        if isinstance(self.kind, Constant):
            info["theta"] = self.kind.theta
        elif isinstance(self.kind, (TemporalDisorder, AntisymmetricDisorder)):
            info["range"] = [self.kind.low, self.kind.high]
        else:
            info["angles"] = list(self.angles)
        return info


def make_schedule(
    kind: ScheduleKind, length: int, seed: Optional[int] = None
) -> CoinSchedule:
    """
    Constant repeats theta; the disorder kinds draw i.i.d. uniform angles from a seeded
    PCG64 generator.
    """
    if length < 0:
        raise ValueError(f"Schedule length must be nonnegative, not {length!r}.")

    if isinstance(kind, Constant):
        return CoinSchedule((kind.theta,) * length, kind, seed)

    if isinstance(kind, (TemporalDisorder, AntisymmetricDisorder)):
        if seed is None:
            raise MissingSeedError(f"A seed is required for {kind.name!r} schedules.")
        if not kind.low <= kind.high:
            raise ValueError(f"Empty angle range [{kind.low}, {kind.high}].")
        rng = np.random.default_rng(seed)
        if isinstance(kind, TemporalDisorder):
            angles = rng.uniform(kind.low, kind.high, length)
        else:
            draws = rng.uniform(kind.low, kind.high, length // 2)
            angles = np.zeros(length)
            angles[0 : 2 * len(draws) : 2] = draws
            angles[1 : 2 * len(draws) : 2] = -draws
        return CoinSchedule(tuple(angles.tolist()), kind, seed)

    raise ValueError(f"Use CoinSchedule(angles) directly for {kind!r}.")


@dataclass(frozen=True, eq=False)
class WalkState:
    """
    Amplitudes (alpha_j, beta_j) for j in [-capacity, capacity] after `steps_elapsed`
    steps. The arrays are read-only.
    """

    alpha: np.ndarray
    beta: np.ndarray
    steps_elapsed: int
    capacity: int

    def __post_init__(self) -> None:
        size = 2 * self.capacity + 1
        if self.alpha.shape != (size,) or self.beta.shape != (size,):
            raise ValueError(f"Amplitude arrays must have shape ({size},).")
        if not 0 <= self.steps_elapsed <= self.capacity:
            raise ValueError("steps_elapsed must lie in [0, capacity].")
        self.alpha.setflags(write=False)
        self.beta.setflags(write=False)

    @property
    def sites(self) -> np.ndarray:
        return np.arange(-self.capacity, self.capacity + 1)

    def index(self, site: int) -> int:
        if abs(site) > self.capacity:
            raise ValueError(
                f"Site {site} is outside [-{self.capacity}, {self.capacity}]."
            )
        return site + self.capacity

    def amplitude(self, site: int) -> tuple[complex, complex]:
        i = self.index(site)
        return complex(self.alpha[i]), complex(self.beta[i])

    def norm(self) -> float:
        return math.sqrt(
            float(np.sum(np.abs(self.alpha) ** 2) + np.sum(np.abs(self.beta) ** 2))
        )


@dataclass(frozen=True, eq=False)
class PositionDistribution:
    sites: np.ndarray
    probabilities: np.ndarray

    def total(self) -> float:
        return math.fsum(self.probabilities)

    def occupied(self) -> dict[int, float]:
        """
        {site: probability} for sites carrying nonzero probability, ascending in site.
        """
        return {
            int(site): float(p)
            for site, p in zip(self.sites, self.probabilities)
            if p > 0.0
        }

    def mean(self) -> float:
        return float(np.dot(self.sites, self.probabilities))

    def std_dev(self) -> float:
        mean = self.mean()
        variance = float(np.dot((self.sites - mean) ** 2, self.probabilities))
        return math.sqrt(max(variance, 0.0))

    def window(self, low: int, high: int) -> float:
        mask = (self.sites >= low) & (self.sites <= high)
        return math.fsum(self.probabilities[mask])


def initial_state(qubit: Qubit, capacity: int) -> WalkState:
    if capacity < 0:
        raise ValueError(f"Capacity must be nonnegative, not {capacity!r}.")
    alpha = np.zeros(2 * capacity + 1, dtype=np.complex128)
    beta = np.zeros(2 * capacity + 1, dtype=np.complex128)
    alpha[capacity], beta[capacity] = qubit.alpha, qubit.beta
    return WalkState(alpha, beta, 0, capacity)


def step(state: WalkState, theta: float) -> WalkState:
    """
    One application of W(theta) = S [B(theta) (x) 1].
    """
    if state.steps_elapsed >= state.capacity:
        raise CapacityExceeded(
            f"Cannot take step {state.steps_elapsed + 1} on a lattice of capacity "
            f"{state.capacity}."
        )
    if not math.isfinite(theta):
        raise ValueError(f"theta must be finite, not {theta!r}.")
    reach = state.steps_elapsed + 1
    alpha, beta = step_amplitudes(
        state.alpha, state.beta, math.cos(theta), math.sin(theta), reach
    )
    return WalkState(
        np.asarray(alpha), np.asarray(beta), state.steps_elapsed + 1, state.capacity
    )


def trajectory(
    qubit: Qubit, schedule: CoinSchedule, capacity: Optional[int] = None
) -> Iterator[WalkState]:
    """
    Yield the state after every prefix of the schedule, starting with t = 0.
    """
    capacity = len(schedule) if capacity is None else capacity
    state = initial_state(qubit, capacity)
    yield state
    for theta in schedule.angles:
        state = step(state, theta)
        yield state


def evolve(
    qubit: Qubit, schedule: CoinSchedule, capacity: Optional[int] = None
) -> WalkState:
    """
    W(theta_t) ... W(theta_1) applied to the qubit at the origin.
    """
    state = None
    for state in trajectory(qubit, schedule, capacity):
        pass
    assert state is not None
    return state


def position_distribution(state: WalkState) -> PositionDistribution:
    probabilities = np.abs(state.alpha) ** 2 + np.abs(state.beta) ** 2
    return PositionDistribution(state.sites, probabilities)


def is_normalized(state: WalkState, tolerance: float = NORM_TOLERANCE) -> bool:
    return abs(state.norm() - 1.0) <= tolerance
