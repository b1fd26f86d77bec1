#! /usr/bin/python3.9

"""
This module's goal is to measure how compactly a walk stores the qubit and how much a
limited eavesdropper can learn from it:
    - localization metrics of a position distribution (width, participation ratio,
      probability captured inside |j| <= w),
    - seed ensembles of disordered walks, aggregated as mean and standard error,
    - the window eavesdropper: reads amplitudes on a contiguous range of sites, knows
      the protocol and schedule, collects what it sees and decodes like the owner.
`numpy` library is required. -> https://pypi.org/project/numpy/
Compatible with python3.9+.
"""

import math
from dataclasses import dataclass
from functools import partial
from typing import Iterable, Optional, Sequence

import numpy as np

from .protocol import Encoding, MemoryConfig, collect, decode, encode
from .pycore import map_ordered
from .qubit import Qubit, fidelity
from .walk import (
    CoinSchedule,
    ScheduleKind,
    SimulationError,
    TemporalDisorder,
    WalkState,
    make_schedule,
    position_distribution,
    trajectory,
)

EMPTY_CAPTURE = 1e-15


class EmptyCaptureError(SimulationError):
    """The eavesdropper's window holds (almost) nothing; no guess can be formed."""


@dataclass(frozen=True)
class LocalizationReport:
    steps: int
    mean: float
    std_dev: float
    participation_ratio: float
    occupied_sites: int
    capture: tuple[float, ...]  # capture[w]: probability on |j| <= w, w = 0 .. steps

    def window_capture(self, width: int) -> float:
        if width < 0:
            raise ValueError(f"Window half-width must be nonnegative, not {width!r}.")
        return self.capture[min(width, len(self.capture) - 1)]


@dataclass(frozen=True)
class EavesdropperResult:
    window: tuple[int, int]
    captured_probability: float
    best_guess: Qubit
    guess_fidelity: float


@dataclass(frozen=True)
class CaptureRow:
    width: int
    captured_probability: float
    guess_fidelity: float  # NaN when the window is empty


def localization_report(state: WalkState) -> LocalizationReport:
    distribution = position_distribution(state)
    probabilities = distribution.probabilities
    occupied = int(np.count_nonzero(probabilities))

    ratio = 1.0 / float(np.sum((probabilities / np.sum(probabilities)) ** 2))
    ratio = min(max(ratio, 1.0), float(occupied))

    centre = state.capacity
    shells = np.zeros(state.steps_elapsed + 1)
    shells[0] = probabilities[centre]
    for width in range(1, state.steps_elapsed + 1):
        shells[width] = probabilities[centre - width] + probabilities[centre + width]

    return LocalizationReport(
        steps=state.steps_elapsed,
        mean=distribution.mean(),
        std_dev=distribution.std_dev(),
        participation_ratio=ratio,
        occupied_sites=occupied,
        capture=tuple(np.cumsum(shells).tolist()),
    )


def eavesdrop(
    state: WalkState,
    window: tuple[int, int],
    true_input: Qubit,
    cfg: MemoryConfig,
) -> EavesdropperResult:
    """
    Collect only the sites low..high, renormalize and decode with the owner's steps.
    """
    low, high = window
    reach = state.steps_elapsed
    if not -reach <= low <= high <= reach:
        raise ValueError(f"Window {window} is not inside [-{reach}, {reach}].")

    sites = slice(state.index(low), state.index(high) + 1)
    alpha, beta = state.alpha[sites], state.beta[sites]
    captured = math.fsum(np.abs(alpha) ** 2 + np.abs(beta) ** 2)
    if captured < EMPTY_CAPTURE:
        raise EmptyCaptureError(f"Window {window} captures no probability.")

    summed_alpha, summed_beta = complex(np.sum(alpha)), complex(np.sum(beta))
    if math.hypot(abs(summed_alpha), abs(summed_beta)) < EMPTY_CAPTURE:
        raise EmptyCaptureError(f"Amplitudes in window {window} cancel out.")

    guess = Qubit.normalized(summed_alpha, summed_beta)
    decoded = decode(guess, cfg, cfg.schedule.theta_sum)
    return EavesdropperResult(
        (low, high), min(captured, 1.0), guess, fidelity(decoded, true_input)
    )


def capture_curve(
    state: WalkState,
    true_input: Qubit,
    cfg: MemoryConfig,
    widths: Optional[Iterable[int]] = None,
) -> list[CaptureRow]:
    """
    Eavesdropper success against windows [-w, w], for w = 0 .. t by default.
    """
    if widths is None:
        widths = range(state.steps_elapsed + 1)
    report = localization_report(state)

    rows = []
    for width in sorted(set(widths)):
        window = (-min(width, state.steps_elapsed), min(width, state.steps_elapsed))
        try:
            guess_fidelity = eavesdrop(state, window, true_input, cfg).guess_fidelity
        except EmptyCaptureError:
            guess_fidelity = math.nan
        rows.append(
            CaptureRow(width, min(report.window_capture(width), 1.0), guess_fidelity)
        )
    return rows


@dataclass(frozen=True)
class Statistic:
    mean: float
    sem: float

    @classmethod
    def of(cls, values: Sequence[float]) -> "Statistic":
        values = np.asarray(values, dtype=float)
        if len(values) == 1:
            return cls(float(values[0]), 0.0)
        sem = np.std(values, ddof=1) / math.sqrt(len(values))
        return cls(float(np.mean(values)), float(sem))


@dataclass(frozen=True)
class SeedOutcome:
    seed: int
    theta_sum: float
    report: LocalizationReport
    fidelity: float


@dataclass(frozen=True)
class EnsembleStats:
    outcomes: list[SeedOutcome]
    std_dev: Statistic
    participation_ratio: Statistic
    fidelity: Statistic


@dataclass(frozen=True)
class SpreadPoint:
    steps: int
    std_dev: Statistic
    second_moment: Statistic  # <j^2>, averaged over seeds


def _seed_run(
    seed: int,
    qubit: Qubit,
    checkpoints: tuple[int, ...],
    kind: ScheduleKind,
    encoding: Encoding,
    phase_correction: bool,
) -> tuple[SeedOutcome, list[tuple[float, float]]]:
    """
    One trajectory up to the last checkpoint: (sigma, <j^2>) at every checkpoint and
    the full outcome at the last one.
    """
    schedule = make_schedule(kind, checkpoints[-1], seed)
    cfg = MemoryConfig(schedule, encoding, phase_correction)
    points = []
    for state in trajectory(encode(qubit, cfg), schedule):
        if state.steps_elapsed in checkpoints:
            distribution = position_distribution(state)
            second = float(np.dot(distribution.sites**2, distribution.probabilities))
            points.append((distribution.std_dev(), second))
    final = decode(collect(state), cfg, schedule.theta_sum)
    outcome = SeedOutcome(
        seed, schedule.theta_sum, localization_report(state), fidelity(final, qubit)
    )
    return outcome, points


def ensemble_run(
    qubit: Qubit,
    checkpoints: Iterable[int],
    seeds: Iterable[int],
    kind: ScheduleKind = TemporalDisorder(),
    encoding: Encoding = Encoding.HADAMARD,
    phase_correction: bool = True,
    workers: Optional[int] = 1,
    progress: bool = False,
) -> tuple[EnsembleStats, list[SpreadPoint]]:
    """
    One disordered walk per seed, shared by both results: the statistics at the last
    checkpoint and the seed-averaged width at every checkpoint. Per-seed outcomes come
    back in seed-list order; aggregates are unweighted means with standard errors.
    """
    checkpoints = tuple(sorted(set(checkpoints)))
    seeds = list(seeds)
    if not seeds or not checkpoints:
        raise ValueError("At least one seed and one checkpoint are required.")
    runs = map_ordered(
        partial(
            _seed_run,
            qubit=qubit,
            checkpoints=checkpoints,
            kind=kind,
            encoding=Encoding(encoding),
            phase_correction=phase_correction,
        ),
        seeds,
        desc="Ensemble",
        workers=workers,
        progress=progress,
    )

    outcomes = [outcome for outcome, _ in runs]
    stats = EnsembleStats(
        outcomes,
        Statistic.of([outcome.report.std_dev for outcome in outcomes]),
        Statistic.of([outcome.report.participation_ratio for outcome in outcomes]),
        Statistic.of([outcome.fidelity for outcome in outcomes]),
    )
    spread = [
        SpreadPoint(
            steps,
            Statistic.of([points[i][0] for _, points in runs]),
            Statistic.of([points[i][1] for _, points in runs]),
        )
        for i, steps in enumerate(checkpoints)
    ]
    return stats, spread


def ensemble_stats(
    qubit: Qubit,
    steps: int,
    seeds: Iterable[int],
    kind: ScheduleKind = TemporalDisorder(),
    encoding: Encoding = Encoding.HADAMARD,
    phase_correction: bool = True,
    workers: Optional[int] = 1,
    progress: bool = False,
) -> EnsembleStats:
    stats, _ = ensemble_run(
        qubit, [steps], seeds, kind, encoding, phase_correction, workers, progress
    )
    return stats


def ensemble_spread(
    qubit: Qubit,
    checkpoints: Iterable[int],
    seeds: Iterable[int],
    kind: ScheduleKind = TemporalDisorder(),
    workers: Optional[int] = 1,
    progress: bool = False,
) -> list[SpreadPoint]:
    """
    Seed-averaged width of the unencoded walk at each checkpoint.
    """
    _, spread = ensemble_run(
        qubit, checkpoints, seeds, kind, Encoding.NONE, False, workers, progress
    )
    return spread


def spread_series(qubit: Qubit, schedule: CoinSchedule) -> np.ndarray:
    """
    sigma(t) for t = 0 .. len(schedule).
    """
    return np.array(
        [
            position_distribution(state).std_dev()
            for state in trajectory(qubit, schedule)
        ]
    )


def ballistic_fit(
    steps: Sequence[float], sigmas: Sequence[float]
) -> tuple[float, float]:
    """
    Least squares sigma = c * t through the origin. Returns (c, R^2).
    """
    steps, sigmas = np.asarray(steps, dtype=float), np.asarray(sigmas, dtype=float)
    if not np.any(steps):
        raise ValueError("Ballistic fit needs at least one nonzero time.")
    slope = float(np.dot(steps, sigmas) / np.dot(steps, steps))
    residual = float(np.sum((sigmas - slope * steps) ** 2))
    total = float(np.sum((sigmas - np.mean(sigmas)) ** 2))
    if total == 0.0:
        if residual == 0.0:
            return slope, 1.0
        raise ValueError("R^2 is undefined for constant nonzero widths.")
    return slope, 1.0 - residual / total


def spread_exponent(steps: Sequence[float], sigmas: Sequence[float]) -> float:
    """
    Slope of log sigma against log t: about 1 for ballistic spreading, 1/2 for diffusive.
    """
    steps, sigmas = np.asarray(steps, dtype=float), np.asarray(sigmas, dtype=float)
    if np.any(steps <= 0) or np.any(sigmas <= 0):
        raise ValueError("Exponent fit needs positive times and widths.")
    return float(np.polyfit(np.log(steps), np.log(sigmas), 1)[0])
