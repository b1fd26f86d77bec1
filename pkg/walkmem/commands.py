#! /usr/bin/python3.9

"""
This module's goal is to run one subcommand from a resolved `ExperimentConfig` and
write its artifact. Every command returns the process exit code; status lines go to
stderr (silenced by --quiet) so that stdout only ever carries data.
Compatible with python3.9+.
"""

import sys
from pathlib import Path
from typing import Callable

from .analysis import capture_curve, ensemble_run
from .cli import ExperimentConfig, RunOptions
from .oracle import differential_suite
from .protocol import (
    Encoding,
    MemoryConfig,
    decoded_probability_sweep,
    encode,
    probability_sweep,
    retrieved_prediction,
    store_retrieve,
    theorem2_prediction,
)
from .qubit import fidelity
from .tools import format_float, qubit_json, write_csv, write_report, write_table_json
from .walk import Constant, evolve, position_distribution, trajectory


def say(options: RunOptions, message: str, end: str = "\n") -> None:
    if not options.quiet:
        print(message, end=end, flush=True, file=sys.stderr)


def _single_steps(config: ExperimentConfig) -> int:
    if len(config.steps) != 1:
        raise ValueError(
            f"{config.command} takes exactly one step count, not {config.steps}."
        )
    return config.steps[0]


def _memory_config(config: ExperimentConfig, steps: int) -> MemoryConfig:
    return MemoryConfig(
        config.build_schedule(steps), Encoding(config.encoding), config.phase_correction
    )


def _report_only(config: ExperimentConfig) -> None:
    if config.format == "csv":
        raise ValueError(f"{config.command} only writes JSON reports.")


def _write_table(
    config: ExperimentConfig, path: Path, header: list[str], rows: list[list]
) -> None:
    if config.format == "json":
        write_table_json(path, header, rows, config.to_dict())
    else:
        write_csv(path, header, rows, config.to_dict())


def _label(config: ExperimentConfig) -> str:
    if config.schedule == "constant":
        return f"ordered_theta{format_float(config.angle(config.theta))}"
    return f"{config.schedule}_s{config.seed}"


def cmd_evolve(config: ExperimentConfig, options: RunOptions) -> int:
    """
    One table of (j, P(j)) per requested step count, occupied sites only. With a single
    step count and no output directory the table goes to stdout.
    """
    cfg = _memory_config(config, config.steps[-1])
    to_stdout = str(options.output) == "-"
    if to_stdout and len(config.steps) > 1:
        raise ValueError("evolve writes one file per step count; pass -o DIRECTORY.")

    say(options, "Evolving the walk.", end=" ")
    checkpoints = set(config.steps)
    suffix = config.format or "csv"
    for state in trajectory(encode(config.qubit(), cfg), cfg.schedule):
        if state.steps_elapsed not in checkpoints:
            continue
        rows = [
            [site, probability]
            for site, probability in position_distribution(state).occupied().items()
        ]
        if to_stdout:
            path = options.output
        else:
            path = options.output / f"{_label(config)}_t{state.steps_elapsed}.{suffix}"
        _write_table(config, path, ["j", "probability"], rows)
    say(options, "Done.")
    return 0


def cmd_memory(config: ExperimentConfig, options: RunOptions) -> int:
    _report_only(config)
    steps = _single_steps(config)
    cfg = _memory_config(config, steps)
    qubit = config.qubit()

    say(options, "Storing and retrieving the qubit.", end=" ")
    record = store_retrieve(qubit, cfg)
    say(options, "Done.")

    if cfg.encoding is Encoding.HADAMARD and not cfg.phase_correction:
        expected = theorem2_prediction(qubit, record.theta_sum)
    elif cfg.encoding is Encoding.HADAMARD:
        expected = qubit
    else:
        expected = retrieved_prediction(qubit, cfg.schedule)

    report = {
        "input": qubit_json(qubit),
        "schedule": cfg.schedule.descriptor(),
        "theta_sum": record.theta_sum,
        "retrieved": qubit_json(record.retrieved),
        "final": qubit_json(record.final),
        "fidelity": record.fidelity_to_input,
        "prediction": {
            "final": qubit_json(expected),
            "fidelity_to_final": fidelity(expected, record.final),
        },
        "probabilities": {
            "input": list(qubit.probabilities()),
            "retrieved": list(record.retrieved.probabilities()),
            "final": list(record.final.probabilities()),
        },
    }
    write_report(options.output, report, config.to_dict())
    return 0


def cmd_sweep(config: ExperimentConfig, options: RunOptions) -> int:
    """
    Ordered unencoded walks give `t,delta,eta,p0`; Hadamard-encoded walks (any
    schedule) add P(|0>) at R before decoding: `t,delta,eta,p0_retrieved,p0`.
    """
    deltas = config.grid(config.delta_grid, config.delta)
    etas = config.grid(config.eta_grid, config.eta)
    progress = not options.quiet

    if config.encoding == "hadamard":
        schedule = config.build_schedule(config.steps[-1])
        rows = decoded_probability_sweep(
            schedule, config.steps, deltas, etas, options.workers, progress
        )
        header = ["t", "delta", "eta", "p0_retrieved", "p0"]
        table = [[r.steps, r.delta, r.eta, r.p0_retrieved, r.p0] for r in rows]
    else:
        if not isinstance(kind := config.schedule_kind(), Constant):
            raise ValueError(
                "Unencoded sweeps need a constant schedule; add --encoding hadamard."
            )
        rows = probability_sweep(
            kind.theta, config.steps, deltas, etas, options.workers, progress
        )
        header = ["t", "delta", "eta", "p0"]
        table = [[r.steps, r.delta, r.eta, r.p0] for r in rows]

    _write_table(config, options.output, header, table)
    return 0


def cmd_eavesdrop(config: ExperimentConfig, options: RunOptions) -> int:
    steps = _single_steps(config)
    cfg = _memory_config(config, steps)
    qubit = config.qubit()

    say(options, "Evolving the walk.", end=" ")
    state = evolve(encode(qubit, cfg), cfg.schedule)
    say(options, "Done.")

    rows = capture_curve(state, qubit, cfg, config.widths)
    table = [[row.width, row.captured_probability, row.guess_fidelity] for row in rows]
    _write_table(
        config, options.output, ["w", "captured_probability", "guess_fidelity"], table
    )
    return 0


def cmd_ensemble(config: ExperimentConfig, options: RunOptions) -> int:
    _report_only(config)
    if config.schedule == "constant":
        raise ValueError("Ensembles need a disorder schedule.")
    if not config.seeds:
        raise ValueError("Ensembles need --seeds.")

    kind = config.schedule_kind()
    qubit = config.qubit()
    steps = config.steps[-1]
    progress = not options.quiet
    stats, spread = ensemble_run(
        qubit,
        config.steps,
        config.seeds,
        kind,
        Encoding(config.encoding),
        config.phase_correction,
        options.workers,
        progress,
    )

    report = {
        "steps": steps,
        "aggregate": {
            "std_dev": vars(stats.std_dev),
            "participation_ratio": vars(stats.participation_ratio),
            "fidelity": vars(stats.fidelity),
        },
        "seeds": [
            {
                "seed": outcome.seed,
                "theta_sum": outcome.theta_sum,
                "std_dev": outcome.report.std_dev,
                "participation_ratio": outcome.report.participation_ratio,
                "occupied_sites": outcome.report.occupied_sites,
                "fidelity": outcome.fidelity,
            }
            for outcome in stats.outcomes
        ],
        "spread": [
            {
                "t": point.steps,
                "std_dev": vars(point.std_dev),
                "second_moment": vars(point.second_moment),
            }
            for point in spread
        ],
    }
    write_report(options.output, report, config.to_dict())
    return 0


def cmd_verify(config: ExperimentConfig, options: RunOptions) -> int:
    _report_only(config)
    report = differential_suite(
        max_steps=config.max_steps,
        disorder_trials=config.trials,
        seed=0 if config.seed is None else config.seed,
        workers=options.workers,
        progress=not options.quiet,
    )
    write_report(options.output, report, config.to_dict())
    if report["passed"]:
        say(options, "All checks passed.")
        return 0
    checks = {name: check for name, check in report.items() if name != "passed"}
    failed = [name for name, check in checks.items() if not check["passed"]]
    say(options, f"Failed checks: {', '.join(failed)}.")
    return 3


COMMANDS: dict[str, Callable[[ExperimentConfig, RunOptions], int]] = {
    "evolve": cmd_evolve,
    "memory": cmd_memory,
    "sweep": cmd_sweep,
    "eavesdrop": cmd_eavesdrop,
    "ensemble": cmd_ensemble,
    "verify": cmd_verify,
}
