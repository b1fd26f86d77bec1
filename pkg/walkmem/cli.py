#! /usr/bin/python3.9

"""
This module's goal is parsing the cli options and arguments and turning them into an
experiment config. Values are layered: built-in defaults < --preset < --config file <
explicit flags. Angles are given as multiples of pi ("1/6" means pi/6) unless
--radians is set.
Compatible with python3.9+.
"""

import argparse
import json
import math
import pkgutil
import textwrap
from dataclasses import asdict, dataclass, field, fields
from fractions import Fraction
from pathlib import Path
from typing import Optional, Sequence

import numpy as np

from . import __version__
from .pycore import default_workers
from .qubit import Qubit
from .tools import read_provenance
from .walk import (
    AntisymmetricDisorder,
    CoinSchedule,
    Constant,
    ScheduleKind,
    TemporalDisorder,
    make_schedule,
)

COMMANDS = ("evolve", "memory", "sweep", "eavesdrop", "ensemble", "verify")
SCHEDULES = ("constant", "disorder", "antisymmetric")


def _is_int(value) -> bool:
    return isinstance(value, int) and not isinstance(value, bool)


@dataclass
class ExperimentConfig:
    """
    Everything that determines the data of an artifact. Embedded in every output.
    """

    command: str
    delta: str = "0"
    eta: str = "0"
    amplitudes: Optional[list[str]] = None
    theta: str = "1/4"
    radians: bool = False
    schedule: str = "constant"
    seed: Optional[int] = None
    seeds: Optional[list[int]] = None
    steps: list[int] = field(default_factory=lambda: [0])
    delta_grid: Optional[list[str]] = None
    eta_grid: Optional[list[str]] = None
    encoding: str = "none"
    phase_correction: bool = False
    widths: Optional[list[int]] = None
    format: Optional[str] = None
    max_steps: int = 12
    trials: int = 100

    def __post_init__(self) -> None:
        self._check_types()
        if self.command not in COMMANDS:
            raise ValueError(f"Unknown command {self.command!r}.")
        if self.schedule not in SCHEDULES:
            raise ValueError(
                f"Unknown schedule {self.schedule!r}, use one of {SCHEDULES}."
            )
        if self.encoding not in ("none", "hadamard"):
            raise ValueError(f"Unknown encoding {self.encoding!r}.")
        if self.format not in (None, "csv", "json"):
            raise ValueError(f"Unknown format {self.format!r}.")
        if not self.steps or any(t < 0 for t in self.steps):
            raise ValueError(f"Step counts must be nonnegative, not {self.steps!r}.")
        self.steps = sorted(set(int(t) for t in self.steps))

    def _check_types(self) -> None:
        """
        Config files are plain JSON, so every field is checked before it is used.
        """
        for name in ("delta", "eta", "theta", "schedule", "encoding"):
            if not isinstance(value := getattr(self, name), str):
                raise ValueError(f"{name} must be a string, not {value!r}.")
        for name in ("radians", "phase_correction"):
            if not isinstance(getattr(self, name), bool):
                raise ValueError(f"{name} must be true or false.")
        for name in ("seed", "max_steps", "trials"):
            value = getattr(self, name)
            if not (_is_int(value) or (name == "seed" and value is None)):
                raise ValueError(f"{name} must be an integer, not {value!r}.")
        for name, optional in (("steps", False), ("seeds", True), ("widths", True)):
            value = getattr(self, name)
            if optional and value is None:
                continue
            if not isinstance(value, list) or not all(map(_is_int, value)):
                raise ValueError(f"{name} must be a list of integers, not {value!r}.")
        for name in ("amplitudes", "delta_grid", "eta_grid"):
            value = getattr(self, name)
            if value is not None and not (
                isinstance(value, list) and all(isinstance(v, str) for v in value)
            ):
                raise ValueError(f"{name} must be a list of strings, not {value!r}.")

    def to_dict(self) -> dict:
        return asdict(self)

    def angle(self, text: str) -> float:
        return parse_angle(text, self.radians)

    def qubit(self) -> Qubit:
        if self.amplitudes is not None:
            alpha, beta = (complex(value.replace(" ", "")) for value in self.amplitudes)
            return Qubit.normalized(alpha, beta)
        return Qubit.from_angles(self.angle(self.delta), self.angle(self.eta))

    def grid(self, grid: Optional[list[str]], fixed: str) -> list[float]:
        if grid is None:
            return [self.angle(fixed)]
        start, stop, count = grid
        if int(count) < 1:
            raise ValueError(f"Grid needs at least one point, not {count!r}.")
        return np.linspace(self.angle(start), self.angle(stop), int(count)).tolist()

    def schedule_kind(self) -> ScheduleKind:
        if self.schedule == "constant":
            return Constant(self.angle(self.theta))
        if self.schedule == "disorder":
            return TemporalDisorder()
        return AntisymmetricDisorder()

    def build_schedule(self, length: int) -> CoinSchedule:
        return make_schedule(self.schedule_kind(), length, self.seed)


@dataclass
class RunOptions:
    """
    How to run, not what to compute: never part of the embedded config.
    """

    output: Path = Path("-")
    workers: Optional[int] = None
    quiet: bool = False


def parse_angle(text: str, radians: bool = False) -> float:
    """
    "1/6" -> pi/6; with radians=True the value is taken as is.
    """
    try:
        if radians:
            value = float(text)
        else:
            value = float(Fraction(str(text).strip())) * math.pi
    except (ValueError, ZeroDivisionError) as error:
        raise ValueError(f"Cannot read angle {text!r}.") from error
    if not math.isfinite(value):
        raise ValueError(f"Angle {text!r} is not finite.")
    return value


def parse_seeds(values: Sequence[str]) -> list[int]:
    """
    ["3", "7"] -> [3, 7]; ["0:50"] -> [0, 1, ..., 49].
    """
    seeds: list[int] = []
    for value in values:
        if ":" in str(value):
            start, stop = str(value).split(":")
            seeds.extend(range(int(start), int(stop)))
        else:
            seeds.append(int(value))
    return seeds


def find_preset(name: str) -> dict:
    """
    Reading presets.json and returning the named experiment config.
    """
    if (presets_file := pkgutil.get_data(__name__, "data/presets.json")) is None:
        raise FileNotFoundError("presets.json does not exist")

    presets = json.loads(presets_file.decode("utf-8"))
    if name in presets:
        return presets[name]
    available = ", ".join(sorted(presets))
    raise ValueError(f"Preset {name!r} not found! Available: {available}.")


def _common_parser() -> argparse.ArgumentParser:
    """
    Options shared by every subcommand. Nothing has a default here: absent flags must
    not override the preset or the config file.
    """
    parser = argparse.ArgumentParser(add_help=False, argument_default=argparse.SUPPRESS)

    source = parser.add_argument_group("config sources")
    source.add_argument(
        "-p", "--preset", help="Start from a packaged preset (e.g. fig2a)."
    )
    source.add_argument(
        "-c",
        "--config",
        type=lambda x: Path(x).absolute(),
        help="JSON config file, or any artifact emitted by walkmem to re-run it.",
    )

    qubit = parser.add_argument_group("stored qubit")
    qubit.add_argument("--delta", help="cos(delta)|0> + e^{i eta} sin(delta)|1>.")
    qubit.add_argument("--eta", help="Relative phase of the stored qubit.")
    qubit.add_argument(
        "--amplitudes",
        nargs=2,
        metavar=("ALPHA", "BETA"),
        help="Explicit complex amplitudes (e.g. 0.6 0.8j), renormalized.",
    )

    walk = parser.add_argument_group("walk")
    walk.add_argument("--theta", help="Coin angle of constant schedules.")
    walk.add_argument(
        "--radians",
        action=argparse.BooleanOptionalAction,
        help="Read angles as raw radians instead of multiples of pi.",
    )
    walk.add_argument("--schedule", choices=SCHEDULES, help="Coin schedule kind.")
    walk.add_argument("--seed", type=int, help="Seed of the disorder schedule.")
    walk.add_argument(
        "--seeds",
        nargs="+",
        help="Seed list for ensembles: integers and/or START:STOP ranges.",
    )
    walk.add_argument("-t", "--steps", nargs="+", type=int, help="Step counts.")
    walk.add_argument(
        "--encoding", choices=("none", "hadamard"), help="Encode/decode with H."
    )
    walk.add_argument(
        "--phase-correction",
        action=argparse.BooleanOptionalAction,
        help="Undo diag(e^{-i Theta}, e^{i Theta}) after decoding.",
    )

    grid = parser.add_argument_group("grids")
    grid.add_argument("--delta-grid", nargs=3, metavar=("START", "STOP", "COUNT"))
    grid.add_argument("--eta-grid", nargs=3, metavar=("START", "STOP", "COUNT"))
    grid.add_argument("--widths", nargs="+", type=int, help="Eavesdropper half-widths.")
    grid.add_argument("--max-steps", type=int, help="Largest walk checked by verify.")
    grid.add_argument("--trials", type=int, help="Random disorder schedules in verify.")

    output = parser.add_argument_group("output")
    output.add_argument("--format", choices=("csv", "json"), help="Artifact format.")
    output.add_argument(
        "-o",
        "--output",
        type=Path,
        help="Output file ('-' is stdout); a directory for evolve.",
    )
    output.add_argument(
        "-w", "--workers", type=int, help="Process pool size. [env: WALKMEM_WORKERS]"
    )
    output.add_argument("-q", "--quiet", action="store_true", help="No status output.")
    return parser


def parsing_args(argv: Optional[Sequence[str]] = None) -> argparse.Namespace:
    """
    Parsing the passed arguments, read help (-h, --help) for further information.
    """
    parser = argparse.ArgumentParser(
        prog="walkmem",
        description="Quantum walks as quantum memory: store, retrieve, verify a qubit.",
        epilog=textwrap.dedent(
            """
            Angles are multiples of pi unless --radians is given: --theta 1/6 is pi/6.
            Re-run any emitted artifact with: walkmem <command> --config <artifact>.
            """
        ),
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    parser.add_argument("--version", action="version", version=f"walkmem {__version__}")
    subparsers = parser.add_subparsers(dest="command", required=True)

    common = _common_parser()
    helps = {
        "evolve": "Position distributions (one CSV per step count).",
        "memory": "Store and retrieve one qubit, JSON report.",
        "sweep": "P(|0>) of the retrieved qubit over delta/eta grids.",
        "eavesdrop": "Eavesdropper capture and guess fidelity against window width.",
        "ensemble": "Localization and retrieval statistics over disorder seeds.",
        "verify": "Differential suite: recurrence vs dense oracle vs theorems.",
    }
    for command in COMMANDS:
        subparsers.add_parser(command, parents=[common], help=helps[command])

    return parser.parse_args(argv)


def load_config(args: argparse.Namespace) -> tuple[ExperimentConfig, RunOptions]:
    """
    Merge defaults, preset, config file and flags. Raises ValueError on bad input.
    """
    values = vars(args).copy()
    command = values.pop("command")
    merged: dict = {"command": command}

    sources = []
    if (preset := values.pop("preset", None)) is not None:
        sources.append(find_preset(preset))
    if (config_file := values.pop("config", None)) is not None:
        sources.append(read_provenance(config_file))

    options = RunOptions(workers=default_workers())
    for name in ("output", "workers", "quiet"):
        if name in values:
            setattr(options, name, values.pop(name))

    if "seeds" in values:
        values["seeds"] = parse_seeds(values["seeds"])
    sources.append(values)

    known = {item.name for item in fields(ExperimentConfig)}
    for source in sources:
        if (other := source.get("command", command)) != command:
            raise ValueError(f"Config is for {other!r}, not {command!r}.")
        if unknown := set(source) - known:
            raise ValueError(f"Unknown config keys: {', '.join(sorted(unknown))}.")
        merged.update(source)

    return ExperimentConfig(**merged), options
