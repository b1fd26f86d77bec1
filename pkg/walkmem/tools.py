#! /usr/bin/python3.9

"""
Some tiny functions to write the artifacts of `commands.py`.
Every file carries its provenance (experiment config + tool version): CSV files in a
leading '# ' comment line, JSON files under a "provenance" key. Floats are written in
their shortest round-trip form, keys are sorted, nothing depends on time or locale, so
the same config always gives the same bytes.
Compatible with python3.9+.
"""

import json
import math
import sys
from contextlib import contextmanager
from pathlib import Path
from typing import Any, Iterator, Sequence, TextIO

from . import __version__
from .qubit import Qubit


def format_float(value: float) -> str:
    """
    Shortest decimal that reads back to the same double; 'nan' for NaN.
    """
    if math.isnan(value):
        return "nan"
    return repr(float(value))


def format_cell(value: Any) -> str:
    if isinstance(value, bool):
        return str(value).lower()
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float):
        return format_float(value)
    return str(value)


def qubit_json(qubit: Qubit) -> dict[str, list[float]]:
    return {
        "alpha": [qubit.alpha.real, qubit.alpha.imag],
        "beta": [qubit.beta.real, qubit.beta.imag],
    }


def provenance(config: dict) -> dict:
    return {"config": config, "walkmem": {"version": __version__}}


def _json_safe(value: Any) -> Any:
    if isinstance(value, float) and math.isnan(value):
        return None
    if isinstance(value, dict):
        return {key: _json_safe(item) for key, item in value.items()}
    if isinstance(value, (list, tuple)):
        return [_json_safe(item) for item in value]
    return value


def dumps(payload: dict) -> str:
    text = json.dumps(_json_safe(payload), indent=4, sort_keys=True, allow_nan=False)
    return text + "\n"


@contextmanager
def open_output(path: Path) -> Iterator[TextIO]:
    """
    '-' is stdout; anything else is a file (parent directories are created).
    """
    if str(path) == "-":
        yield sys.stdout
        return
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="\n") as file:
        yield file


def write_csv(
    path: Path, header: Sequence[str], rows: Sequence[Sequence[Any]], config: dict
) -> None:
    with open_output(path) as file:
        file.write("# " + json.dumps(provenance(config), sort_keys=True) + "\n")
        file.write(",".join(header) + "\n")
        for row in rows:
            file.write(",".join(format_cell(cell) for cell in row) + "\n")


def write_table_json(
    path: Path, header: Sequence[str], rows: Sequence[Sequence[Any]], config: dict
) -> None:
    payload = {
        "columns": list(header),
        "provenance": provenance(config),
        "rows": [list(row) for row in rows],
    }
    with open_output(path) as file:
        file.write(dumps(payload))


def write_report(path: Path, report: dict, config: dict) -> None:
    with open_output(path) as file:
        file.write(dumps({**report, "provenance": provenance(config)}))


def read_provenance(path: Path) -> dict:
    """
    Experiment config embedded in an emitted artifact, or the object of a plain JSON
    config file.
    """
    with open(path, "r", encoding="utf-8") as file:
        text = file.read()

    if text.startswith("# "):
        data = {"provenance": json.loads(text.splitlines()[0][2:])}
    else:
        data = json.loads(text)

    if isinstance(data, dict) and isinstance(data.get("provenance"), dict):
        data = data["provenance"].get("config")
    if not isinstance(data, dict):
        raise ValueError(f"{str(path)!r} does not hold a JSON config object.")
    return data
