#! /usr/bin/python3.9

"""
This package's goal is to simulate a discrete-time quantum walk on the line used as a
quantum memory: a qubit is written into the coin of a walker at the origin, spread over
the lattice by t walk steps (ordered or temporally disordered coins) and read back by
collecting every amplitude at an extra vertex R. Around that, it measures how localized
the stored state is, how much a window eavesdropper learns, and checks the fast
recurrence engine against a dense-matrix oracle and the closed-form retrieval formulas.

Required PyPI Packages:
    `numpy` library is required. -> https://pypi.org/project/numpy/
    `scipy` library is required. -> https://pypi.org/project/scipy/
    `tqdm` library is required. -> https://pypi.org/project/tqdm/
    `Cython` is optional, it compiles the step kernel. -> https://pypi.org/project/Cython/

Usage:
    walkmem evolve -t 50 100 200 -o out/ -> one position distribution CSV per t.
    walkmem memory --delta 1/6 --eta 1/3 --theta 1/4 -t 8 -> JSON retrieval report.
    walkmem sweep --preset fig2a -> P(|0>) of the retrieved qubit over a delta grid.
    walkmem eavesdrop --preset security -> captured probability and guess fidelity.
    walkmem ensemble --schedule disorder --seeds 0:50 -t 10 50 100 -> seed statistics.
    walkmem verify -> recurrence vs dense oracle vs closed forms; exit code 3 on failure.
    Default pool size is set by "WALKMEM_WORKERS" environment variable.
Exit codes: 0 success, 2 bad input or config, 3 simulation failure.
Compatible with python3.9+.
"""

import json
import sys
from typing import Optional, Sequence

from .cli import load_config, parsing_args
from .commands import COMMANDS
from .walk import SimulationError


def main(argv: Optional[Sequence[str]] = None) -> int:
    """
    Main entry point; returns the exit code instead of exiting so tests can call it.
    """
    args = parsing_args(argv)
    try:
        config, options = load_config(args)
        return COMMANDS[config.command](config, options)
    except SimulationError as error:
        print(f"Simulation failed: {error}", file=sys.stderr)
        return 3
    except (ValueError, json.JSONDecodeError, OSError) as error:
        print(f"Error: {error}", file=sys.stderr)
        return 2


def run():
    """
    EntryPoint of Application.
    """
    sys.exit(main())


if __name__ == "__main__":
    run()
