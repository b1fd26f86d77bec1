#! /usr/bin/python3.9

"""
Inner loop of the walk. `kernel` is the Cython build of the recurrence (see build.py);
when it is not compiled the numpy sweep in `pykernel` is used. Both are observationally
identical.
Compatible with python3.9+.
"""

try:
    from .kernel import step_amplitudes  # type: ignore

    COMPILED = True
except ImportError:
    from .pykernel import step_amplitudes

    COMPILED = False
