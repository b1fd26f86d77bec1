#! /usr/bin/python3.9

"""
This module's goal is one time layer of the amplitude recurrences, vectorized with numpy:
    alpha[j, t] = cos * alpha[j + 1, t - 1] - i sin * beta[j + 1, t - 1]
    beta[j, t]  = cos * beta[j - 1, t - 1]  - i sin * alpha[j - 1, t - 1]
`numpy` library is required. -> https://pypi.org/project/numpy/
Compatible with python3.9+.
"""

import numpy as np


def step_amplitudes(
    alpha: np.ndarray, beta: np.ndarray, cos: float, sin: float, reach: int
) -> tuple[np.ndarray, np.ndarray]:
    """
    Read the previous layer only, write two fresh arrays. `reach` (the step count after
    this layer) is unused here: the full sweep already produces exact zeros outside it.
    """
    mixing = complex(0.0, -sin)
    new_alpha = np.zeros_like(alpha)
    new_beta = np.zeros_like(beta)
    new_alpha[:-1] = cos * alpha[1:] + mixing * beta[1:]
    new_beta[1:] = cos * beta[:-1] + mixing * alpha[:-1]
    return new_alpha, new_beta
