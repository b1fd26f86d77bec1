#! /usr/bin/python3.9

"""
This module's goal is exact-structure linear algebra for a single two-level system:
qubits, 2x2 unitaries (coin, Hadamard, sigma_x exponentials, phase correctors) and
pure-state fidelity. Everything here is immutable and safe to share between processes.
`numpy` library is required. -> https://pypi.org/project/numpy/
Compatible with python3.9+.
"""

import cmath
import math
from dataclasses import dataclass
from typing import Union

import numpy as np

NORM_TOLERANCE = 1e-12
UNITARY_TOLERANCE = 1e-12

Number = Union[complex, float, int]


def _finite(value: float, name: str) -> float:
    value = float(value)
    if not math.isfinite(value):
        raise ValueError(f"{name} must be finite, not {value!r}.")
    return value


@dataclass(frozen=True)
class Qubit:
    """
    Normalized pair of amplitudes: alpha|0> + beta|1>.
    """

    alpha: complex
    beta: complex

    def __post_init__(self) -> None:
        alpha, beta = complex(self.alpha), complex(self.beta)
        if not all(map(cmath.isfinite, (alpha, beta))):
            raise ValueError(f"Amplitudes must be finite, not ({alpha!r}, {beta!r}).")
        object.__setattr__(self, "alpha", alpha)
        object.__setattr__(self, "beta", beta)
        if abs(self.norm - 1.0) > NORM_TOLERANCE:
            raise ValueError(f"Qubit is not normalized: norm = {self.norm!r}.")

    @classmethod
    def from_angles(cls, delta: float, eta: float) -> "Qubit":
        """
        cos(delta)|0> + e^{i eta} sin(delta)|1>.
        """
        delta, eta = _finite(delta, "delta"), _finite(eta, "eta")
        return cls(complex(math.cos(delta)), cmath.exp(1j * eta) * math.sin(delta))

    @classmethod
    def normalized(cls, alpha: Number, beta: Number) -> "Qubit":
        norm = math.hypot(abs(complex(alpha)), abs(complex(beta)))
        if norm == 0.0 or not math.isfinite(norm):
            raise ValueError("Cannot normalize a zero or non-finite amplitude pair.")
        return cls(complex(alpha) / norm, complex(beta) / norm)

    @property
    def norm(self) -> float:
        return math.sqrt(abs(self.alpha) ** 2 + abs(self.beta) ** 2)

    @property
    def vector(self) -> np.ndarray:
        return np.array([self.alpha, self.beta], dtype=np.complex128)

    def probabilities(self) -> tuple[float, float]:
        return abs(self.alpha) ** 2, abs(self.beta) ** 2

    def scaled(self, phase: complex) -> "Qubit":
        """
        Multiply by a unit-modulus global phase.
        """
        return Qubit(phase * self.alpha, phase * self.beta)


@dataclass(frozen=True)
class Unitary2:
    """
    2x2 complex matrix [[m00, m01], [m10, m11]]. Unitarity is checked by `is_unitary`,
    the constructors in this module always produce unitary matrices.
    """

    m00: complex
    m01: complex
    m10: complex
    m11: complex

    def __post_init__(self) -> None:
        for name in ("m00", "m01", "m10", "m11"):
            object.__setattr__(self, name, complex(getattr(self, name)))

    @classmethod
    def from_matrix(cls, matrix: np.ndarray) -> "Unitary2":
        matrix = np.asarray(matrix, dtype=np.complex128)
        if matrix.shape != (2, 2):
            raise ValueError(f"Expected a 2x2 matrix, got shape {matrix.shape}.")
        return cls(matrix[0, 0], matrix[0, 1], matrix[1, 0], matrix[1, 1])

    @property
    def matrix(self) -> np.ndarray:
        return np.array(
            [[self.m00, self.m01], [self.m10, self.m11]], dtype=np.complex128
        )

    def dagger(self) -> "Unitary2":
        return Unitary2(
            self.m00.conjugate(),
            self.m10.conjugate(),
            self.m01.conjugate(),
            self.m11.conjugate(),
        )

    def power(self, exponent: int) -> "Unitary2":
        if exponent < 0:
            return self.dagger().power(-exponent)
        result, base = identity(), self
        while exponent:  # Square and multiply.
            if exponent & 1:
                result = result @ base
            base = base @ base
            exponent >>= 1
        return result

    def __matmul__(self, other):
        if isinstance(other, Unitary2):
            return Unitary2(
                self.m00 * other.m00 + self.m01 * other.m10,
                self.m00 * other.m01 + self.m01 * other.m11,
                self.m10 * other.m00 + self.m11 * other.m10,
                self.m10 * other.m01 + self.m11 * other.m11,
            )
        if isinstance(other, Qubit):
            return apply(self, other)
        return NotImplemented


def identity() -> Unitary2:
    return Unitary2(1, 0, 0, 1)


def sigma_x() -> Unitary2:
    return Unitary2(0, 1, 1, 0)


def coin_matrix(theta: float) -> Unitary2:
    """
    B(theta) = [[cos, -i sin], [-i sin, cos]].
    """
    theta = _finite(theta, "theta")
    cos, sin = math.cos(theta), math.sin(theta)
    return Unitary2(cos, -1j * sin, -1j * sin, cos)


def hadamard() -> Unitary2:
    factor = 1 / math.sqrt(2)
    return Unitary2(factor, factor, factor, -factor)


def sigma_x_exponential(angle: float) -> Unitary2:
    """
    exp(-i angle sigma_x) = cos(angle) * 1 - i sin(angle) * sigma_x.
    Same matrix as the coin; kept separate because it is a different object in the
    retrieval analysis (accumulated angle, not a single step).
    """
    angle = _finite(angle, "angle")
    cos, sin = math.cos(angle), math.sin(angle)
    return Unitary2(cos, -1j * sin, -1j * sin, cos)


def phase_matrix(theta_sum: float) -> Unitary2:
    """
    diag(e^{-i Theta}, e^{i Theta}), with Theta reduced mod 2 pi.
    """
    reduced = math.fmod(_finite(theta_sum, "theta_sum"), 2 * math.pi)
    return Unitary2(cmath.exp(-1j * reduced), 0, 0, cmath.exp(1j * reduced))


def phase_corrector(theta_sum: float) -> Unitary2:
    """
    Inverse of `phase_matrix`: diag(e^{i Theta}, e^{-i Theta}).
    """
    return phase_matrix(-theta_sum)


def is_unitary(unitary: Unitary2, tolerance: float = UNITARY_TOLERANCE) -> bool:
    product = (unitary.dagger() @ unitary).matrix
    return bool(np.max(np.abs(product - np.eye(2))) <= tolerance)


def apply(unitary: Unitary2, qubit: Qubit) -> Qubit:
    return Qubit(
        unitary.m00 * qubit.alpha + unitary.m01 * qubit.beta,
        unitary.m10 * qubit.alpha + unitary.m11 * qubit.beta,
    )


def fidelity(first: Qubit, second: Qubit) -> float:
    """
    |<a|b>|^2, clipped into [0, 1] against rounding.
    """
    overlap = (
        first.alpha.conjugate() * second.alpha + first.beta.conjugate() * second.beta
    )
    return min(1.0, max(0.0, abs(overlap) ** 2))


def trace_distance(first: Qubit, second: Qubit) -> float:
    return math.sqrt(1.0 - fidelity(first, second))


def bloch_vector(qubit: Qubit) -> tuple[float, float, float]:
    coherence = qubit.alpha.conjugate() * qubit.beta
    p0, p1 = qubit.probabilities()
    return 2 * coherence.real, 2 * coherence.imag, p0 - p1


def random_qubit(rng: np.random.Generator) -> Qubit:
    """
    Haar-random pure state: normalized complex Gaussian pair.
    """
    real, imag = rng.normal(size=2), rng.normal(size=2)
    return Qubit.normalized(complex(real[0], imag[0]), complex(real[1], imag[1]))
