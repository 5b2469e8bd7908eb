from typing import Final, NamedTuple

import numpy as np
from numpy.typing import ArrayLike

from schurpress.errors import InvalidArgument

SPIN_EIGENVALUES: Final[tuple[float, float]] = (0.5, -0.5)


class InvalidSpinOutcome(InvalidArgument):
    def __init__(self, value: float):
        super().__init__(f"Single-qubit outcomes are +1/2 or -1/2. Got: {value!r}")


class Moments(NamedTuple):
    mean: float
    variance: float
    fourth_central: float


def _check(*outcomes: float) -> None:
    for value in outcomes:
        if value not in SPIN_EIGENVALUES:
            raise InvalidSpinOutcome(value)


def estimator_zcomp(m1: float, m2: float) -> float:
    """``(2 m1 + m2) / 3`` from the two compressed qubits.

    Examples:
        >>> estimator_zcomp(-0.5, 0.5) == -1 / 6
        True
    """
    _check(m1, m2)
    return (2 * m1 + m2) / 3


def estimator_zdirect(m1: float, m2: float, m3: float) -> float:
    _check(m1, m2, m3)
    return (m1 + m2 + m3) / 3


def estimator_moments(distribution: ArrayLike, values: ArrayLike) -> Moments:
    """Mean, variance and fourth central moment of a discrete estimator."""
    p = np.asarray(distribution, dtype=np.float64)
    x = np.asarray(values, dtype=np.float64)
    if p.shape != x.shape:
        raise InvalidArgument(f"Distribution and values differ in shape: {p.shape} != {x.shape}")
    mean = float(p @ x)
    centered = x - mean
    return Moments(mean, float(p @ centered**2), float(p @ centered**4))
