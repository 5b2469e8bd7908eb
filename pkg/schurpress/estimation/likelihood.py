"""Likelihoods of the 2+1 game: one qubit measured along a random axis, two along Z."""

from typing import Final

import numpy as np
from numpy.typing import ArrayLike, NDArray

from schurpress.errors import InvalidArgument, OutOfRange

Z_RANGE: Final[tuple[float, float]] = (-0.5, 0.5)

# spin-down count of the Z pair, keyed by tally
TALLIES: Final[dict[tuple[int, int], int]] = {(0, 0): 0, (0, 1): 1, (1, 1): 2}


def _check_z(z: float) -> None:
    if not Z_RANGE[0] <= z <= Z_RANGE[1]:
        raise OutOfRange("z", z, *Z_RANGE)


def _check_outcome(outcome: int) -> None:
    if outcome not in (0, 1):
        raise InvalidArgument(f"Measurement outcomes are 0 or 1. Got: {outcome!r}")


def transverse(z: ArrayLike) -> NDArray[np.float64]:
    """``sqrt(1 - 4 z^2) / 2``, the in-plane spin length of a pure state."""
    z = np.asarray(z, dtype=np.float64)
    return 0.5 * np.sqrt(np.clip(1.0 - 4.0 * z**2, 0.0, None))


def first_up_probability(
    z: ArrayLike, delta: ArrayLike, epsilon: ArrayLike
) -> NDArray[np.float64]:
    return 0.5 + np.multiply(z, np.cos(delta)) + transverse(z) * np.sin(delta) * np.cos(epsilon)


def pair_probabilities(z: ArrayLike) -> NDArray[np.float64]:
    """Rows: ``(1/2+z)^2``, ``1/2-2z^2``, ``(1/2-z)^2`` for 0, 1, 2 spin-down outcomes."""
    z = np.asarray(z, dtype=np.float64)
    return np.stack([(0.5 + z) ** 2, 0.5 - 2 * z**2, (0.5 - z) ** 2])


def likelihood_first(z: float, outcome: int, delta: float, epsilon: float) -> float:
    """Probability of the random-axis outcome given ``z``.

    Examples:
        >>> likelihood_first(0.25, 0, 0.0, 0.0)
        0.75
    """
    _check_z(z)
    _check_outcome(outcome)
    up = float(first_up_probability(z, delta, epsilon))
    return up if outcome == 0 else 1.0 - up


def likelihood_pair(z: float, tally: tuple[int, int]) -> float:
    _check_z(z)
    try:
        downs = TALLIES[tuple(sorted(tally))]  # type: ignore
    except (KeyError, TypeError):
        raise InvalidArgument(f"Pair tallies are (0, 0), (0, 1) or (1, 1). Got: {tally!r}")
    return float(pair_probabilities(z)[downs])


def joint_likelihood(
    z: ArrayLike,
    first_outcome: ArrayLike,
    downs: ArrayLike,
    delta: ArrayLike,
    epsilon: ArrayLike,
) -> NDArray[np.float64]:
    """Elementwise product likelihood; all arguments broadcast together."""
    up = first_up_probability(z, delta, epsilon)
    first = np.where(np.asarray(first_outcome) == 0, up, 1.0 - up)
    z = np.asarray(z, dtype=np.float64)
    downs = np.asarray(downs)
    pair = np.where(
        downs == 0, (0.5 + z) ** 2, np.where(downs == 1, 0.5 - 2 * z**2, (0.5 - z) ** 2)
    )
    return first * pair

