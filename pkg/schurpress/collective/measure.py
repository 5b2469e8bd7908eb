from functools import cache
from typing import Final, NamedTuple

import numpy as np
from numpy.typing import NDArray

from schurpress.collective.spin import SpinAxis, collective_operator
from schurpress.qstate.state import DimensionMismatch, StateVector
from schurpress.qstate.unitary import Unitary
from schurpress.schur.symmetric import SymmetricCode

PHASE_ATOL: Final[float] = 1e-12

_SPIN32_BASIS: Final[tuple[tuple[str, float], ...]] = (
    ("00", 1.5),
    ("01", 0.5),
    ("10", -0.5),
    ("11", -1.5),
)


class CollectiveOutcome(NamedTuple):
    m: float
    estimate: float
    probability: float


def spin32_basis_map() -> tuple[tuple[str, float], ...]:
    """Compressed-pair basis states and their spin-3/2 projections, in basis order."""
    return _SPIN32_BASIS


def projections(n_copies: int = 3) -> NDArray[np.float64]:
    """``m = n/2, n/2 - 1, ..., -n/2``."""
    return (n_copies - 2 * np.arange(n_copies + 1)) / 2


def estimate_values(n_copies: int = 3) -> NDArray[np.float64]:
    """The ``m/n`` estimate attached to each outcome.

    Examples:
        >>> estimate_values(3).tolist() == [1 / 2, 1 / 6, -1 / 6, -1 / 2]
        True
    """
    return (n_copies - 2 * np.arange(n_copies + 1)) / (2 * n_copies)


def _basis_change(axis: SpinAxis, n_copies: int) -> NDArray[np.complex128]:
    _, vectors = np.linalg.eigh(collective_operator(axis, n_copies))
    vectors = vectors[:, ::-1]
    for column in vectors.T:
        lead = column[np.argmax(np.abs(column) > PHASE_ATOL)]
        column *= abs(lead) / lead
    return vectors.conj().T


@cache
def _cached_basis_change(axis: SpinAxis, n_copies: int) -> Unitary:
    return Unitary(_basis_change(axis, n_copies))


def basis_change(axis: SpinAxis, n_copies: int = 3) -> Unitary:
    """Maps the eigenvector of ``m`` along ``axis`` to the ``m``-th basis state.

    Rows are conjugated eigenvectors ordered by descending ``m``, each with its
    first nonzero entry real and positive.
    """
    return _cached_basis_change(axis, n_copies)


def _symmetric_amplitudes(state: StateVector | SymmetricCode) -> tuple[int, NDArray[np.complex128]]:
    match state:
        case SymmetricCode(n_copies=n, coefficients=coefficients):
            return n, coefficients
        case StateVector() if state.num_qubits == 2:
            return 3, state.amplitudes
        case StateVector():
            raise DimensionMismatch(2, state.num_qubits, "compressed register size")
        case _:
            raise TypeError(f"Expected a compressed pair or a symmetric code. Got: {type(state)}")


def outcome_distribution(state: StateVector | SymmetricCode, axis: SpinAxis) -> NDArray[np.float64]:
    """Born probabilities of ``m = +n/2 .. -n/2`` for a collective measurement along ``axis``."""
    n, amplitudes = _symmetric_amplitudes(state)
    rotated = basis_change(axis, n).matrix @ amplitudes
    return np.abs(rotated) ** 2


def sample_outcome(
    state: StateVector | SymmetricCode, axis: SpinAxis, rng: np.random.Generator
) -> CollectiveOutcome:
    distribution = outcome_distribution(state, axis)
    n = distribution.size - 1
    index = int(rng.choice(n + 1, p=distribution / distribution.sum()))
    return CollectiveOutcome(
        m=float(projections(n)[index]),
        estimate=float(estimate_values(n)[index]),
        probability=float(distribution[index]),
    )
