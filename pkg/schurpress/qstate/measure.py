import math
from typing import Final, NamedTuple

import numpy as np
from numpy.typing import ArrayLike, NDArray

from schurpress.errors import InternalError, InvalidArgument
from schurpress.qstate.state import StateVector

BASIS_ATOL: Final[float] = 1e-12

type Basis = tuple[NDArray[np.complex128], NDArray[np.complex128]]

COMPUTATIONAL: Final[Basis] = (
    np.array([1, 0], dtype=np.complex128),
    np.array([0, 1], dtype=np.complex128),
)
CIRCULAR: Final[Basis] = (
    np.array([1, 1j], dtype=np.complex128) / math.sqrt(2),
    np.array([1, -1j], dtype=np.complex128) / math.sqrt(2),
)


class NonOrthonormalBasis(InvalidArgument):
    def __init__(self, deviation: float):
        super().__init__(
            f"Measurement basis is not orthonormal: max Gram deviation {deviation:.3e} > {BASIS_ATOL}"
        )


class Measurement(NamedTuple):
    outcome: int
    collapsed: StateVector
    probability: float


def as_basis(basis: tuple[ArrayLike, ArrayLike]) -> Basis:
    first, second = (np.asarray(v, dtype=np.complex128).reshape(-1) for v in basis)
    if first.shape != (2,) or second.shape != (2,):
        raise InvalidArgument("Measurement basis vectors must be single-qubit states")
    gram = np.array(
        [[np.vdot(a, b) for b in (first, second)] for a in (first, second)]
    )
    deviation = float(np.max(np.abs(gram - np.eye(2))))
    if deviation > BASIS_ATOL:
        raise NonOrthonormalBasis(deviation)
    return first, second


def branch_amplitudes(
    state: StateVector, qubit: int, basis: Basis
) -> tuple[NDArray[np.complex128], NDArray[np.complex128]]:
    """Unnormalized amplitudes of the other qubits for each basis outcome."""
    tensor = state.as_tensor()
    return tuple(  # type: ignore
        np.tensordot(tensor, np.conj(vector), axes=([qubit], [0])).reshape(-1)
        for vector in basis
    )


def branch_probabilities(state: StateVector, qubit: int, basis: Basis) -> tuple[float, float]:
    first, second = branch_amplitudes(state, qubit, basis)
    return float(np.vdot(first, first).real), float(np.vdot(second, second).real)


def collapse(
    state: StateVector, qubit: int, basis: Basis, outcome: int
) -> tuple[StateVector, float]:
    """Post-measurement state for a chosen outcome; the qubit stays in the register."""
    rest = branch_amplitudes(state, qubit, basis)[outcome]
    probability = float(np.vdot(rest, rest).real)
    if probability <= 0.0:
        raise InternalError(
            f"Outcome {outcome} of qubit {qubit} has zero probability and cannot be collapsed onto"
        )
    rest = rest.reshape((2,) * (state.num_qubits - 1)) / math.sqrt(probability)
    tensor = np.moveaxis(np.multiply.outer(rest, basis[outcome]), -1, qubit)
    return StateVector(tensor), probability


def measure_projective(
    state: StateVector,
    qubit: int,
    basis: tuple[ArrayLike, ArrayLike],
    rng: np.random.Generator,
) -> Measurement:
    state.check_qubit(qubit)
    checked = as_basis(basis)
    p0, _ = branch_probabilities(state, qubit, checked)
    outcome = 0 if rng.random() < p0 else 1
    collapsed, probability = collapse(state, qubit, checked, outcome)
    return Measurement(outcome, collapsed, probability)
