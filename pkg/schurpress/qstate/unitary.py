import math
from collections.abc import Sequence
from typing import Final, Self

import numpy as np
from numpy.typing import ArrayLike, NDArray

from schurpress.errors import InvalidArgument
from schurpress.qstate.state import DimensionMismatch, InvalidQubitIndex, StateVector

UNITARY_ATOL: Final[float] = 1e-12


class NotUnitary(InvalidArgument):
    def __init__(self, deviation: float):
        super().__init__(
            f"Matrix is not unitary: max |U^dagger U - I| = {deviation:.3e} > {UNITARY_ATOL}"
        )


class IndexCollision(InvalidArgument):
    def __init__(self, targets: Sequence[int], controls: Sequence[int]):
        super().__init__(
            f"Target and control qubits must be distinct. Got targets={list(targets)}, controls={list(controls)}"
        )


class Unitary:
    """A ``dim x dim`` unitary matrix, ``dim`` a power of two."""

    __slots__ = ("matrix",)
    __hash__ = None  # type: ignore

    matrix: NDArray[np.complex128]

    def __init__(self, matrix: ArrayLike, atol: float = UNITARY_ATOL):
        matrix = np.array(matrix, dtype=np.complex128)
        if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
            raise InvalidArgument(f"Unitaries must be square matrices. Got shape: {matrix.shape}")
        dim = matrix.shape[0]
        if dim < 2 or dim & (dim - 1):
            raise InvalidArgument(f"Unitary dimension must be a power of two. Got: {dim}")
        deviation = max_deviation(matrix.conj().T @ matrix, np.eye(dim))
        if deviation > atol:
            raise NotUnitary(deviation)
        matrix.setflags(write=False)
        object.__setattr__(self, "matrix", matrix)

    def __setattr__(self, name, value):
        raise AttributeError(f"{type(self).__name__} is immutable")

    @classmethod
    def identity(cls, num_qubits: int) -> Self:
        return cls(np.eye(1 << num_qubits))

    @classmethod
    def diagonal(cls, phases: ArrayLike) -> Self:
        return cls(np.diag(np.asarray(phases, dtype=np.complex128)))

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    @property
    def num_qubits(self) -> int:
        return self.dim.bit_length() - 1

    def adjoint(self) -> "Unitary":
        return Unitary(self.matrix.conj().T)

    def kron(self, other: "Unitary") -> "Unitary":
        return Unitary(np.kron(self.matrix, other.matrix))

    def __matmul__(self, other: "Unitary") -> "Unitary":
        return Unitary(self.matrix @ other.matrix)

    def __repr__(self) -> str:
        return f"{type(self).__name__}({np.array2string(self.matrix, precision=4)})"

    def __eq__(self, other) -> bool:
        return isinstance(other, Unitary) and np.array_equal(self.matrix, other.matrix)


def max_deviation(a: ArrayLike, b: ArrayLike) -> float:
    return float(np.max(np.abs(np.asarray(a) - np.asarray(b))))


X: Final[Unitary] = Unitary([[0, 1], [1, 0]])
Y: Final[Unitary] = Unitary([[0, -1j], [1j, 0]])
Z: Final[Unitary] = Unitary([[1, 0], [0, -1]])
H: Final[Unitary] = Unitary(np.array([[1, 1], [1, -1]]) / math.sqrt(2))
S: Final[Unitary] = Unitary([[1, 0], [0, 1j]])


def controlled(u: Unitary, n_controls: int = 1) -> Unitary:
    """Explicit matrix of ``u`` controlled by ``n_controls`` leading qubits.

    Examples:
        >>> controlled(X).matrix.real.astype(int).tolist()
        [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]]
    """
    dim = u.dim << n_controls
    matrix = np.eye(dim, dtype=np.complex128)
    matrix[dim - u.dim :, dim - u.dim :] = u.matrix
    return Unitary(matrix)


def validate_indices(
    num_qubits: int, targets: Sequence[int], controls: Sequence[int] = ()
) -> None:
    indices = [*targets, *controls]
    if not targets:
        raise InvalidArgument("At least one target qubit is required")
    for qubit in indices:
        if not 0 <= qubit < num_qubits:
            raise InvalidQubitIndex(qubit, num_qubits)
    if len(set(indices)) != len(indices):
        raise IndexCollision(targets, controls)


def apply_to_tensor(
    tensor: NDArray[np.complex128],
    u: Unitary,
    targets: Sequence[int],
    controls: Sequence[int] = (),
) -> NDArray[np.complex128]:
    """Apply ``u`` on ``targets`` of a ``(2,)*n`` amplitude tensor.

    Only the block where every control qubit is ``|1>`` is touched.
    """
    tensor = tensor.copy()
    num_qubits = tensor.ndim
    index: list[int | slice] = [slice(None)] * num_qubits
    for qubit in controls:
        index[qubit] = 1
    remaining = [q for q in range(num_qubits) if q not in controls]
    axes = [remaining.index(t) for t in targets]
    k = len(targets)

    block = tensor[tuple(index)]
    gate = u.matrix.reshape((2,) * (2 * k))
    block = np.tensordot(gate, block, axes=(list(range(k, 2 * k)), axes))
    tensor[tuple(index)] = np.moveaxis(block, list(range(k)), axes)
    return tensor


def apply_unitary(
    state: StateVector,
    u: Unitary,
    targets: Sequence[int],
    controls: Sequence[int] = (),
) -> StateVector:
    validate_indices(state.num_qubits, targets, controls)
    if u.dim != 1 << len(targets):
        raise DimensionMismatch(1 << len(targets), u.dim, "unitary dimension")
    return StateVector(apply_to_tensor(state.as_tensor(), u, targets, controls))


def random_unitary(dim: int, rng: np.random.Generator) -> Unitary:
    """Haar-random unitary from the QR decomposition of a Ginibre matrix."""
    ginibre = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    q, r = np.linalg.qr(ginibre)
    phases = np.diag(r) / np.abs(np.diag(r))
    return Unitary(q * phases)
