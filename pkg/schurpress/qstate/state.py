import math
from dataclasses import dataclass
from functools import reduce
from typing import Final, Self

import numpy as np
from numpy.typing import ArrayLike, NDArray

from schurpress.errors import InternalError, InvalidArgument, ResourceLimit

NORM_ATOL: Final[float] = 1e-12
STATE_ATOL: Final[float] = 1e-10
MAX_DENSE_QUBITS: Final[int] = 20

type Amplitudes = NDArray[np.complex128]


class NotNormalized(InvalidArgument):
    def __init__(self, norm: float, atol: float):
        super().__init__(f"Expected a unit-norm state (within {atol}). Got norm: {norm!r}")


class DimensionMismatch(InvalidArgument):
    def __init__(self, expected: int, got: int, what: str = "dimension"):
        super().__init__(f"Mismatched {what}: expected {expected}, got {got}")


class InvalidQubitIndex(InvalidArgument):
    def __init__(self, qubit: int, num_qubits: int):
        super().__init__(f"Qubit index {qubit} is out of range for a {num_qubits}-qubit register")


class RegisterTooLarge(ResourceLimit):
    def __init__(self, num_qubits: int):
        super().__init__(
            f"Dense registers are limited to {MAX_DENSE_QUBITS} qubits. Got: {num_qubits}"
        )


@dataclass(frozen=True, slots=True)
class QubitState:
    """A single-copy pure qubit ``alpha|0> + beta|1>``."""

    alpha: complex
    beta: complex

    def __post_init__(self):
        norm = math.sqrt(abs(self.alpha) ** 2 + abs(self.beta) ** 2)
        if abs(norm - 1.0) > NORM_ATOL:
            raise NotNormalized(norm, NORM_ATOL)

    @classmethod
    def from_bloch(cls, polar: float, azimuth: float = 0.0) -> Self:
        """``cos(polar/2)|0> + e^{i azimuth} sin(polar/2)|1>``."""
        return cls(
            complex(math.cos(polar / 2)),
            complex(np.exp(1j * azimuth) * math.sin(polar / 2)),
        )

    @property
    def vector(self) -> Amplitudes:
        return np.array([self.alpha, self.beta], dtype=np.complex128)

    def bloch_vector(self) -> NDArray[np.float64]:
        """Expectations of the Pauli operators (X, Y, Z)."""
        cross = np.conj(self.alpha) * self.beta
        return np.array(
            [
                2 * cross.real,
                2 * cross.imag,
                abs(self.alpha) ** 2 - abs(self.beta) ** 2,
            ]
        )


class StateVector:
    """Unit-norm vector of ``2**num_qubits`` amplitudes.

    Qubit 0 is the most significant bit of the basis index, so ``|q0 q1 q2>``
    reads left to right like a ket.
    """

    __slots__ = ("num_qubits", "amplitudes")
    __hash__ = None  # type: ignore

    num_qubits: int
    amplitudes: Amplitudes

    def __init__(self, amplitudes: ArrayLike, atol: float = STATE_ATOL):
        amplitudes = np.array(amplitudes, dtype=np.complex128).reshape(-1)
        num_qubits = int(amplitudes.size).bit_length() - 1
        if num_qubits < 1 or amplitudes.size != 1 << num_qubits:
            raise InvalidArgument(
                f"State vectors need 2**n amplitudes with n >= 1. Got: {amplitudes.size}"
            )
        if num_qubits > MAX_DENSE_QUBITS:
            raise RegisterTooLarge(num_qubits)
        norm = float(np.linalg.norm(amplitudes))
        if abs(norm - 1.0) > atol:
            raise NotNormalized(norm, atol)
        amplitudes.setflags(write=False)
        object.__setattr__(self, "num_qubits", num_qubits)
        object.__setattr__(self, "amplitudes", amplitudes)

    def __setattr__(self, name, value):
        raise AttributeError(f"{type(self).__name__} is immutable")

    @classmethod
    def normalized(cls, amplitudes: ArrayLike) -> Self:
        amplitudes = np.asarray(amplitudes, dtype=np.complex128)
        norm = np.linalg.norm(amplitudes)
        if norm == 0:
            raise InvalidArgument("Cannot normalize the zero vector")
        return cls(amplitudes / norm)

    @classmethod
    def basis(cls, bits: str) -> Self:
        """Computational basis state from a bitstring.

        Examples:
            >>> StateVector.basis("10").amplitudes.tolist()
            [0j, 0j, (1+0j), 0j]
        """
        amplitudes = np.zeros(1 << len(bits), dtype=np.complex128)
        amplitudes[int(bits, 2)] = 1.0
        return cls(amplitudes)

    @property
    def dim(self) -> int:
        return self.amplitudes.size

    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def probabilities(self) -> NDArray[np.float64]:
        return np.abs(self.amplitudes) ** 2

    def inner(self, other: "StateVector") -> complex:
        """``<self|other>``."""
        if other.dim != self.dim:
            raise DimensionMismatch(self.dim, other.dim)
        return complex(np.vdot(self.amplitudes, other.amplitudes))

    def tensor(self, other: "StateVector") -> "StateVector":
        return StateVector(np.kron(self.amplitudes, other.amplitudes))

    def as_tensor(self) -> NDArray[np.complex128]:
        return self.amplitudes.reshape((2,) * self.num_qubits)

    def check_qubit(self, qubit: int) -> None:
        if not 0 <= qubit < self.num_qubits:
            raise InvalidQubitIndex(qubit, self.num_qubits)

    def project(self, qubit: int, vector: ArrayLike) -> tuple["StateVector", float]:
        """Contract ``qubit`` against the bra of ``vector``.

        Returns the renormalized state of the remaining qubits and the Born
        probability of the projection.
        """
        self.check_qubit(qubit)
        if self.num_qubits == 1:
            raise InvalidArgument("Cannot project out the only qubit of a register")
        bra = np.conj(np.asarray(vector, dtype=np.complex128))
        rest = np.tensordot(self.as_tensor(), bra, axes=([qubit], [0])).reshape(-1)
        probability = float(np.vdot(rest, rest).real)
        if probability <= 0.0:
            raise InternalError(f"Projection of qubit {qubit} has zero probability")
        return StateVector(rest / math.sqrt(probability)), probability

    def __repr__(self) -> str:
        return f"{type(self).__name__}({np.array2string(self.amplitudes, precision=5)})"

    def __eq__(self, other) -> bool:
        return isinstance(other, StateVector) and np.array_equal(
            self.amplitudes, other.amplitudes
        )


def make_product_state(psi: QubitState, n: int) -> StateVector:
    """``psi`` tensored with itself ``n`` times.

    Examples:
        >>> make_product_state(QubitState(1, 0), 3).amplitudes[0]
        np.complex128(1+0j)
    """
    if n < 1:
        raise InvalidArgument(f"Product states need n >= 1 copies. Got: {n}")
    if n > MAX_DENSE_QUBITS:
        raise RegisterTooLarge(n)
    return StateVector(reduce(np.kron, [psi.vector] * n))


def equal_up_to_global_phase(a: StateVector, b: StateVector, tol: float) -> bool:
    if a.dim != b.dim:
        raise DimensionMismatch(a.dim, b.dim)
    return abs(a.inner(b)) >= 1.0 - tol


def fidelity(a: StateVector, b: StateVector) -> float:
    return abs(a.inner(b)) ** 2


def random_qubit_state(rng: np.random.Generator) -> QubitState:
    """Haar-random pure qubit, uniform on the Bloch sphere."""
    polar = math.acos(1.0 - 2.0 * rng.random())
    azimuth = 2.0 * math.pi * rng.random()
    return QubitState.from_bloch(polar, azimuth)


def random_state_vector(num_qubits: int, rng: np.random.Generator) -> StateVector:
    amplitudes = rng.standard_normal(1 << num_qubits) + 1j * rng.standard_normal(
        1 << num_qubits
    )
    return StateVector.normalized(amplitudes)
