import cmath
import math
from dataclasses import dataclass
from typing import Any, Final, Self

import numpy as np
from numpy.typing import ArrayLike, NDArray
from scipy.special import comb, gammaln, xlogy

from schurpress.errors import InvalidArgument
from schurpress.qstate.state import (
    MAX_DENSE_QUBITS,
    DimensionMismatch,
    NotNormalized,
    QubitState,
    RegisterTooLarge,
    StateVector,
)
from schurpress.serialization.abc import JSONSerializable

SYMMETRY_ATOL: Final[float] = 1e-10
CODE_ATOL: Final[float] = 1e-10


class NotPermutationInvariant(InvalidArgument):
    def __init__(self, asymmetry: float):
        super().__init__(
            f"State is not permutation invariant: max asymmetry {asymmetry:.3e} > {SYMMETRY_ATOL}"
        )


def _check_copies(n: int) -> None:
    if n < 1:
        raise InvalidArgument(f"The number of copies must be positive. Got: {n}")


def hamming_weights(n: int) -> NDArray[np.int64]:
    """Number of ones in every ``n``-bit basis index, in basis order."""
    indices = np.arange(1 << n)
    return ((indices[:, None] >> np.arange(n)) & 1).sum(axis=1)


@dataclass(frozen=True, slots=True, eq=False)
class SymmetricCode(JSONSerializable):
    """Symmetric-sector amplitudes of ``n_copies`` qubits, indexed by excitation count."""

    n_copies: int
    coefficients: NDArray[np.complex128]

    def __post_init__(self):
        _check_copies(self.n_copies)
        coefficients = np.array(self.coefficients, dtype=np.complex128).reshape(-1)
        if coefficients.size != self.n_copies + 1:
            raise DimensionMismatch(self.n_copies + 1, coefficients.size, "coefficient count")
        norm = float(np.linalg.norm(coefficients))
        if abs(norm - 1.0) > CODE_ATOL:
            raise NotNormalized(norm, CODE_ATOL)
        coefficients.setflags(write=False)
        object.__setattr__(self, "coefficients", coefficients)

    @property
    def packed_qubits(self) -> int:
        """``ceil(log2(n_copies + 1))``."""
        return self.n_copies.bit_length()

    def to_register(self) -> StateVector:
        """The code as a ``packed_qubits`` register, unused basis states zero."""
        padded = np.zeros(1 << self.packed_qubits, dtype=np.complex128)
        padded[: self.n_copies + 1] = self.coefficients
        return StateVector(padded)

    @classmethod
    def from_register(cls, state: StateVector, n_copies: int) -> Self:
        _check_copies(n_copies)
        expected = n_copies.bit_length()
        if state.num_qubits != expected:
            raise DimensionMismatch(expected, state.num_qubits, "packed register size")
        padding = state.amplitudes[n_copies + 1 :]
        if padding.size and float(np.max(np.abs(padding))) > CODE_ATOL:
            raise InvalidArgument(
                f"Register has weight outside the {n_copies + 1} code states"
            )
        return cls(n_copies, state.amplitudes[: n_copies + 1])

    def __json__(self) -> dict[str, Any]:
        return {
            "n_copies": self.n_copies,
            "packed_qubits": self.packed_qubits,
            "coefficients": [complex(c) for c in self.coefficients],
        }


def symmetric_encode(psi: QubitState, n: int) -> SymmetricCode:
    """Code of ``psi`` repeated ``n`` times.

    Magnitudes are built in log space so any ``n`` stays finite.

    Examples:
        >>> symmetric_encode(QubitState(0, 1), 3).coefficients.tolist()
        [0j, 0j, 0j, (1+0j)]
    """
    _check_copies(n)
    alpha, beta = complex(psi.alpha), complex(psi.beta)
    k = np.arange(n + 1)
    log_magnitudes = (
        0.5 * (gammaln(n + 1) - gammaln(k + 1) - gammaln(n - k + 1))
        + xlogy(n - k, abs(alpha))
        + xlogy(k, abs(beta))
    )
    magnitudes = np.exp(log_magnitudes - log_magnitudes.max())
    magnitudes /= np.linalg.norm(magnitudes)
    phases = np.exp(1j * ((n - k) * cmath.phase(alpha) + k * cmath.phase(beta)))
    return SymmetricCode(n, magnitudes * phases)


def symmetric_encode_general(sym_state: ArrayLike, n: int) -> SymmetricCode:
    """Code of any permutation-invariant ``n``-qubit state."""
    _check_copies(n)
    if n > MAX_DENSE_QUBITS:
        raise RegisterTooLarge(n)
    amplitudes = np.asarray(sym_state, dtype=np.complex128).reshape(-1)
    if amplitudes.size != 1 << n:
        raise DimensionMismatch(1 << n, amplitudes.size, "state size")
    tensor = amplitudes.reshape((2,) * n)
    asymmetry = max(
        (float(np.max(np.abs(tensor - np.swapaxes(tensor, i, i + 1)))) for i in range(n - 1)),
        default=0.0,
    )
    if asymmetry > SYMMETRY_ATOL:
        raise NotPermutationInvariant(asymmetry)
    # |0...01...1> represents weight k
    representatives = amplitudes[(1 << np.arange(n + 1)) - 1]
    return SymmetricCode(n, representatives * np.sqrt(comb(n, np.arange(n + 1))))


def symmetric_decode(code: SymmetricCode) -> StateVector:
    n = code.n_copies
    if n > MAX_DENSE_QUBITS:
        raise RegisterTooLarge(n)
    weights = hamming_weights(n)
    return StateVector(code.coefficients[weights] / np.sqrt(comb(n, weights)))


def compress(psi: QubitState, n: int) -> StateVector:
    return symmetric_encode(psi, n).to_register()


def dicke_state(n: int, k: int) -> StateVector:
    """Uniform superposition of the ``n``-bit strings with ``k`` ones."""
    _check_copies(n)
    if not 0 <= k <= n:
        raise InvalidArgument(f"Dicke weight must lie in [0, {n}]. Got: {k}")
    coefficients = np.zeros(n + 1, dtype=np.complex128)
    coefficients[k] = 1.0
    return symmetric_decode(SymmetricCode(n, coefficients))


def ghz_state(n: int) -> StateVector:
    _check_copies(n)
    if n == 1:
        raise InvalidArgument("GHZ states need at least two qubits")
    coefficients = np.zeros(n + 1, dtype=np.complex128)
    coefficients[[0, n]] = 1 / math.sqrt(2)
    return symmetric_decode(SymmetricCode(n, coefficients))
