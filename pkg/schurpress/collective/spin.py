"""Spin-j angular momentum matrices and measurement axes."""

import math
from dataclasses import dataclass
from functools import cache
from typing import Final, Self

import numpy as np
from numpy.typing import NDArray

from schurpress.errors import InvalidArgument, OutOfRange
from schurpress.qstate.state import QubitState

type SpinMatrix = NDArray[np.complex128]

AXIS_NAMES: Final[tuple[str, ...]] = ("X", "Y", "Z")


@dataclass(frozen=True, slots=True)
class SpinAxis:
    """Measurement direction; ``delta`` is the polar and ``epsilon`` the azimuthal angle."""

    delta: float
    epsilon: float = 0.0

    def __post_init__(self):
        if not 0.0 <= self.delta <= math.pi:
            raise OutOfRange("delta", self.delta, 0.0, math.pi)
        if not 0.0 <= self.epsilon < 2 * math.pi:
            raise OutOfRange("epsilon", self.epsilon, 0.0, 2 * math.pi)

    @classmethod
    def X(cls) -> Self:
        return cls(math.pi / 2, 0.0)

    @classmethod
    def Y(cls) -> Self:
        return cls(math.pi / 2, math.pi / 2)

    @classmethod
    def Z(cls) -> Self:
        return cls(0.0, 0.0)

    @classmethod
    def from_name(cls, name: str) -> Self:
        match name.upper():
            case "X":
                return cls.X()
            case "Y":
                return cls.Y()
            case "Z":
                return cls.Z()
            case _:
                raise InvalidArgument(f"Axis names are X, Y or Z. Got: {name!r}")

    @classmethod
    def random(cls, rng: np.random.Generator) -> Self:
        """Haar-random axis: ``cos(delta)`` uniform, ``epsilon`` uniform."""
        return cls(math.acos(1.0 - 2.0 * rng.random()), 2 * math.pi * rng.random())

    def unit_vector(self) -> NDArray[np.float64]:
        return np.array(
            [
                math.sin(self.delta) * math.cos(self.epsilon),
                math.sin(self.delta) * math.sin(self.epsilon),
                math.cos(self.delta),
            ]
        )

    @property
    def label(self) -> str:
        for name in AXIS_NAMES:
            if self == SpinAxis.from_name(name):
                return name
        return f"({self.delta:.6g},{self.epsilon:.6g})"


def _two_j(j: float) -> int:
    two_j = round(2 * j)
    if two_j < 1 or abs(2 * j - two_j) > 1e-12:
        raise InvalidArgument(f"Spin must be a positive multiple of 1/2. Got: {j}")
    return two_j


@cache
def spin_matrices(j: float) -> tuple[SpinMatrix, SpinMatrix, SpinMatrix]:
    """``(Jx, Jy, Jz)`` in the basis ``m = j, j-1, ..., -j``.

    Examples:
        >>> spin_matrices(0.5)[2].real.tolist()
        [[0.5, 0.0], [0.0, -0.5]]
    """
    two_j = _two_j(j)
    j = two_j / 2
    m = j - np.arange(two_j + 1)
    # <m+1|J+|m> sits one row above the diagonal
    raising = np.diag(np.sqrt(j * (j + 1) - m[1:] * (m[1:] + 1)), k=1).astype(np.complex128)
    jx = (raising + raising.conj().T) / 2
    jy = (raising - raising.conj().T) / 2j
    jz = np.diag(m).astype(np.complex128)
    for matrix in (jx, jy, jz):
        matrix.setflags(write=False)
    return jx, jy, jz


def collective_operator(axis: SpinAxis, n_copies: int = 3) -> SpinMatrix:
    """``n . (Jx, Jy, Jz)`` for the spin ``n_copies/2`` of the symmetric sector."""
    if n_copies < 1:
        raise InvalidArgument(f"The number of copies must be positive. Got: {n_copies}")
    jx, jy, jz = spin_matrices(n_copies / 2)
    nx, ny, nz = axis.unit_vector()
    return nx * jx + ny * jy + nz * jz


def single_qubit_eigenstates(axis: SpinAxis) -> tuple[QubitState, QubitState]:
    """Spin-up and spin-down states along ``axis``."""
    half = axis.delta / 2
    phase = np.exp(1j * axis.epsilon)
    up = QubitState(complex(math.cos(half)), complex(phase * math.sin(half)))
    down = QubitState(complex(math.sin(half)), complex(-phase * math.cos(half)))
    return up, down


def single_copy_expectation(psi: QubitState, axis: SpinAxis) -> float:
    """``<psi| n.sigma/2 |psi>``."""
    return float(axis.unit_vector() @ psi.bloch_vector()) / 2


def single_copy_variance(psi: QubitState, axis: SpinAxis) -> float:
    return 0.25 - single_copy_expectation(psi, axis) ** 2
