from collections.abc import Mapping, Sequence
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np
from numpy.typing import ArrayLike

from schurpress.errors import InvalidArgument, UnsupportedOperation
from schurpress.qstate.measure import Basis, as_basis, measure_projective
from schurpress.qstate.state import DimensionMismatch, StateVector
from schurpress.qstate.unitary import (
    Unitary,
    apply_to_tensor,
    apply_unitary,
    validate_indices,
)


@dataclass(frozen=True, slots=True, eq=False)
class UnitaryStep:
    unitary: Unitary
    targets: tuple[int, ...]
    controls: tuple[int, ...] = ()
    label: str = ""

    def __post_init__(self):
        if self.unitary.dim != 1 << len(self.targets):
            raise DimensionMismatch(
                1 << len(self.targets), self.unitary.dim, "unitary dimension"
            )


@dataclass(frozen=True, slots=True, eq=False)
class MeasureCorrectStep:
    """Measure one qubit, then apply ``corrections[outcome]`` on ``correction_targets``."""

    measured_qubit: int
    measurement_basis: Basis
    corrections: Mapping[int, Unitary]
    correction_targets: tuple[int, ...]
    label: str = ""

    def __post_init__(self):
        object.__setattr__(self, "measurement_basis", as_basis(self.measurement_basis))
        if self.measured_qubit in self.correction_targets:
            raise InvalidArgument("A correction cannot act on the measured qubit")
        for outcome, correction in self.corrections.items():
            if outcome not in (0, 1):
                raise InvalidArgument(f"Measurement outcomes are 0 or 1. Got: {outcome}")
            if correction.dim != 1 << len(self.correction_targets):
                raise DimensionMismatch(
                    1 << len(self.correction_targets), correction.dim, "correction dimension"
                )


type CircuitStep = UnitaryStep | MeasureCorrectStep


@dataclass(frozen=True, slots=True, eq=False)
class Circuit:
    num_qubits: int
    steps: tuple[CircuitStep, ...] = field(default=())

    def __post_init__(self):
        if self.num_qubits < 1:
            raise InvalidArgument(f"Circuits need at least one qubit. Got: {self.num_qubits}")
        object.__setattr__(self, "steps", tuple(self.steps))
        for step in self.steps:
            match step:
                case UnitaryStep(targets=targets, controls=controls):
                    validate_indices(self.num_qubits, targets, controls)
                case MeasureCorrectStep(
                    measured_qubit=qubit, correction_targets=targets
                ):
                    validate_indices(self.num_qubits, (qubit, *targets))
                case _:
                    raise InvalidArgument(f"Unknown circuit step: {step!r}")

    def gate(
        self,
        unitary: Unitary,
        targets: Sequence[int],
        controls: Sequence[int] = (),
        label: str = "",
    ) -> "Circuit":
        """Return a new circuit with one more unitary step."""
        step = UnitaryStep(unitary, tuple(targets), tuple(controls), label)
        return Circuit(self.num_qubits, (*self.steps, step))

    def measure_and_correct(
        self,
        qubit: int,
        basis: tuple[ArrayLike, ArrayLike],
        corrections: Mapping[int, Unitary],
        correction_targets: Sequence[int],
        label: str = "",
    ) -> "Circuit":
        step = MeasureCorrectStep(
            qubit, basis, dict(corrections), tuple(correction_targets), label  # type: ignore
        )
        return Circuit(self.num_qubits, (*self.steps, step))

    def unitary_prefix(self) -> "Circuit":
        """The circuit up to (not including) its first measurement."""
        prefix = []
        for step in self.steps:
            if isinstance(step, MeasureCorrectStep):
                break
            prefix.append(step)
        return Circuit(self.num_qubits, tuple(prefix))

    def __len__(self) -> int:
        return len(self.steps)

    def __repr__(self) -> str:
        labels = ", ".join(step.label or type(step).__name__ for step in self.steps)
        return f"{type(self).__name__}({self.num_qubits} qubits: {labels})"


class CircuitRun(NamedTuple):
    state: StateVector
    outcomes: tuple[int, ...]


def circuit_unitary(c: Circuit) -> Unitary:
    """Product of every step unitary, in application order."""
    dim = 1 << c.num_qubits
    # columns of the identity ride along as a trailing batch axis
    tensor = np.eye(dim, dtype=np.complex128).reshape((2,) * c.num_qubits + (dim,))
    for step in c.steps:
        match step:
            case UnitaryStep(unitary=u, targets=targets, controls=controls):
                tensor = apply_to_tensor(tensor, u, targets, controls)
            case MeasureCorrectStep():
                raise UnsupportedOperation(
                    "Circuits with measure-and-correct steps have no single unitary"
                )
    return Unitary(tensor.reshape(dim, dim))


def run_circuit(c: Circuit, state: StateVector, rng: np.random.Generator) -> CircuitRun:
    if state.num_qubits != c.num_qubits:
        raise DimensionMismatch(c.num_qubits, state.num_qubits, "register size")
    outcomes = []
    for step in c.steps:
        match step:
            case UnitaryStep(unitary=u, targets=targets, controls=controls):
                state = apply_unitary(state, u, targets, controls)
            case MeasureCorrectStep(
                measured_qubit=qubit,
                measurement_basis=basis,
                corrections=corrections,
                correction_targets=targets,
            ):
                outcome, state, _ = measure_projective(state, qubit, basis, rng)
                outcomes.append(outcome)
                if (correction := corrections.get(outcome)) is not None:
                    state = apply_unitary(state, correction, targets)
    return CircuitRun(state, tuple(outcomes))
