"""Three-qubit Schur-Weyl compression circuits.

Register layout: qubits 0 and 1 carry the compressed pair, qubit 2 is the
residual qubit that ends in ``|0>`` (full circuit) or gets measured
(feed-forward circuit).
"""

import math
from dataclasses import dataclass
from functools import cache
from typing import Final, NamedTuple

import numpy as np

from schurpress.errors import InternalError
from schurpress.qstate.circuit import Circuit, circuit_unitary, run_circuit
from schurpress.qstate.measure import CIRCULAR
from schurpress.qstate.state import (
    QubitState,
    StateVector,
    equal_up_to_global_phase,
    make_product_state,
)
from schurpress.qstate.unitary import H, Unitary, X, apply_unitary

CORRECTION_ATOL: Final[float] = 1e-10

RESIDUAL_QUBIT: Final[int] = 2
COMPRESSED_QUBITS: Final[tuple[int, int]] = (0, 1)

# Neither reference input has a vanishing compressed amplitude, so every phase is observable.
_REFERENCE_INPUTS: Final[tuple[QubitState, QubitState]] = (
    QubitState(math.cos(0.4), np.exp(0.9j) * math.sin(0.4)),
    QubitState(math.cos(1.1), np.exp(-2.3j) * math.sin(1.1)),
)


class InconsistentCorrection(InternalError):
    def __init__(self, outcome: int, deviation: float):
        super().__init__(
            f"Feed-forward phases for outcome {outcome} depend on the input"
            f" (deviation {deviation:.3e}); the circuit is miswired"
        )


@dataclass(frozen=True, slots=True, eq=False)
class FeedForwardResult:
    outcome: int
    compressed: StateVector
    correction_applied: Unitary
    accepted: bool = True


def u1_u2_matrices() -> tuple[Unitary, Unitary]:
    """Real orthogonal solutions of the disentangling constraints.

    ``U1 (sqrt(2/3), sqrt(1/3)) = |0>``, ``U2 (sqrt(1/3), sqrt(2/3)) = |0>``
    and ``U2 U1 = X``.
    """
    a, b = math.sqrt(2 / 3), math.sqrt(1 / 3)
    u1 = Unitary([[a, b], [-b, a]])
    u2 = Unitary([[b, a], [a, -b]])
    return u1, u2


def _compression_boxes() -> Circuit:
    return (
        Circuit(3)
        # two-qubit transform: symmetric pair -> |00>, |01>, |10>
        .gate(X, targets=(1,), controls=(0,), label="CNOT 0->1")
        .gate(H, targets=(0,), controls=(1,), label="CH 1->0")
        # residual-controlled increment of the pair
        .gate(X, targets=(0,), controls=(1, 2), label="Toffoli 1,2->0")
        .gate(X, targets=(1,), controls=(2,), label="CNOT 2->1")
    )


@cache
def build_qswt3_full() -> Circuit:
    u1, u2 = u1_u2_matrices()
    return (
        _compression_boxes()
        .gate(u1, targets=(RESIDUAL_QUBIT,), controls=(1,), label="C-U1 1->2")
        .gate(u2, targets=(RESIDUAL_QUBIT,), controls=(0,), label="C-U2 0->2")
    )


@cache
def build_qswt3_feedforward() -> Circuit:
    return _compression_boxes().measure_and_correct(
        RESIDUAL_QUBIT,
        CIRCULAR,
        derive_corrections(),
        COMPRESSED_QUBITS,
        label="measure 2 (|0>+-i|1>), correct 0,1",
    )


def compress3(psi: QubitState) -> StateVector:
    """Compressed pair ``(a^3, sqrt3 a^2 b, sqrt3 a b^2, b^3)``.

    Examples:
        >>> compress3(QubitState(0, 1)).probabilities().tolist()
        [0.0, 0.0, 0.0, 1.0]
    """
    a, b = psi.vector / np.linalg.norm(psi.vector)
    root3 = math.sqrt(3)
    return StateVector([a**3, root3 * a**2 * b, root3 * a * b**2, b**3], atol=1e-12)


@cache
def derive_corrections() -> dict[int, Unitary]:
    """Diagonal phase corrections for each residual-qubit outcome.

    Solved from two reference inputs and required to agree between them.
    """
    boxes = _boxes_unitary()
    corrections = {}
    for outcome, vector in enumerate(CIRCULAR):
        estimates = []
        for reference in _REFERENCE_INPUTS:
            state = StateVector(boxes.matrix @ make_product_state(reference, 3).amplitudes)
            collapsed, _ = state.project(RESIDUAL_QUBIT, vector)
            ratio = compress3(reference).amplitudes / collapsed.amplitudes
            estimates.append(ratio / ratio[0])
        deviation = max(
            float(np.max(np.abs(estimates[0] - estimates[1]))),
            float(np.max(np.abs(np.abs(estimates[0]) - 1.0))),
        )
        if deviation > CORRECTION_ATOL:
            raise InconsistentCorrection(outcome, deviation)
        corrections[outcome] = Unitary.diagonal(estimates[0] / np.abs(estimates[0]))
    return corrections


def feedforward_compress(
    psi: QubitState, rng: np.random.Generator, postselect: int | None = None
) -> FeedForwardResult:
    """Run the feed-forward circuit on three copies of ``psi``.

    With ``postselect`` set, a run whose residual outcome differs is kept but
    flagged ``accepted=False``.
    """
    run = run_circuit(build_qswt3_feedforward(), make_product_state(psi, 3), rng)
    (outcome,) = run.outcomes
    compressed, _ = run.state.project(RESIDUAL_QUBIT, CIRCULAR[outcome])
    return FeedForwardResult(
        outcome=outcome,
        compressed=compressed,
        correction_applied=derive_corrections()[outcome],
        accepted=postselect is None or outcome == postselect,
    )


class FeedForwardBranch(NamedTuple):
    outcome: int
    probability: float
    corrected: StateVector


def feedforward_branches(psi: QubitState) -> tuple[FeedForwardBranch, FeedForwardBranch]:
    """Both measurement branches of the feed-forward circuit, with corrections applied."""
    boxes = _boxes_unitary()
    state = StateVector(boxes.matrix @ make_product_state(psi, 3).amplitudes)
    corrections = derive_corrections()
    branches = []
    for outcome, vector in enumerate(CIRCULAR):
        collapsed, probability = state.project(RESIDUAL_QUBIT, vector)
        corrected = StateVector(corrections[outcome].matrix @ collapsed.amplitudes)
        branches.append(FeedForwardBranch(outcome, probability, corrected))
    return branches[0], branches[1]


@cache
def _boxes_unitary() -> Unitary:
    return circuit_unitary(_compression_boxes())


@cache
def _full_unitary() -> Unitary:
    return circuit_unitary(build_qswt3_full())


def decompress3(state: StateVector) -> StateVector:
    """Undo the compression with a fresh ``|0>`` ancilla."""
    ancilla = StateVector.basis("0")
    return StateVector(_full_unitary().adjoint().matrix @ state.tensor(ancilla).amplitudes)


def residual_population(psi: QubitState) -> float:
    """Population of ``|1>`` on the residual qubit after the full circuit."""
    out = apply_unitary(
        make_product_state(psi, 3), _full_unitary(), targets=(0, 1, RESIDUAL_QUBIT)
    )
    return float(np.sum(out.probabilities().reshape(4, 2)[:, 1]))


def compressed_output(psi: QubitState) -> StateVector:
    """Compressed pair read off the full circuit, checking the residual is ``|0>``."""
    out = StateVector(_full_unitary().matrix @ make_product_state(psi, 3).amplitudes)
    pair, _ = out.project(RESIDUAL_QUBIT, [1, 0])
    if not equal_up_to_global_phase(out, pair.tensor(StateVector.basis("0")), CORRECTION_ATOL):
        raise InternalError("Residual qubit is entangled with the compressed pair")
    return pair
