import math

import numpy as np
import pytest

from schurpress.errors import InternalError, InvalidArgument, ResourceLimit, UnsupportedOperation
from schurpress.qstate import (
    CIRCULAR,
    COMPUTATIONAL,
    Circuit,
    H,
    QubitState,
    StateVector,
    Unitary,
    X,
    Z,
    apply_unitary,
    circuit_unitary,
    controlled,
    equal_up_to_global_phase,
    make_product_state,
    measure_projective,
    random_qubit_state,
    random_state_vector,
    random_unitary,
    run_circuit,
)
from schurpress.qstate.measure import NonOrthonormalBasis, branch_probabilities
from schurpress.qstate.state import InvalidQubitIndex, NotNormalized
from schurpress.qstate.unitary import IndexCollision, NotUnitary


@pytest.mark.unit
class TestQubitState:
    def test_normalization(self):
        QubitState(1 / math.sqrt(2), 1j / math.sqrt(2))
        with pytest.raises(NotNormalized):
            QubitState(1, 1)

    def test_not_normalized_is_invalid_argument(self):
        with pytest.raises(InvalidArgument):
            QubitState(0.5, 0.5)

    def test_from_bloch(self):
        psi = QubitState.from_bloch(math.pi / 2, 0.0)
        np.testing.assert_allclose(psi.bloch_vector(), [1, 0, 0], atol=1e-12)
        np.testing.assert_allclose(QubitState(0, 1).bloch_vector(), [0, 0, -1])


@pytest.mark.unit
class TestStateVector:
    def test_construction(self):
        state = StateVector([1, 0, 0, 0])
        assert state.num_qubits == 2
        assert state.dim == 4

    def test_rejects_bad_sizes(self):
        with pytest.raises(InvalidArgument):
            StateVector([1, 0, 0])
        with pytest.raises(InvalidArgument):
            StateVector([1])

    def test_rejects_unnormalized(self):
        with pytest.raises(NotNormalized):
            StateVector([1, 1])

    def test_immutable(self):
        state = StateVector([0, 1])
        with pytest.raises(AttributeError):
            state.num_qubits = 3  # type: ignore
        with pytest.raises(ValueError):
            state.amplitudes[0] = 1

    def test_basis_is_msb_first(self):
        assert StateVector.basis("10").amplitudes[2] == 1
        assert StateVector.basis("001").amplitudes[1] == 1

    def test_tensor(self):
        state = StateVector.basis("1").tensor(StateVector.basis("0"))
        assert state == StateVector.basis("10")

    def test_project(self):
        bell = StateVector(np.array([1, 0, 0, 1]) / math.sqrt(2))
        rest, probability = bell.project(1, [0, 1])
        assert probability == pytest.approx(0.5)
        np.testing.assert_allclose(rest.amplitudes, [0, 1], atol=1e-12)

    def test_project_zero_probability(self):
        with pytest.raises(InternalError):
            StateVector.basis("00").project(0, [0, 1])

    def test_project_single_qubit(self):
        with pytest.raises(InvalidArgument):
            StateVector.basis("0").project(0, [1, 0])

    def test_invalid_qubit(self):
        with pytest.raises(InvalidQubitIndex):
            StateVector.basis("00").project(2, [1, 0])

    def test_product_state(self):
        psi = QubitState(0.6, 0.8)
        state = make_product_state(psi, 3)
        assert state.num_qubits == 3
        assert state.amplitudes[0b011] == pytest.approx(0.6 * 0.8 * 0.8)

    def test_product_state_limits(self):
        with pytest.raises(InvalidArgument):
            make_product_state(QubitState(1, 0), 0)
        with pytest.raises(ResourceLimit):
            make_product_state(QubitState(1, 0), 21)

    def test_global_phase(self):
        rng = np.random.default_rng(3)
        state = random_state_vector(3, rng)
        rotated = StateVector(np.exp(0.7j) * state.amplitudes)
        assert equal_up_to_global_phase(state, rotated, 1e-12)
        assert not equal_up_to_global_phase(StateVector.basis("01"), StateVector.basis("10"), 1e-3)

    def test_random_qubit_is_normalized(self):
        rng = np.random.default_rng(0)
        for _ in range(100):
            psi = random_qubit_state(rng)
            assert abs(psi.alpha) ** 2 + abs(psi.beta) ** 2 == pytest.approx(1.0)


@pytest.mark.unit
class TestUnitary:
    def test_rejects_non_unitary(self):
        with pytest.raises(NotUnitary):
            Unitary([[1, 1], [0, 1]])

    def test_rejects_non_power_of_two(self):
        with pytest.raises(InvalidArgument):
            Unitary(np.eye(3))

    def test_adjoint_and_product(self):
        rng = np.random.default_rng(1)
        u = random_unitary(4, rng)
        np.testing.assert_allclose((u @ u.adjoint()).matrix, np.eye(4), atol=1e-12)

    def test_kron(self):
        assert X.kron(Z).num_qubits == 2

    def test_controlled_matches_apply(self):
        rng = np.random.default_rng(2)
        state = random_state_vector(3, rng)
        u = random_unitary(2, rng)
        expected = controlled(u, 2).matrix @ state.amplitudes
        actual = apply_unitary(state, u, targets=(2,), controls=(0, 1))
        np.testing.assert_allclose(actual.amplitudes, expected, atol=1e-12)

    def test_target_order(self):
        # CNOT with control 1 and target 0 on |01> gives |11>
        state = apply_unitary(StateVector.basis("01"), X, targets=(0,), controls=(1,))
        assert state == StateVector.basis("11")

    def test_two_qubit_target_order(self):
        rng = np.random.default_rng(5)
        state = random_state_vector(2, rng)
        u = random_unitary(4, rng)
        swapped = apply_unitary(state, u, targets=(1, 0))
        swap = np.eye(4)[[0, 2, 1, 3]]
        np.testing.assert_allclose(
            swapped.amplitudes, swap @ u.matrix @ swap @ state.amplitudes, atol=1e-12
        )

    def test_index_errors(self):
        with pytest.raises(IndexCollision):
            apply_unitary(StateVector.basis("00"), X, targets=(0,), controls=(0,))
        with pytest.raises(InvalidQubitIndex):
            apply_unitary(StateVector.basis("00"), X, targets=(2,))

    def test_preserves_norm(self):
        rng = np.random.default_rng(7)
        for _ in range(20):
            state = random_state_vector(4, rng)
            out = apply_unitary(state, random_unitary(4, rng), targets=(3, 1))
            assert out.norm() == pytest.approx(1.0, abs=1e-12)


@pytest.mark.unit
class TestMeasure:
    def test_basis_validation(self):
        with pytest.raises(NonOrthonormalBasis):
            measure_projective(StateVector.basis("0"), 0, ([1, 0], [1, 0]), np.random.default_rng())

    def test_circular_branches_of_zero(self):
        p0, p1 = branch_probabilities(StateVector.basis("0"), 0, CIRCULAR)
        assert p0 == pytest.approx(0.5)
        assert p1 == pytest.approx(0.5)

    def test_collapse_keeps_register(self):
        plus = StateVector(np.array([1, 1]) / math.sqrt(2)).tensor(StateVector.basis("1"))
        outcome, collapsed, probability = measure_projective(
            plus, 0, COMPUTATIONAL, np.random.default_rng(4)
        )
        assert collapsed.num_qubits == 2
        assert probability == pytest.approx(0.5)
        np.testing.assert_allclose(
            collapsed.amplitudes, StateVector.basis(f"{outcome}1").amplitudes, atol=1e-12
        )

    def test_deterministic_outcome(self):
        rng = np.random.default_rng(0)
        for _ in range(10):
            assert measure_projective(StateVector.basis("1"), 0, COMPUTATIONAL, rng).outcome == 1


@pytest.mark.unit
class TestCircuit:
    def test_bell_circuit_unitary(self):
        circuit = Circuit(2).gate(H, (0,)).gate(X, (1,), (0,))
        out = circuit_unitary(circuit).matrix @ StateVector.basis("00").amplitudes
        np.testing.assert_allclose(out, np.array([1, 0, 0, 1]) / math.sqrt(2), atol=1e-12)

    def test_builder_returns_new_circuit(self):
        empty = Circuit(2)
        assert len(empty.gate(X, (0,))) == 1
        assert len(empty) == 0

    def test_invalid_step(self):
        with pytest.raises(InvalidQubitIndex):
            Circuit(2).gate(X, (3,))

    def test_measure_step_has_no_unitary(self):
        circuit = Circuit(2).measure_and_correct(0, COMPUTATIONAL, {1: X}, (1,))
        with pytest.raises(UnsupportedOperation):
            circuit_unitary(circuit)
        assert len(circuit.unitary_prefix()) == 0

    def test_run_with_correction(self):
        # measure q0 of |+>|0>, flip q1 on outcome 1
        circuit = (
            Circuit(2)
            .gate(H, (0,))
            .measure_and_correct(0, COMPUTATIONAL, {1: X}, (1,))
        )
        rng = np.random.default_rng(11)
        for _ in range(20):
            run = run_circuit(circuit, StateVector.basis("00"), rng)
            (outcome,) = run.outcomes
            np.testing.assert_allclose(
                run.state.amplitudes,
                StateVector.basis(f"{outcome}{outcome}").amplitudes,
                atol=1e-12,
            )

    def test_correction_on_measured_qubit(self):
        with pytest.raises(InvalidArgument):
            Circuit(2).measure_and_correct(0, COMPUTATIONAL, {1: X}, (0,))


def random_circuit(n: int, depth: int, rng: np.random.Generator) -> Circuit:
    circuit = Circuit(n)
    for _ in range(depth):
        width = int(rng.integers(1, min(n, 2) + 1))
        qubits = [int(q) for q in rng.permutation(n)]
        targets = qubits[:width]
        controls = qubits[width : width + int(rng.integers(0, n - width + 1))]
        circuit = circuit.gate(random_unitary(1 << width, rng), targets, controls)
    return circuit


@pytest.mark.unit
class TestCircuitComposition:
    def test_empty_circuit_is_identity(self):
        for n in (1, 3):
            np.testing.assert_array_equal(circuit_unitary(Circuit(n)).matrix, np.eye(1 << n))

    def test_controlled_hadamard_on_11(self):
        circuit = Circuit(2).gate(H, (1,), (0,))
        out = circuit_unitary(circuit).matrix @ StateVector.basis("11").amplitudes
        np.testing.assert_allclose(out, np.array([0, 0, 1, -1]) / math.sqrt(2), atol=1e-12)

    @pytest.mark.parametrize("n", [1, 2, 3, 4, 5, 6])
    def test_stepwise_matches_matrix(self, n: int):
        rng = np.random.default_rng(100 + n)
        for _ in range(5):
            circuit = random_circuit(n, 8, rng)
            state = random_state_vector(n, rng)
            stepped = state
            for step in circuit.steps:
                stepped = apply_unitary(stepped, step.unitary, step.targets, step.controls)
            np.testing.assert_allclose(
                stepped.amplitudes,
                circuit_unitary(circuit).matrix @ state.amplitudes,
                atol=1e-10,
            )

    @pytest.mark.parametrize("n", [2, 4, 6])
    def test_matrix_is_unitary(self, n: int):
        rng = np.random.default_rng(200 + n)
        matrix = circuit_unitary(random_circuit(n, 10, rng)).matrix
        np.testing.assert_allclose(matrix.conj().T @ matrix, np.eye(1 << n), atol=1e-10)


@pytest.mark.unit
class TestBornRule:
    def test_branches_sum_to_one(self):
        rng = np.random.default_rng(300)
        for _ in range(100):
            n = int(rng.integers(1, 6))
            state = random_state_vector(n, rng)
            qubit = int(rng.integers(0, n))
            for basis in (COMPUTATIONAL, CIRCULAR):
                assert sum(branch_probabilities(state, qubit, basis)) == pytest.approx(1.0, abs=1e-12)
