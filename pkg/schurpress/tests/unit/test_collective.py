import math

import numpy as np
import pytest

from schurpress.collective import (
    InvalidLeakage,
    SpinAxis,
    basis_change,
    collective_operator,
    estimate_values,
    leaky_distribution,
    leaky_x_distribution,
    outcome_distribution,
    sample_outcome,
    single_qubit_eigenstates,
    spin32_basis_map,
    spin_matrices,
)
from schurpress.collective.leakage import flip_channel
from schurpress.collective.measure import projections
from schurpress.collective.spin import single_copy_expectation, single_copy_variance
from schurpress.errors import InvalidArgument, OutOfRange
from schurpress.qstate import QubitState, StateVector, random_qubit_state
from schurpress.qstate.state import DimensionMismatch
from schurpress.schur import compress3, symmetric_encode


def tally_distribution(psi: QubitState, axis: SpinAxis, n: int = 3) -> np.ndarray:
    """Spin-down counts of ``n`` independent single-qubit measurements."""
    up, _ = single_qubit_eigenstates(axis)
    q = abs(np.conj(up.alpha) * psi.alpha + np.conj(up.beta) * psi.beta) ** 2
    return np.array([math.comb(n, k) * q ** (n - k) * (1 - q) ** k for k in range(n + 1)])


@pytest.mark.unit
class TestSpinAxis:
    def test_named_axes(self):
        np.testing.assert_allclose(SpinAxis.X().unit_vector(), [1, 0, 0], atol=1e-15)
        np.testing.assert_allclose(SpinAxis.Y().unit_vector(), [0, 1, 0], atol=1e-15)
        np.testing.assert_allclose(SpinAxis.Z().unit_vector(), [0, 0, 1])
        assert SpinAxis.from_name("y") == SpinAxis.Y()

    def test_labels(self):
        assert [SpinAxis.from_name(n).label for n in "XYZ"] == ["X", "Y", "Z"]
        assert SpinAxis(1.0, 2.0).label == "(1,2)"

    def test_validation(self):
        with pytest.raises(OutOfRange):
            SpinAxis(4.0)
        with pytest.raises(OutOfRange):
            SpinAxis(0.5, 2 * math.pi)
        with pytest.raises(InvalidArgument):
            SpinAxis.from_name("W")

    def test_random_axes_are_valid(self):
        rng = np.random.default_rng(12)
        for _ in range(100):
            axis = SpinAxis.random(rng)
            assert np.linalg.norm(axis.unit_vector()) == pytest.approx(1.0)

    def test_eigenstates(self):
        rng = np.random.default_rng(13)
        for _ in range(20):
            axis = SpinAxis.random(rng)
            up, down = single_qubit_eigenstates(axis)
            np.testing.assert_allclose(up.bloch_vector(), axis.unit_vector(), atol=1e-12)
            np.testing.assert_allclose(down.bloch_vector(), -axis.unit_vector(), atol=1e-12)


@pytest.mark.unit
class TestSpinMatrices:
    @pytest.mark.parametrize("j", [0.5, 1.0, 1.5, 2.5])
    def test_commutator(self, j):
        jx, jy, jz = spin_matrices(j)
        np.testing.assert_allclose(jx @ jy - jy @ jx, 1j * jz, atol=1e-12)

    def test_casimir(self):
        jx, jy, jz = spin_matrices(1.5)
        np.testing.assert_allclose(jx @ jx + jy @ jy + jz @ jz, 3.75 * np.eye(4), atol=1e-12)

    def test_rejects_bad_spin(self):
        with pytest.raises(InvalidArgument):
            spin_matrices(0.3)
        with pytest.raises(InvalidArgument):
            spin_matrices(0)

    def test_collective_spectrum(self):
        rng = np.random.default_rng(14)
        for _ in range(20):
            operator = collective_operator(SpinAxis.random(rng))
            np.testing.assert_allclose(
                np.linalg.eigvalsh(operator), [-1.5, -0.5, 0.5, 1.5], atol=1e-12
            )


@pytest.mark.unit
class TestBasisChange:
    def test_basis_map(self):
        assert [m for _, m in spin32_basis_map()] == projections(3).tolist()
        assert [label for label, _ in spin32_basis_map()] == ["00", "01", "10", "11"]

    def test_z_is_identity(self):
        np.testing.assert_allclose(basis_change(SpinAxis.Z()).matrix, np.eye(4), atol=1e-12)

    def test_diagonalizes(self):
        rng = np.random.default_rng(15)
        for n in (1, 3, 5):
            axis = SpinAxis.random(rng)
            change = basis_change(axis, n).matrix
            rotated = change @ collective_operator(axis, n) @ change.conj().T
            np.testing.assert_allclose(rotated, np.diag(projections(n)), atol=1e-10)

    def test_cached(self):
        assert basis_change(SpinAxis.X()) is basis_change(SpinAxis.X())


@pytest.mark.unit
class TestOutcomeDistribution:
    def test_matches_independent_tally(self):
        rng = np.random.default_rng(16)
        for _ in range(50):
            psi = random_qubit_state(rng)
            axis = SpinAxis.random(rng)
            np.testing.assert_allclose(
                outcome_distribution(compress3(psi), axis), tally_distribution(psi, axis), atol=1e-10
            )

    def test_zero_state_along_x(self):
        distribution = outcome_distribution(compress3(QubitState(1, 0)), SpinAxis.X())
        np.testing.assert_allclose(distribution, [1 / 8, 3 / 8, 3 / 8, 1 / 8], atol=1e-12)

    def test_probabilities_at_13_5_degrees(self):
        psi = QubitState(math.cos(math.radians(27)), math.sin(math.radians(27)))
        np.testing.assert_allclose(
            outcome_distribution(compress3(psi), SpinAxis.Z()),
            [0.50036, 0.38971, 0.10118, 0.00876],
            atol=5e-6,
        )

    def test_unbiased_with_reduced_variance(self):
        rng = np.random.default_rng(17)
        values = estimate_values(3)
        for _ in range(50):
            psi = random_qubit_state(rng)
            axis = SpinAxis.random(rng)
            distribution = outcome_distribution(compress3(psi), axis)
            mean = distribution @ values
            variance = distribution @ (values - mean) ** 2
            assert mean == pytest.approx(single_copy_expectation(psi, axis), abs=1e-10)
            assert variance == pytest.approx(single_copy_variance(psi, axis) / 3, abs=1e-10)

    def test_symmetric_code_input(self):
        psi = QubitState(0.6, 0.8)
        for n in (1, 2, 5, 10):
            np.testing.assert_allclose(
                outcome_distribution(symmetric_encode(psi, n), SpinAxis.Y()),
                tally_distribution(psi, SpinAxis.Y(), n),
                atol=1e-10,
            )

    def test_rejects_wrong_register(self):
        with pytest.raises(DimensionMismatch):
            outcome_distribution(StateVector.basis("000"), SpinAxis.Z())

    def test_sampling(self):
        state = compress3(QubitState(0.6, 0.8))
        first = [sample_outcome(state, SpinAxis.X(), np.random.default_rng(3)) for _ in range(5)]
        second = [sample_outcome(state, SpinAxis.X(), np.random.default_rng(3)) for _ in range(5)]
        assert first == second

    def test_certain_outcome(self):
        outcome = sample_outcome(compress3(QubitState(1, 0)), SpinAxis.Z(), np.random.default_rng())
        assert outcome.m == 1.5
        assert outcome.estimate == 0.5
        assert outcome.probability == pytest.approx(1.0)


@pytest.mark.unit
class TestLeakage:
    def test_channel_is_stochastic(self):
        for n in (1, 3, 6):
            np.testing.assert_allclose(flip_channel(n, 0.1).sum(axis=0), 1.0, atol=1e-12)

    def test_zero_leakage_is_ideal(self):
        state = compress3(QubitState(0.6, 0.8))
        np.testing.assert_array_equal(
            leaky_x_distribution(state, 0.0), outcome_distribution(state, SpinAxis.X())
        )

    def test_plus_state_gains_variance(self):
        s = 1 / math.sqrt(2)
        state = compress3(QubitState(s, s))
        values = estimate_values(3)
        ideal = outcome_distribution(state, SpinAxis.X())
        leaky = leaky_x_distribution(state, 0.015)
        assert ideal @ values**2 - (ideal @ values) ** 2 == pytest.approx(0.0, abs=1e-12)
        assert leaky @ values**2 - (leaky @ values) ** 2 > 0

    def test_mean_contracts(self):
        rng = np.random.default_rng(18)
        values = estimate_values(3)
        for _ in range(20):
            state = compress3(random_qubit_state(rng))
            axis = SpinAxis.random(rng)
            ideal = outcome_distribution(state, axis) @ values
            leaky = leaky_distribution(state, axis, 0.2) @ values
            assert leaky == pytest.approx((1 - 2 * 0.2) * ideal, abs=1e-12)

    @pytest.mark.parametrize("p", [-0.1, 1.5])
    def test_rejects_bad_probability(self, p):
        with pytest.raises(InvalidLeakage):
            leaky_x_distribution(compress3(QubitState(1, 0)), p)
