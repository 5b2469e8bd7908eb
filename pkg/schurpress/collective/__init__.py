from schurpress.collective.leakage import (
    InvalidLeakage,
    leaky_distribution,
    leaky_x_distribution,
)
from schurpress.collective.measure import (
    CollectiveOutcome,
    basis_change,
    estimate_values,
    outcome_distribution,
    sample_outcome,
    spin32_basis_map,
)
from schurpress.collective.spin import (
    SpinAxis,
    collective_operator,
    single_qubit_eigenstates,
    spin_matrices,
)

__all__ = [
    "CollectiveOutcome",
    "InvalidLeakage",
    "SpinAxis",
    "basis_change",
    "collective_operator",
    "estimate_values",
    "leaky_distribution",
    "leaky_x_distribution",
    "outcome_distribution",
    "sample_outcome",
    "single_qubit_eigenstates",
    "spin32_basis_map",
    "spin_matrices",
]
