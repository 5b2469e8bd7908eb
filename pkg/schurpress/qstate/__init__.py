from schurpress.qstate.circuit import (
    Circuit,
    CircuitRun,
    CircuitStep,
    MeasureCorrectStep,
    UnitaryStep,
    circuit_unitary,
    run_circuit,
)
from schurpress.qstate.measure import (
    CIRCULAR,
    COMPUTATIONAL,
    Measurement,
    measure_projective,
)
from schurpress.qstate.state import (
    QubitState,
    StateVector,
    equal_up_to_global_phase,
    fidelity,
    make_product_state,
    random_qubit_state,
    random_state_vector,
)
from schurpress.qstate.unitary import (
    H,
    S,
    X,
    Y,
    Z,
    Unitary,
    apply_unitary,
    controlled,
    random_unitary,
)

__all__ = [
    "CIRCULAR",
    "COMPUTATIONAL",
    "Circuit",
    "CircuitRun",
    "CircuitStep",
    "H",
    "MeasureCorrectStep",
    "Measurement",
    "QubitState",
    "S",
    "StateVector",
    "Unitary",
    "UnitaryStep",
    "X",
    "Y",
    "Z",
    "apply_unitary",
    "circuit_unitary",
    "controlled",
    "equal_up_to_global_phase",
    "fidelity",
    "make_product_state",
    "measure_projective",
    "random_qubit_state",
    "random_state_vector",
    "random_unitary",
    "run_circuit",
]
