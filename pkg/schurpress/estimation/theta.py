import math
from dataclasses import dataclass
from typing import Self

import numpy as np

from schurpress.collective.spin import (
    SpinAxis,
    single_copy_expectation,
    single_copy_variance,
)
from schurpress.errors import InvalidArgument
from schurpress.qstate.state import QubitState


@dataclass(frozen=True, slots=True)
class ThetaState:
    """``cos(2 theta)|0> + e^{i phase} sin(2 theta)|1>``, angles in radians."""

    theta: float
    phase: float = 0.0

    def __post_init__(self):
        if not (math.isfinite(self.theta) and math.isfinite(self.phase)):
            raise InvalidArgument(f"Angles must be finite. Got: theta={self.theta}, phase={self.phase}")

    @classmethod
    def from_degrees(cls, theta_deg: float, phase_deg: float = 0.0) -> Self:
        return cls(math.radians(theta_deg), math.radians(phase_deg))

    @property
    def theta_deg(self) -> float:
        return math.degrees(self.theta)

    @property
    def qubit(self) -> QubitState:
        return QubitState(
            complex(math.cos(2 * self.theta)),
            complex(np.exp(1j * self.phase) * math.sin(2 * self.theta)),
        )

    @property
    def z_true(self) -> float:
        return 0.5 * math.cos(4 * self.theta)

    def expectation(self, axis: SpinAxis) -> float:
        return single_copy_expectation(self.qubit, axis)

    def variance(self, axis: SpinAxis) -> float:
        """Single-copy variance ``V1`` along ``axis``."""
        return single_copy_variance(self.qubit, axis)


__all__ = ["ThetaState", "single_copy_expectation", "single_copy_variance"]
