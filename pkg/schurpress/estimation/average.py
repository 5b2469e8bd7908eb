import math
from dataclasses import dataclass
from typing import Any, Final

from scipy.integrate import dblquad

from schurpress.collective.spin import SpinAxis
from schurpress.estimation.theta import ThetaState
from schurpress.serialization.abc import JSONSerializable

QUADRATURE_TOL: Final[float] = 1e-12


@dataclass(frozen=True, slots=True)
class AverageVariance(JSONSerializable):
    """Single-copy axis variances and their averages over all measurement axes."""

    vx: float
    vy: float
    vz: float
    quadrature: float

    @property
    def mean(self) -> float:
        return (self.vx + self.vy + self.vz) / 3

    @property
    def compressed(self) -> float:
        """Average variance of the three-copy estimator."""
        return self.mean / 3

    def __json__(self) -> dict[str, Any]:
        return {
            "vx": self.vx,
            "vy": self.vy,
            "vz": self.vz,
            "mean": self.mean,
            "quadrature": self.quadrature,
            "compressed": self.compressed,
        }


def sphere_average_variance(state: ThetaState) -> float:
    """``(1/4pi) int V(delta, epsilon) sin(delta) d(epsilon) d(delta)`` over the sphere."""
    bloch = state.qubit.bloch_vector()

    def integrand(epsilon: float, delta: float) -> float:
        direction = (
            math.sin(delta) * math.cos(epsilon),
            math.sin(delta) * math.sin(epsilon),
            math.cos(delta),
        )
        expectation = sum(n * b for n, b in zip(direction, bloch)) / 2
        return (0.25 - expectation**2) * math.sin(delta)

    total, _ = dblquad(
        integrand,
        0.0,
        math.pi,
        0.0,
        2 * math.pi,
        epsabs=QUADRATURE_TOL,
        epsrel=QUADRATURE_TOL,
    )
    return total / (4 * math.pi)


def average_variance(state: ThetaState) -> AverageVariance:
    return AverageVariance(
        vx=state.variance(SpinAxis.X()),
        vy=state.variance(SpinAxis.Y()),
        vz=state.variance(SpinAxis.Z()),
        quadrature=sphere_average_variance(state),
    )
